use cutjump_core::specfun::*;
use cutjump_core::Complex64;
use proptest::prelude::*;

#[test]
fn pollaczek_orthonormal_to_degree_ten() {
    let gram = pollaczek_gram(10, LineQuadrature::nu_line(POLLACZEK_GRAM_HALF_WIDTH));
    let dev = identity_deviation(&gram);
    assert!(dev <= 1e-6, "deviation {dev:e}");
}

#[test]
fn narrow_window_misses_tail_mass_at_degree_ten() {
    // sech(πν) alone is tiny at |ν| = 12, but P_10² is not.
    let gram = pollaczek_gram(10, LineQuadrature::nu_line(12.0));
    assert!((gram[10][10] - 1.0).abs() > 1e-3);
}

#[test]
fn psi_zero_has_unit_norm() {
    let gl = cutjump_core::quadrature::GaussLegendre::new(20);
    let norm: f64 = gl.integrate(|nu| pollaczek_function(0, nu).norm_sqr(), -40.0, 40.0, 160);
    assert!((norm - 1.0).abs() < 1e-10);
}

#[test]
fn laguerre_function_bases_orthonormal() {
    let line = phi_gram_line(15, LineQuadrature::v_line());
    assert!(identity_deviation(&line) <= 1e-8, "{:e}", identity_deviation(&line));
    let subst = phi_x_gram_substitution(15, LineQuadrature::v_line());
    assert!(identity_deviation(&subst) <= 1e-8);
    let lag = phi_x_gram_laguerre(15, 40);
    assert!(identity_deviation(&lag) <= 1e-8, "{:e}", identity_deviation(&lag));
    for k in 0..=15 {
        for l in 0..=15 {
            assert!((subst[k][l] - lag[k][l]).abs() <= 1e-8);
        }
    }
}

#[test]
fn fourier_gamma_residuals() {
    let q = LineQuadrature::v_line();
    for nu in [-5.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.5, 5.0] {
        let r = fourier_gamma_check(nu, q).unwrap();
        assert!(r.residual <= 1e-8, "nu={nu} residual={:e}", r.residual);
    }
    let r = fourier_gamma_check(0.0, q).unwrap();
    assert!((r.quadrature.re - std::f64::consts::PI.sqrt()).abs() <= 1e-8);
}

#[test]
fn operator_identity_residuals() {
    for m in 0..=4 {
        for v in [-1.0, 0.0, 1.0, 2.0] {
            let r = operator_identity_check(m, v).unwrap();
            assert!(r.residual <= 1e-4, "m={m} v={v} residual={:e}", r.residual);
        }
    }
}

#[test]
fn operator_identity_against_symbolic_derivatives() {
    // g' = (e^{-v} - 1/2) g,  g'' = ((e^{-v} - 1/2)^2 - e^{-v}) g
    // s_2(y) = 2y^2 + 1/2, so s_2(d/dv) g = 2g'' + g/2.
    let v = 1.0f64;
    let e = (-v).exp();
    let g = (-e).exp() * (-0.5 * v).exp();
    let g2 = ((e - 0.5).powi(2) - e) * g;
    let symbolic = 2.0 * g2 + 0.5 * g;
    let r = operator_identity_check(2, v).unwrap();
    assert!((r.operator_side - symbolic).abs() <= 1e-8);
    assert!((symbolic - r.laguerre_side).abs() <= 1e-14);
}

#[test]
fn parity_is_exact() {
    for m in 0..=20 {
        for nu in [0.1, 0.77, 3.3, 12.5] {
            let a = pollaczek_p_real(m, nu);
            let b = pollaczek_p_real(m, -nu);
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(b, sign * a);
        }
    }
}

proptest! {
    #[test]
    fn imag_form_matches_complex_recurrence(m in 0usize..=30, y in 1e-6f64..50.0) {
        let p = pollaczek_p(m, Complex64::new(0.0, -y));
        let s = pollaczek_imag(m, y);
        let expected = i_pow(m).conj() * s; // (−i)^m = conj(i^m)
        let scale = s.abs().max(f64::MIN_POSITIVE);
        prop_assert!((p - expected).norm() <= 1e-12 * scale);
    }

    #[test]
    fn weight_is_even_and_matches_reflection(nu in -20.0f64..20.0) {
        let w = pollaczek_weight(nu);
        prop_assert!((w - pollaczek_weight(-nu)).abs() <= 1e-15 * w);
        let exact = 1.0 / (std::f64::consts::PI * nu).cosh();
        prop_assert!((w - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn gamma_recurrence(re in -9.5f64..9.5, im in -50.0f64..50.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 1e-3);
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        // Equal modulo 2πi.
        let d = lhs - rhs;
        let k = (d.im / (2.0 * std::f64::consts::PI)).round();
        prop_assert!((d - Complex64::new(0.0, 2.0 * std::f64::consts::PI * k)).norm() <= 1e-12 * lhs.norm().max(1.0));
    }
}
