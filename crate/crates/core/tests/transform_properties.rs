use std::f64::consts::PI;

use cutjump_core::forward::{pair_exponential, pair_power_law, Interpolant};
use cutjump_core::quadrature::{DoubleExponential, Interval};
use cutjump_core::transform::*;
use cutjump_core::Complex64;
use proptest::prelude::*;

fn sequence(values: Vec<f64>) -> MomentSequence {
    MomentSequence::new(values, "test").unwrap()
}

#[test]
fn series_and_integral_routes_agree() {
    let pair = pair_power_law(1.0).unwrap();
    let series = pollaczek_coefficients(&pair.coefficients(64), 10).unwrap();
    let quad = coefficient_integral_quadrature();
    for m in 0..=10 {
        let d = pollaczek_coefficients_integral(pair.interpolant(), m, quad).unwrap();
        assert!((d - series.coefficients.d(m)).norm() <= 1e-6, "m={m}");
    }
    let d1 = pollaczek_coefficients_integral(pair.interpolant(), 1, quad).unwrap();
    assert!(d1.re.abs() <= 1e-12 * d1.im.abs() && d1.im != 0.0);
    let zero = pollaczek_coefficients_integral(&Interpolant::zero(), 3, quad).unwrap();
    assert_eq!(zero, Complex64::new(0.0, 0.0));
}

#[test]
fn degree_zero_amplitude_matches_direct_series() {
    // Σ (−1)^n / ((n+1)·n!) summed in reverse to machine precision.
    let mut oracle = 0.0f64;
    for n in (0..40u32).rev() {
        let fact: f64 = (1..=n).map(f64::from).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        oracle += sign / ((n + 1) as f64 * fact);
    }
    let a = sequence((0..64).map(|n| 1.0 / (n as f64 + 1.0)).collect());
    let got = pollaczek_coefficients(&a, 0).unwrap().coefficients.amplitudes()[0];
    assert!((got - oracle).abs() <= 2.0 * f64::EPSILON);
}

#[test]
fn bessel_inequality_for_exponential_pairs() {
    for beta in [0.75, 1.0, 1.5, 3.0] {
        let pair = pair_exponential(beta).unwrap();
        let series = pollaczek_coefficients(&pair.coefficients(96), 40).unwrap();
        // ∫₀^∞ |e^{−βv} e^{v/2}|² dv
        let norm = 1.0 / (2.0 * beta - 1.0);
        let mut previous = 0.0;
        for m in 0..=40 {
            let energy = series.coefficients.truncated(m).energy();
            assert!(energy >= previous);
            assert!(energy <= norm * (1.0 + 1e-9), "beta={beta} m={m}: {energy} > {norm}");
            assert!(energy <= 2.0 * PI * norm);
            previous = energy;
        }
    }
}

#[test]
fn noiseless_error_decreases_and_noisy_error_turns_around() {
    let pair = pair_power_law(1.0).unwrap();
    let a = pair.coefficients(64);
    let grid = Geometry::XHalfLine.default_grid();
    let reference = pair.jump().sample(Geometry::XHalfLine, &grid).unwrap();
    let cfg = ReconstructionConfig::new(Geometry::XHalfLine, 16);
    let clean = truncation_sweep(&a, &reference, &[4, 8, 16], &cfg).unwrap();
    assert!(clean.is_non_increasing(0.1), "{clean:?}");
    let degrees: Vec<usize> = (2..=40).collect();
    let noisy = truncation_sweep(&add_noise(&a, 1e-3, 0).unwrap(), &reference, &degrees, &cfg).unwrap();
    assert!(noisy.has_interior_minimum(), "{noisy:?}");
    assert!(noisy.error_at(40).unwrap() > 100.0 * noisy.argmin().unwrap().l2_error);
}

#[test]
fn short_input_raises_truncation_warning() {
    let pair = pair_power_law(1.0).unwrap();
    let series = pollaczek_coefficients(&pair.coefficients(20), 24).unwrap();
    assert!(series.truncation_dominant());
    assert!(series.warnings.iter().any(|w| w.contains("recommended")));
}

#[test]
fn closed_form_interpolant_is_laplace_transform_of_reconstruction() {
    let pair = pair_power_law(1.0).unwrap();
    let coeffs = pollaczek_coefficients(&pair.coefficients(64), 12).unwrap().coefficients;
    let closed = reconstructed_interpolant(&coeffs);
    let de = DoubleExponential::default();
    for lambda in [Complex64::new(0.0, 0.0), Complex64::new(1.3, 0.7), Complex64::new(-0.4, -2.0)] {
        let quad = de
            .integrate(
                |v: f64| reconstruct_at(&coeffs, Geometry::VLine, v) * (-lambda * v).exp(),
                Interval::Whole,
            )
            .unwrap()
            .value;
        let got = closed.eval(lambda);
        assert!((got - quad).norm() <= 1e-8 * quad.norm().max(1.0), "λ={lambda}: {got} vs {quad}");
    }
}

proptest! {
    #[test]
    fn geometries_agree_under_exponential_map(
        amps in prop::collection::vec(-1.0f64..1.0, 1..30),
        v in 0.0f64..8.0,
    ) {
        let coeffs = PollaczekCoefficients::new(amps).unwrap();
        let fv = reconstruct_at(&coeffs, Geometry::VLine, v);
        let fx = reconstruct_at(&coeffs, Geometry::XHalfLine, v.exp());
        let scale = coeffs.amplitudes().iter().map(|a| a.abs()).sum::<f64>();
        prop_assert!((fv - fx).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn amplitudes_are_linear(
        a in prop::collection::vec(-1.0f64..1.0, 40),
        b in prop::collection::vec(-1.0f64..1.0, 40),
    ) {
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ca = pollaczek_coefficients(&sequence(a), 10).unwrap();
        let cb = pollaczek_coefficients(&sequence(b), 10).unwrap();
        let cs = pollaczek_coefficients(&sequence(sum), 10).unwrap();
        for m in 0..=10 {
            let lhs = cs.coefficients.amplitudes()[m];
            let rhs = ca.coefficients.amplitudes()[m] + cb.coefficients.amplitudes()[m];
            let scale = ca.terms[m].absolute_sum + cb.terms[m].absolute_sum;
            prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale, "m={m}");
        }
    }

    #[test]
    fn reconstruction_is_linear(
        a in prop::collection::vec(-1.0f64..1.0, 12),
        b in prop::collection::vec(-1.0f64..1.0, 12),
        x in 1.0f64..100.0,
    ) {
        let sum: Vec<f64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        let scale = 2.0 * a.iter().chain(&b).map(|c| c.abs()).sum::<f64>() * std::f64::consts::E;
        let ca = PollaczekCoefficients::new(a).unwrap();
        let cb = PollaczekCoefficients::new(b).unwrap();
        let cs = PollaczekCoefficients::new(sum).unwrap();
        let lhs = reconstruct_at(&cs, Geometry::XHalfLine, x);
        let rhs = reconstruct_at(&ca, Geometry::XHalfLine, x) + reconstruct_at(&cb, Geometry::XHalfLine, x);
        prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale / x);
    }

    #[test]
    fn noise_stays_within_bound(eps in 0.0f64..1.0, seed in any::<u64>()) {
        let a = sequence((0..50).map(|n| 1.0 / (n as f64 + 2.0)).collect());
        let noisy = add_noise(&a, eps, seed).unwrap();
        for (x, y) in noisy.values().iter().zip(a.values()) {
            prop_assert!((x - y).abs() <= eps);
        }
    }
}
