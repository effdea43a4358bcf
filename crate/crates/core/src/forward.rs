//! Closed-form test pairs and quadrature oracles for the transforms linking a
//! jump function `F`, its Laplace/Mellin interpolant `ã` and the series
//! coefficients `a_n = ã(n)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{oscillatory_tail, DoubleExponential, Interval};
use crate::transform::{Geometry, MomentSequence, SampledFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    QuadratureBacked,
}

type ComplexMap = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// Holomorphic interpolant `ã(λ)` on `Re λ > −½`.
#[derive(Clone)]
pub struct Interpolant {
    eval: Arc<ComplexMap>,
    provenance: Provenance,
}

impl Interpolant {
    pub fn closed_form(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            provenance: Provenance::ClosedForm,
        }
    }

    pub fn quadrature_backed(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            provenance: Provenance::QuadratureBacked,
        }
    }

    pub fn zero() -> Self {
        Self::closed_form(|_| Complex64::new(0.0, 0.0))
    }

    /// `ã(λ) = 1/(λ + β)^k`
    pub fn pole(beta: f64, order: i32) -> Self {
        Self::closed_form(move |l: Complex64| (l + beta).powi(-order))
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        (self.eval)(lambda)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Values on the line `Re λ = sigma`.
    pub fn on_line(&self, sigma: f64, nu: f64) -> Complex64 {
        self.eval(Complex64::new(sigma, nu))
    }
}

impl fmt::Debug for Interpolant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interpolant").field("provenance", &self.provenance).finish()
    }
}

type RealMap = dyn Fn(f64) -> f64 + Send + Sync;

/// Jump function on its native geometry; zero outside the support unless
/// built with [`JumpFunction::bilateral`].
#[derive(Clone)]
pub struct JumpFunction {
    eval: Arc<RealMap>,
    geometry: Geometry,
    bilateral: bool,
}

impl JumpFunction {
    pub fn new(geometry: Geometry, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            geometry,
            bilateral: false,
        }
    }

    /// A function of `v` on the whole real line, such as a truncated expansion.
    pub fn bilateral(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            geometry: Geometry::VLine,
            bilateral: true,
        }
    }

    pub fn is_bilateral(&self) -> bool {
        self.bilateral
    }

    pub fn zero(geometry: Geometry) -> Self {
        Self::new(geometry, |_| 0.0)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Value at an abscissa of the native geometry.
    pub fn at(&self, t: f64) -> f64 {
        if !self.bilateral && t < self.geometry.support_start() {
            0.0
        } else {
            (self.eval)(t)
        }
    }

    pub fn at_v(&self, v: f64) -> f64 {
        match self.geometry {
            Geometry::VLine => self.at(v),
            Geometry::XHalfLine => self.at(v.exp()),
        }
    }

    pub fn at_x(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self.geometry {
            Geometry::VLine => self.at(x.ln()),
            Geometry::XHalfLine => self.at(x),
        }
    }

    /// Value at an abscissa of `geometry`.
    pub fn at_in(&self, geometry: Geometry, t: f64) -> f64 {
        match geometry {
            Geometry::VLine => self.at_v(t),
            Geometry::XHalfLine => self.at_x(t),
        }
    }

    pub fn sample(&self, geometry: Geometry, grid: &[f64]) -> Result<SampledFunction> {
        SampledFunction::from_fn(geometry, grid, |t| self.at_in(geometry, t))
    }
}

impl fmt::Debug for JumpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JumpFunction").field("geometry", &self.geometry).finish()
    }
}

/// A jump function with its interpolant and coefficients, all in closed form.
#[derive(Clone)]
pub struct AnalyticPair {
    name: String,
    beta: f64,
    jump: JumpFunction,
    interpolant: Interpolant,
    coefficient: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl AnalyticPair {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn jump(&self) -> &JumpFunction {
        &self.jump
    }

    pub fn interpolant(&self) -> &Interpolant {
        &self.interpolant
    }

    pub fn coefficient(&self, n: usize) -> f64 {
        (self.coefficient)(n)
    }

    /// `a_0, …, a_{last_index}`.
    pub fn coefficients(&self, last_index: usize) -> MomentSequence {
        MomentSequence::new((0..=last_index).map(|n| self.coefficient(n)).collect(), self.label())
            .expect("closed-form coefficients are finite")
    }

    pub fn label(&self) -> String {
        format!("{}(beta={})", self.name, self.beta)
    }
}

impl fmt::Debug for AnalyticPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticPair")
            .field("name", &self.name)
            .field("beta", &self.beta)
            .field("geometry", &self.jump.geometry)
            .finish()
    }
}

pub const BUILTIN_PAIRS: [&str; 3] = ["power-law", "exponential", "log-power"];

/// `F(x) = x^{−β}`, `a_n = 1/(n+β)`, `ã(λ) = 1/(λ+β)`.
pub fn pair_power_law(beta: f64) -> Result<AnalyticPair> {
    if !(beta > 0.5) || !beta.is_finite() {
        return Err(domain("pair_power_law", format!("beta must exceed 1/2, got {beta}")));
    }
    Ok(AnalyticPair {
        name: "power-law".into(),
        beta,
        jump: JumpFunction::new(Geometry::XHalfLine, move |x| x.powf(-beta)),
        interpolant: Interpolant::pole(beta, 1),
        coefficient: Arc::new(move |n| 1.0 / (n as f64 + beta)),
    })
}

/// `F(v) = e^{−βv}` on `v > 0`, with the same interpolant as the power law.
pub fn pair_exponential(beta: f64) -> Result<AnalyticPair> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain("pair_exponential", format!("beta must be positive, got {beta}")));
    }
    Ok(AnalyticPair {
        name: "exponential".into(),
        beta,
        jump: JumpFunction::new(Geometry::VLine, move |v| (-beta * v).exp()),
        interpolant: Interpolant::pole(beta, 1),
        coefficient: Arc::new(move |n| 1.0 / (n as f64 + beta)),
    })
}

/// `F(x) = x^{−β} ln x`, `a_n = 1/(n+β)²`, `ã(λ) = 1/(λ+β)²`.
pub fn pair_log_power(beta: f64) -> Result<AnalyticPair> {
    if !(beta > 0.5) || !beta.is_finite() {
        return Err(domain("pair_log_power", format!("beta must exceed 1/2, got {beta}")));
    }
    Ok(AnalyticPair {
        name: "log-power".into(),
        beta,
        jump: JumpFunction::new(Geometry::XHalfLine, move |x| x.powf(-beta) * x.ln()),
        interpolant: Interpolant::pole(beta, 2),
        coefficient: Arc::new(move |n| (n as f64 + beta).powi(-2)),
    })
}

pub fn builtin_pair(name: &str, beta: f64) -> Result<AnalyticPair> {
    match name {
        "power-law" => pair_power_law(beta),
        "exponential" => pair_exponential(beta),
        "log-power" => pair_log_power(beta),
        other => Err(Error::InvalidInput(format!(
            "unknown pair {other:?}; known pairs: {}",
            BUILTIN_PAIRS.join(", ")
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMoments {
    pub sequence: MomentSequence,
    pub error_estimates: Vec<f64>,
}

impl QuadratureMoments {
    pub fn max_error_estimate(&self) -> f64 {
        self.error_estimates.iter().copied().fold(0.0, f64::max)
    }
}

/// `a_n = ∫₁^∞ F(x) x^{−n−1} dx` for `n = 0..=last_index`.
pub fn mellin_coefficients(jump: &JumpFunction, last_index: usize, quad: &DoubleExponential) -> Result<QuadratureMoments> {
    let mut values = Vec::with_capacity(last_index + 1);
    let mut error_estimates = Vec::with_capacity(last_index + 1);
    for n in 0..=last_index {
        let power = -(n as f64) - 1.0;
        let r = quad.integrate(|x: f64| jump.at_x(x) * x.powf(power), Interval::UpperHalf(1.0))?;
        values.push(r.value);
        error_estimates.push(r.error_estimate);
    }
    Ok(QuadratureMoments {
        sequence: MomentSequence::new(values, "mellin quadrature")?,
        error_estimates,
    })
}

/// `ã(λ) = ∫₀^∞ F(v) e^{−λv} dv`.
pub fn laplace_interpolant(jump: &JumpFunction, lambda: Complex64, quad: &DoubleExponential) -> Result<Complex64> {
    if !(lambda.re > -0.5) {
        return Err(domain("laplace_interpolant", format!("Re λ = {} must exceed -1/2", lambda.re)));
    }
    let r = quad.integrate(
        |v: f64| (-lambda * v).exp() * jump.at_v(v),
        Interval::UpperHalf(0.0),
    )?;
    Ok(r.value)
}

/// [`laplace_interpolant`] wrapped as an [`Interpolant`]; failed evaluations give NaN.
pub fn laplace_interpolant_of(jump: &JumpFunction, quad: DoubleExponential) -> Interpolant {
    let jump = jump.clone();
    Interpolant::quadrature_backed(move |lambda| {
        laplace_interpolant(&jump, lambda, &quad).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })
}

/// Algebraic decay rate of `|ã(σ + iν)|` between `|ν| = 10³` and `10⁴`.
/// `None` when the interpolant vanishes there, either identically or faster
/// than any power.
pub fn decay_exponent(atilde: &Interpolant, sigma: f64) -> Option<f64> {
    let probe = |nu: f64| atilde.on_line(sigma, nu).norm().max(atilde.on_line(sigma, -nu).norm());
    let near = probe(1e3);
    let far = probe(1e4);
    if near == 0.0 && far == 0.0 {
        return None;
    }
    Some((near / far).log10())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub samples: SampledFunction,
    pub max_error_estimate: f64,
    pub warnings: Vec<String>,
}

/// `F(v) = (e^{σv}/2π) ∫ ã(σ + iν) e^{iνv} dν` on a grid of `v > 0`.
pub fn invert_interpolant(atilde: &Interpolant, sigma: f64, v_grid: &[f64], rel_tol: f64) -> Result<Inversion> {
    if !(sigma >= -0.5) {
        return Err(domain("invert_interpolant", format!("sigma = {sigma} below -1/2")));
    }
    let mut warnings = Vec::new();
    if let Some(p) = decay_exponent(atilde, sigma) {
        if p <= 1.0 {
            warnings.push(format!(
                "interpolant decays like |nu|^-{p:.2} on Re = {sigma}; the inverse integral is only conditionally convergent"
            ));
        }
    }
    let mut points = Vec::with_capacity(v_grid.len());
    let mut max_error_estimate = 0.0f64;
    for &v in v_grid {
        if !(v > 0.0) || !v.is_finite() {
            return Err(domain("invert_interpolant", format!("abscissa {v} must be positive")));
        }
        let phase = |nu: f64| Complex64::new(0.0, nu * v).exp();
        let r = oscillatory_tail(
            |nu| (atilde.on_line(sigma, nu) * phase(nu) + atilde.on_line(sigma, -nu) * phase(-nu)).re,
            PI / v,
            1.0,
            rel_tol,
        )?;
        let scale = (sigma * v).exp() / (2.0 * PI);
        max_error_estimate = max_error_estimate.max(r.error_estimate * scale);
        points.push((v, r.value * scale));
    }
    Ok(Inversion {
        samples: SampledFunction::new(Geometry::VLine, points)?,
        max_error_estimate,
        warnings,
    })
}

/// Shift applied to the boundary line when a quadrature there fails.
pub const BOUNDARY_SHIFT: f64 = 1e-6;

fn on_line_with_fallback<T>(sigma: f64, mut f: impl FnMut(f64) -> Result<T>) -> Result<(f64, T)> {
    match f(sigma) {
        Ok(v) => Ok((sigma, v)),
        Err(Error::NonConvergence { .. }) if sigma == -0.5 => {
            let shifted = sigma + BOUNDARY_SHIFT;
            f(shifted).map(|v| (shifted, v))
        }
        Err(e) => Err(e),
    }
}

/// `∫ |ã(σ + iν)|² dν`.
pub fn hardy_norm(atilde: &Interpolant, sigma: f64, quad: &DoubleExponential) -> Result<f64> {
    if !(sigma >= -0.5) {
        return Err(domain("hardy_norm", format!("sigma = {sigma} below -1/2")));
    }
    on_line_with_fallback(sigma, |s| line_integral(atilde, s, quad, |z| z.norm_sqr())).map(|(_, v)| v)
}

fn line_integral(atilde: &Interpolant, sigma: f64, quad: &DoubleExponential, g: impl Fn(Complex64) -> f64) -> Result<f64> {
    Ok(quad.integrate(|nu| g(atilde.on_line(sigma, nu)), Interval::Whole)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    pub sigma: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Compares `∫|ã(σ+iν)|²dν` with `2π ∫₀^∞ |F(v)|² e^{−2σv} dv` (over the whole
/// line for bilateral jumps).
///
/// The right side equals `2π ∫₁^∞ |F(x)|² x^{−2σ−1} dx`; it is always integrated in `v`,
/// where algebraic tails in `x` become exponential.
pub fn plancherel_check(
    atilde: &Interpolant,
    jump: &JumpFunction,
    sigma: f64,
    quad: &DoubleExponential,
) -> Result<PlancherelReport> {
    if !(sigma >= -0.5) {
        return Err(domain("plancherel_check", format!("sigma = {sigma} below -1/2")));
    }
    let (sigma, lhs) = on_line_with_fallback(sigma, |s| line_integral(atilde, s, quad, |z| z.norm_sqr()))?;
    let support = if jump.is_bilateral() { Interval::Whole } else { Interval::UpperHalf(0.0) };
    let rhs = quad
        .integrate(
            |v: f64| {
                let f = jump.at_v(v);
                let w = (-2.0 * sigma * v).exp();
                if f == 0.0 { 0.0 } else { f * f * w }
            },
            support,
        )?
        .value
        * 2.0
        * PI;
    let residual = if rhs == 0.0 { lhs.abs() } else { (lhs - rhs).abs() / rhs.abs() };
    Ok(PlancherelReport { sigma, lhs, rhs, residual })
}

/// Decay exponent at or below which the line integral of `|ã|` is treated as divergent.
pub const L1_DECAY_THRESHOLD: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub abscissa: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpBoundReport {
    pub sigma: f64,
    /// `(1/2π) ∫ |ã(σ + iν)| dν`; `None` when the line integral diverges.
    pub l1_norm: Option<f64>,
    pub decay_exponent: Option<f64>,
    pub holds: bool,
    pub violations: Vec<BoundViolation>,
    pub note: Option<String>,
}

/// Checks `|F| ≤ ‖ã_σ‖₁ e^{σv}` (equivalently `‖ã_σ‖₁ x^σ`) on `grid`, given in
/// the jump's native geometry.
pub fn jump_bound_check(
    atilde: &Interpolant,
    jump: &JumpFunction,
    sigma: f64,
    grid: &[f64],
    quad: &DoubleExponential,
) -> Result<JumpBoundReport> {
    if !(sigma >= -0.5) {
        return Err(domain("jump_bound_check", format!("sigma = {sigma} below -1/2")));
    }
    let decay = decay_exponent(atilde, sigma);
    if let Some(p) = decay {
        if p <= L1_DECAY_THRESHOLD {
            return Ok(JumpBoundReport {
                sigma,
                l1_norm: None,
                decay_exponent: decay,
                holds: false,
                violations: Vec::new(),
                note: Some(format!(
                    "interpolant decays like |nu|^-{p:.2} on Re = {sigma}; L1 norm is infinite, choose a line further right"
                )),
            });
        }
    }
    let l1 = line_integral(atilde, sigma, quad, |z| z.norm())? / (2.0 * PI);
    let violations: Vec<BoundViolation> = grid
        .iter()
        .filter_map(|&t| {
            let value = jump.at(t);
            let growth = match jump.geometry() {
                Geometry::VLine => (sigma * t).exp(),
                Geometry::XHalfLine => t.powf(sigma),
            };
            let bound = l1 * growth;
            (value.abs() > bound * (1.0 + 1e-9) + 1e-15).then_some(BoundViolation { abscissa: t, value, bound })
        })
        .collect();
    Ok(JumpBoundReport {
        sigma,
        l1_norm: Some(l1),
        decay_exponent: decay,
        holds: violations.is_empty(),
        violations,
        note: None,
    })
}

/// `f(z) = (1/2π) ∫₁^∞ F(x) / (x − z) dx` for `z` off the cut.
pub fn cauchy_eval(jump: &JumpFunction, z: Complex64, quad: &DoubleExponential) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(domain("cauchy_eval", format!("z = {z} lies on the cut [1, inf)")));
    }
    let integrand = |x: f64| Complex64::new(jump.at_x(x), 0.0) / (Complex64::new(x, 0.0) - z);
    // A pole close to the cut is moved onto a panel endpoint.
    let value = if z.re > 1.0 {
        quad.integrate(integrand, Interval::Finite(1.0, z.re))?.value
            + quad.integrate(integrand, Interval::UpperHalf(z.re))?.value
    } else {
        quad.integrate(integrand, Interval::UpperHalf(1.0))?.value
    };
    Ok(value / (2.0 * PI))
}

/// Taylor coefficients `f_k`, `k < count`, of an analytic `f` by the trapezoidal
/// rule on the circle `|z| = radius` with `points` nodes.
pub fn taylor_coefficients_on_circle(
    mut f: impl FnMut(Complex64) -> Result<Complex64>,
    radius: f64,
    points: usize,
    count: usize,
) -> Result<Vec<Complex64>> {
    let samples: Vec<(Complex64, Complex64)> = (0..points)
        .map(|j| {
            let z = Complex64::from_polar(radius, 2.0 * PI * j as f64 / points as f64);
            f(z).map(|w| (z, w))
        })
        .collect::<Result<_>>()?;
    Ok((0..count)
        .map(|k| {
            samples
                .iter()
                .map(|(z, w)| w * z.powi(-(k as i32)))
                .sum::<Complex64>()
                / points as f64
        })
        .collect())
}

/// Contour radius and node count used to expand [`cauchy_eval`] around the origin.
pub const TAYLOR_CONTOUR_RADIUS: f64 = 0.25;
pub const TAYLOR_CONTOUR_POINTS: usize = 64;

/// `a_k = 2π f_k` from the Cauchy integral, for `k < count`.
pub fn cauchy_taylor_coefficients(jump: &JumpFunction, count: usize, quad: &DoubleExponential) -> Result<Vec<f64>> {
    let coeffs = taylor_coefficients_on_circle(
        |z| cauchy_eval(jump, z, quad),
        TAYLOR_CONTOUR_RADIUS,
        TAYLOR_CONTOUR_POINTS,
        count,
    )?;
    Ok(coeffs.iter().map(|c| 2.0 * PI * c.re).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorValue {
    pub value: Complex64,
    pub remainder_estimate: f64,
    pub converges: bool,
}

/// `(1/2π) Σ a_n z^n` with a geometric bound on the tail past the last term.
pub fn taylor_eval(a: &MomentSequence, z: Complex64) -> TaylorValue {
    let mut value = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for an in a.values() {
        value += power * an;
        power *= z;
    }
    let r = z.norm();
    let converges = r < 1.0;
    let last = a.values()[a.last_index()].abs() * r.powi(a.last_index() as i32);
    let remainder_estimate = if converges { last * r / (1.0 - r) / (2.0 * PI) } else { f64::INFINITY };
    TaylorValue {
        value: value / (2.0 * PI),
        remainder_estimate,
        converges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn de() -> DoubleExponential {
        DoubleExponential::default()
    }

    #[test]
    fn power_law_examples() {
        let p = pair_power_law(1.0).unwrap();
        assert_eq!(p.coefficient(0), 1.0);
        assert_eq!(p.coefficient(5), 1.0 / 6.0);
        assert_eq!(p.interpolant().eval(Complex64::new(-0.5, 0.0)), Complex64::new(2.0, 0.0));
        assert_eq!(pair_power_law(2.0).unwrap().jump().at(1.0), 1.0);
        assert!(pair_power_law(0.5).is_err());
        assert!(pair_power_law(f64::NAN).is_err());
    }

    #[test]
    fn exponential_examples() {
        let p = pair_exponential(1.0).unwrap();
        assert_eq!(p.jump().at(0.0), 1.0);
        assert_eq!(p.jump().at(-1.0), 0.0);
        assert_eq!(p.jump().geometry(), Geometry::VLine);
        assert!(pair_exponential(0.0).is_err());
        assert!(builtin_pair("nope", 1.0).is_err());
        for name in BUILTIN_PAIRS {
            assert_eq!(builtin_pair(name, 1.5).unwrap().name(), name);
        }
    }

    #[test]
    fn jump_views_agree() {
        let p = pair_exponential(1.5).unwrap();
        assert_relative_eq!(p.jump().at_x(3.0), 3f64.powf(-1.5), max_relative = 1e-14);
        let q = pair_power_law(1.5).unwrap();
        assert_relative_eq!(q.jump().at_v(0.7), (-1.05f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn mellin_examples() {
        let zero = mellin_coefficients(&JumpFunction::zero(Geometry::XHalfLine), 5, &de()).unwrap();
        assert!(zero.sequence.values().iter().all(|v| *v == 0.0));
        let inv = JumpFunction::new(Geometry::XHalfLine, |x| 1.0 / x);
        let m = mellin_coefficients(&inv, 20, &de()).unwrap();
        for (n, a) in m.sequence.values().iter().enumerate() {
            assert!((a - 1.0 / (n as f64 + 1.0)).abs() <= 1e-9, "n={n}: {a}");
        }
        assert!(m.max_error_estimate() < 1e-8);
        let log = JumpFunction::new(Geometry::XHalfLine, |x| x.ln() / x);
        let m = mellin_coefficients(&log, 20, &de()).unwrap();
        for (n, a) in m.sequence.values().iter().enumerate() {
            assert!((a - (n as f64 + 1.0).powi(-2)).abs() <= 1e-8, "n={n}: {a}");
        }
    }

    #[test]
    fn laplace_examples() {
        let e = JumpFunction::new(Geometry::VLine, |v| (-v).exp());
        let z = laplace_interpolant(&e, Complex64::new(0.0, 0.0), &de()).unwrap();
        assert!((z - 1.0).norm() < 1e-12);
        for n in 1..8 {
            let z = laplace_interpolant(&e, Complex64::new(n as f64, 0.0), &de()).unwrap();
            assert!((z - 1.0 / (n as f64 + 1.0)).norm() < 1e-12);
        }
        let zero = laplace_interpolant(&JumpFunction::zero(Geometry::VLine), Complex64::new(1.0, 2.0), &de()).unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
        assert!(laplace_interpolant(&e, Complex64::new(-0.7, 0.0), &de()).is_err());
    }

    #[test]
    fn conjugate_symmetry_of_quadrature_interpolant() {
        let f = laplace_interpolant_of(&pair_exponential(1.0).unwrap().jump().clone(), de());
        let l = Complex64::new(0.3, 1.7);
        assert!((f.eval(l.conj()) - f.eval(l).conj()).norm() < 1e-12);
        assert_eq!(f.provenance(), Provenance::QuadratureBacked);
    }

    #[test]
    fn inversion_examples() {
        let r = invert_interpolant(&Interpolant::pole(1.0, 1), 0.0, &[1.0], 1e-10).unwrap();
        assert!((r.samples.points()[0].1 - (-1f64).exp()).abs() < 1e-6, "{:?}", r.samples.points());
        assert!(!r.warnings.is_empty());
        let r = invert_interpolant(&Interpolant::zero(), 0.0, &[0.5, 1.0], 1e-10).unwrap();
        assert!(r.samples.values().iter().all(|v| *v == 0.0));
        let r = invert_interpolant(&Interpolant::pole(1.0, 2), 0.0, &[2.0], 1e-10).unwrap();
        assert!((r.samples.points()[0].1 - 2.0 * (-2f64).exp()).abs() < 1e-6);
        assert!(r.warnings.is_empty());
        assert!(invert_interpolant(&Interpolant::zero(), 0.0, &[0.0], 1e-10).is_err());
    }

    #[test]
    fn plancherel_examples() {
        let p = pair_exponential(1.0).unwrap();
        let r = plancherel_check(p.interpolant(), p.jump(), -0.5, &de()).unwrap();
        assert!((r.lhs - 2.0 * PI).abs() < 1e-6 && (r.rhs - 2.0 * PI).abs() < 1e-6);
        assert!(r.residual <= 1e-6);
        let z = plancherel_check(&Interpolant::zero(), &JumpFunction::zero(Geometry::VLine), 0.0, &de()).unwrap();
        assert_eq!((z.lhs, z.rhs, z.residual), (0.0, 0.0, 0.0));
        let p = pair_power_law(1.0).unwrap();
        let r = plancherel_check(p.interpolant(), p.jump(), 0.0, &de()).unwrap();
        assert!((r.lhs - PI).abs() < 1e-8 && (r.rhs - PI).abs() < 1e-8);
    }

    #[test]
    fn hardy_norm_examples() {
        let a = Interpolant::pole(1.0, 1);
        assert!((hardy_norm(&a, -0.5, &de()).unwrap() - 2.0 * PI).abs() < 1e-8);
        assert!((hardy_norm(&a, 0.0, &de()).unwrap() - PI).abs() < 1e-8);
        assert!(hardy_norm(&a, 0.5, &de()).unwrap() <= hardy_norm(&a, 0.0, &de()).unwrap());
        assert_eq!(hardy_norm(&Interpolant::zero(), 0.0, &de()).unwrap(), 0.0);
        assert!(hardy_norm(&a, -0.6, &de()).is_err());
    }

    #[test]
    fn jump_bound_examples() {
        let p = pair_exponential(1.0).unwrap();
        let grid: Vec<f64> = (1..50).map(|k| k as f64 * 0.1).collect();
        let r = jump_bound_check(p.interpolant(), p.jump(), 0.0, &grid, &de()).unwrap();
        assert!(r.l1_norm.is_none() && !r.holds && r.note.is_some());
        let sq = JumpFunction::new(Geometry::VLine, |v| v * (-v).exp());
        let r = jump_bound_check(&Interpolant::pole(1.0, 2), &sq, 0.0, &grid, &de()).unwrap();
        assert!((r.l1_norm.unwrap() - 0.5).abs() < 1e-8);
        assert!(r.holds);
        let r = jump_bound_check(&Interpolant::zero(), &JumpFunction::zero(Geometry::VLine), 0.0, &grid, &de()).unwrap();
        assert!(r.holds && r.l1_norm == Some(0.0));
        let lp = pair_log_power(1.0).unwrap();
        let xs = crate::transform::geometric_grid(1.1, 100.0, 80);
        let r = jump_bound_check(lp.interpolant(), lp.jump(), 0.0, &xs, &de()).unwrap();
        assert!(r.holds, "{:?}", r.violations);
        // Mismatched pair: a jump larger than its interpolant allows.
        let big = JumpFunction::new(Geometry::VLine, |_| 10.0);
        let r = jump_bound_check(&Interpolant::pole(1.0, 2), &big, 0.0, &grid, &de()).unwrap();
        assert!(!r.holds && r.violations.len() == grid.len());
    }

    #[test]
    fn cauchy_examples() {
        let zero = cauchy_eval(&JumpFunction::zero(Geometry::XHalfLine), Complex64::new(0.0, 0.0), &de()).unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
        let inv = JumpFunction::new(Geometry::XHalfLine, |x| 1.0 / x);
        let f0 = cauchy_eval(&inv, Complex64::new(0.0, 0.0), &de()).unwrap();
        assert!((f0.re - 1.0 / (2.0 * PI)).abs() < 1e-12 && f0.im == 0.0);
        // 1/(x(x+1)) = 1/x − 1/(x+1) integrates to ln 2 over [1, ∞).
        let fm = cauchy_eval(&inv, Complex64::new(-1.0, 0.0), &de()).unwrap();
        assert!((fm.re - 2f64.ln() / (2.0 * PI)).abs() < 1e-12);
        // F = x^{-2} gives 1/(x²(x+1)), which integrates to 1 − ln 2.
        let inv2 = JumpFunction::new(Geometry::XHalfLine, |x| x.powi(-2));
        let fm = cauchy_eval(&inv2, Complex64::new(-1.0, 0.0), &de()).unwrap();
        assert!((fm.re - (1.0 - 2f64.ln()) / (2.0 * PI)).abs() < 1e-12);
        assert!(cauchy_eval(&inv, Complex64::new(2.0, 0.0), &de()).is_err());
        // Near the cut f(2 ± iδ) tends to (1/2π)(PV ∫ ± iπ F(2)).
        let up = cauchy_eval(&inv, Complex64::new(2.0, 1e-6), &de());
        let up = up.unwrap_or_else(|e| panic!("{e:?}"));
        assert!((up.im - 0.25).abs() < 1e-5, "{up}");
    }

    #[test]
    fn taylor_examples() {
        let a = MomentSequence::new((0..80).map(|n| 1.0 / (n as f64 + 1.0)).collect(), "h").unwrap();
        let t0 = taylor_eval(&a, Complex64::new(0.0, 0.0));
        assert_eq!(t0.value, Complex64::new(1.0 / (2.0 * PI), 0.0));
        let half = taylor_eval(&a, Complex64::new(0.5, 0.0));
        assert!((half.value.re - 2.0 * 2f64.ln() / (2.0 * PI)).abs() < 1e-14);
        assert!(half.remainder_estimate < 1e-20);
        let inv = JumpFunction::new(Geometry::XHalfLine, |x| 1.0 / x);
        let c = cauchy_eval(&inv, Complex64::new(0.5, 0.0), &de()).unwrap();
        assert!((half.value - c).norm() < 1e-8);
        let out = taylor_eval(&a, Complex64::new(1.0, 0.0));
        assert!(!out.converges && out.remainder_estimate.is_infinite());
    }

    #[test]
    fn plancherel_for_a_truncated_expansion() {
        use crate::transform::{reconstruct_at, reconstructed_interpolant, PollaczekCoefficients};
        let coeffs = PollaczekCoefficients::new(vec![0.4, -0.2, 0.1, 0.05]).unwrap();
        let c = coeffs.clone();
        let jump = JumpFunction::bilateral(move |v| reconstruct_at(&c, Geometry::VLine, v));
        let atilde = reconstructed_interpolant(&coeffs);
        for sigma in [-0.5, 0.0, 1.0] {
            let r = plancherel_check(&atilde, &jump, sigma, &de()).unwrap();
            assert!(r.residual <= 1e-8, "σ={sigma}: {r:?}");
        }
        // At σ = −½ both sides equal 2π Σ|c_m|² = 2π · 2 Σ A_m².
        let r = plancherel_check(&atilde, &jump, -0.5, &de()).unwrap();
        assert!((r.lhs - 2.0 * PI * coeffs.energy()).abs() <= 1e-8);
    }

    #[test]
    fn contour_coefficients_of_a_polynomial() {
        let c = taylor_coefficients_on_circle(|z| Ok(z * z * 3.0 + 1.0), 0.25, 16, 4).unwrap();
        let want = [1.0, 0.0, 3.0, 0.0];
        for (got, w) in c.iter().zip(want) {
            assert!((got - w).norm() < 1e-12);
        }
    }
}
