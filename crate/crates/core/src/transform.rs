//! Series coefficients → Pollaczek amplitudes → reconstructed jump function.
//!
//! Everything is carried in real arithmetic. With `s_m` the real form of the
//! Pollaczek polynomial on the imaginary axis,
//!
//! ```text
//! A_m  = Σ_n (−1)^n a_n / n! · s_m(n + ½)
//! c_m  = (−i)^m √2 A_m,        d_m = √(2π) c_m
//! F(v) = 2 Σ_m A_m L_m(2e^{−v}) exp(−e^{−v}) e^{−v}
//! F(x) = 2 Σ_m A_m L_m(2/x) e^{−1/x} / x          (x = e^v)
//! ```
//!
//! The phases of `c_m` and of the basis functions cancel exactly, so the
//! reconstruction is real by construction.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::forward::Interpolant;
use crate::hausdorff::compensated_sum;
use crate::specfun::{gamma, laguerre_all, pollaczek_all_real, pollaczek_imag_all, LineQuadrature};

/// Finite prefix `a_0, …, a_N` of series coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence {
    values: Vec<f64>,
    noise_level: Option<f64>,
    label: String,
}

impl MomentSequence {
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("coefficient sequence is empty".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("coefficient {pos} is not finite")));
        }
        Ok(Self {
            values,
            noise_level: None,
            label: label.into(),
        })
    }

    pub fn with_noise_level(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidInput(format!("noise level must be finite and ≥ 0, got {epsilon}")));
        }
        self.noise_level = Some(epsilon);
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn noise_level(&self) -> Option<f64> {
        self.noise_level
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest index `N`.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First `count` coefficients.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        let count = count.min(self.values.len());
        Ok(Self {
            values: self.values[..count.max(1)].to_vec(),
            noise_level: self.noise_level,
            label: self.label.clone(),
        })
    }
}

/// Phase convention linking the stored real amplitudes to the complex coefficients.
pub const PHASE_CONVENTION: &str = "c_m = (-i)^m sqrt(2) A_m; d_m = sqrt(2 pi) c_m";

/// Real amplitudes `A_0, …, A_M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PollaczekCoefficients {
    amplitudes: Vec<f64>,
}

impl PollaczekCoefficients {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidInput("need at least one amplitude".into()));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("amplitudes must be finite".into()));
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Highest degree `M`.
    pub fn degree(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn convention(&self) -> &'static str {
        PHASE_CONVENTION
    }

    /// Keeps degrees `0..=degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        let end = (degree + 1).min(self.amplitudes.len());
        Self {
            amplitudes: self.amplitudes[..end].to_vec(),
        }
    }

    /// `c_m = (−i)^m √2 A_m`.
    pub fn c(&self, m: usize) -> Complex64 {
        crate::specfun::i_pow(m).conj() * (SQRT_2 * self.amplitudes[m])
    }

    /// `d_m = √(2π) c_m`.
    pub fn d(&self, m: usize) -> Complex64 {
        self.c(m) * (2.0 * PI).sqrt()
    }

    /// `Σ |c_m|² = 2 Σ A_m²`.
    pub fn energy(&self) -> f64 {
        2.0 * self.amplitudes.iter().map(|a| a * a).sum::<f64>()
    }
}

/// Size of the terms of the `n`-series for one amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerms {
    pub largest: f64,
    pub last: f64,
    pub absolute_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub coefficients: PollaczekCoefficients,
    pub terms: Vec<SeriesTerms>,
    pub warnings: Vec<String>,
}

impl CoefficientSeries {
    /// True when some amplitude's last retained term is not negligible.
    pub fn truncation_dominant(&self) -> bool {
        self.terms
            .iter()
            .zip(self.coefficients.amplitudes())
            .any(|(t, a)| t.last > TAIL_WARNING_RATIO * a.abs())
    }
}

/// Relative size of the last retained term above which truncation is flagged.
pub const TAIL_WARNING_RATIO: f64 = 1e-12;

/// Sequence length required for degree `M` before the tail warning is waived.
pub fn recommended_series_length(degree: usize) -> usize {
    2 * degree + 16
}

/// `A_m = Σ_{n ≤ N} (−1)^n a_n / n! · s_m(n + ½)` for `m = 0..=M`.
pub fn pollaczek_coefficients(a: &MomentSequence, degree: usize) -> Result<CoefficientSeries> {
    let m_count = degree + 1;
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(a.len()); m_count];
    // (−1)^n / n!, carried iteratively; underflow to zero ends the useful range.
    let mut weight = 1.0f64;
    for (n, an) in a.values().iter().enumerate() {
        if n > 0 {
            weight /= -(n as f64);
        }
        let s = pollaczek_imag_all(degree, n as f64 + 0.5);
        for (column, sm) in columns.iter_mut().zip(&s) {
            column.push(if weight == 0.0 || *an == 0.0 { 0.0 } else { an * weight * sm });
        }
    }
    let sums: Vec<f64> = columns.iter().map(|c| compensated_sum(c.iter().copied())).collect();
    let terms: Vec<SeriesTerms> = columns
        .iter()
        .map(|c| SeriesTerms {
            largest: c.iter().fold(0.0, |m, t| m.max(t.abs())),
            last: c.last().map_or(0.0, |t| t.abs()),
            absolute_sum: c.iter().map(|t| t.abs()).sum(),
        })
        .collect();
    let mut warnings = Vec::new();
    if a.len() < recommended_series_length(degree) {
        warnings.push(format!(
            "only {} coefficients for degree {degree}; at least {} recommended",
            a.len(),
            recommended_series_length(degree)
        ));
    }
    for (m, (t, s)) in terms.iter().zip(&sums).enumerate() {
        if t.last > TAIL_WARNING_RATIO * s.abs() {
            warnings.push(format!(
                "degree {m}: last retained term {:.3e} is not negligible against the sum {:.3e}",
                t.last, s
            ));
            break;
        }
    }
    Ok(CoefficientSeries {
        coefficients: PollaczekCoefficients::new(sums)?,
        terms,
        warnings,
    })
}

/// `d_m = (1/√π) ∫ ã(−½ + iν) Γ(½ − iν) P_m(ν) dν` by composite Gauss–Legendre.
///
/// If the interpolant is not finite on the boundary line the line is moved to
/// `Re λ = −½ + 10⁻⁶`.
pub fn pollaczek_coefficients_integral(atilde: &Interpolant, m: usize, quad: LineQuadrature) -> Result<Complex64> {
    let gl = crate::quadrature::GaussLegendre::new(quad.order);
    let attempt = |sigma: f64| -> Option<Complex64> {
        let value: Complex64 = gl.integrate(
            |nu| {
                let a = atilde.eval(Complex64::new(sigma, nu));
                let g = gamma(Complex64::new(0.5, -nu)).unwrap_or_default();
                a * g * pollaczek_all_real(m, nu)[m]
            },
            quad.lower,
            quad.upper,
            quad.panels,
        );
        (value.re.is_finite() && value.im.is_finite()).then_some(value / PI.sqrt())
    };
    attempt(-0.5)
        .or_else(|| attempt(-0.5 + 1e-6))
        .ok_or(Error::NonConvergence {
            what: "pollaczek_coefficients_integral",
            achieved: f64::NAN,
            evaluations: quad.panels * quad.order,
        })
}

/// Window for [`pollaczek_coefficients_integral`]; `Γ(½ − iν)` decays like
/// `e^{−π|ν|/2}`, which beats `P_m(ν)` for `m ≤ 12` well inside `|ν| ≤ 60`.
pub fn coefficient_integral_quadrature() -> LineQuadrature {
    LineQuadrature {
        lower: -60.0,
        upper: 60.0,
        panels: 240,
        order: 20,
    }
}

/// Variable in which a jump function is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    /// `v ∈ (0, ∞)`, the Laplace variable.
    #[serde(rename = "v")]
    VLine,
    /// `x = e^v ∈ (1, ∞)`, the Mellin variable.
    #[serde(rename = "x")]
    XHalfLine,
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::VLine => "v",
            Geometry::XHalfLine => "x",
        }
    }

    /// Lower end of the jump support in this variable.
    pub fn support_start(&self) -> f64 {
        match self {
            Geometry::VLine => 0.0,
            Geometry::XHalfLine => 1.0,
        }
    }

    /// Default sampling grid: geometric `1.05..100` in x, linear `0.05..6` in v.
    pub fn default_grid(&self) -> Vec<f64> {
        match self {
            Geometry::VLine => linear_grid(0.05, 6.0, 256),
            Geometry::XHalfLine => geometric_grid(1.05, 100.0, 256),
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v" => Ok(Geometry::VLine),
            "x" => Ok(Geometry::XHalfLine),
            other => Err(Error::InvalidInput(format!("unknown geometry {other:?}; use v or x"))),
        }
    }
}

pub fn linear_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..count)
            .map(|k| min + (max - min) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

pub fn geometric_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let ratio = (max / min).ln();
            (0..count)
                .map(|k| min * (ratio * k as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionConfig {
    /// Number of series coefficients used (`N + 1`); `None` uses all of them.
    pub series_truncation: Option<usize>,
    /// Highest expansion degree `M`.
    pub expansion_truncation: usize,
    pub geometry: Geometry,
    pub grid: Vec<f64>,
    /// Abscissa of the vertical line used by diagnostics, `σ ≥ −½`.
    pub sigma: f64,
}

impl ReconstructionConfig {
    pub fn new(geometry: Geometry, expansion_truncation: usize) -> Self {
        Self {
            series_truncation: None,
            expansion_truncation,
            geometry,
            grid: geometry.default_grid(),
            sigma: 0.0,
        }
    }

    pub fn with_grid(mut self, grid: Vec<f64>) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_series_truncation(mut self, count: usize) -> Self {
        self.series_truncation = Some(count);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma >= -0.5) {
            return Err(domain("ReconstructionConfig", format!("sigma = {} below -1/2", self.sigma)));
        }
        validate_grid(self.geometry, &self.grid)
    }
}

fn validate_grid(geometry: Geometry, grid: &[f64]) -> Result<()> {
    let start = geometry.support_start();
    for (k, x) in grid.iter().enumerate() {
        if !x.is_finite() || *x < start {
            return Err(domain(
                "grid",
                format!("abscissa {x} outside the {} support [{start}, ∞)", geometry.name()),
            ));
        }
        if k > 0 && *x <= grid[k - 1] {
            return Err(domain("grid", "abscissas must be strictly increasing"));
        }
    }
    Ok(())
}

/// Samples of a real function on an increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    geometry: Geometry,
    points: Vec<(f64, f64)>,
}

impl SampledFunction {
    pub fn new(geometry: Geometry, points: Vec<(f64, f64)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(domain("SampledFunction", "abscissas must be strictly increasing"));
            }
        }
        Ok(Self { geometry, points })
    }

    pub fn from_fn(geometry: Geometry, grid: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(geometry, grid.iter().map(|x| (*x, f(*x))).collect())
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn abscissas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// Trapezoidal `L²` norm over the sampled support.
    pub fn l2_norm(&self) -> f64 {
        trapezoid_sq(self.points.iter().map(|p| (p.0, p.1))).sqrt()
    }

    /// `‖self − reference‖ / ‖reference‖` on the shared grid.
    pub fn relative_l2_error(&self, reference: &SampledFunction) -> Result<f64> {
        if self.points.len() != reference.points.len()
            || self.points.iter().zip(&reference.points).any(|(a, b)| a.0 != b.0)
        {
            return Err(Error::InvalidInput("functions are sampled on different grids".into()));
        }
        let diff = trapezoid_sq(self.points.iter().zip(&reference.points).map(|(a, b)| (a.0, a.1 - b.1))).sqrt();
        let norm = reference.l2_norm();
        if norm == 0.0 {
            return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
        }
        Ok(diff / norm)
    }
}

fn trapezoid_sq(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for (x, y) in points {
        if let Some((px, py)) = prev {
            total += 0.5 * (x - px) * (py * py + y * y);
        }
        prev = Some((x, y));
    }
    total
}

/// Reconstructed jump at one abscissa.
pub fn reconstruct_at(coeffs: &PollaczekCoefficients, geometry: Geometry, at: f64) -> f64 {
    let degree = coeffs.degree();
    let (t, envelope) = match geometry {
        Geometry::VLine => {
            let g = crate::specfun::double_exp_factor(at);
            if g == 0.0 {
                return 0.0;
            }
            let e = (-at).exp();
            (2.0 * e, g * e)
        }
        Geometry::XHalfLine => {
            let inv = 1.0 / at;
            (2.0 * inv, (-inv).exp() * inv)
        }
    };
    if envelope == 0.0 {
        return 0.0;
    }
    let ls = laguerre_all(degree, t);
    let series: f64 = coeffs.amplitudes().iter().zip(&ls).map(|(a, l)| a * l).sum();
    2.0 * series * envelope
}

/// Evaluates the truncated expansion of degree `cfg.expansion_truncation` on `cfg.grid`.
pub fn reconstruct(coeffs: &PollaczekCoefficients, cfg: &ReconstructionConfig) -> Result<SampledFunction> {
    cfg.validate()?;
    let truncated = coeffs.truncated(cfg.expansion_truncation);
    SampledFunction::from_fn(cfg.geometry, &cfg.grid, |x| reconstruct_at(&truncated, cfg.geometry, x))
}

/// Coefficients and reconstruction in one step, honouring `cfg.series_truncation`.
pub fn reconstruct_from_moments(a: &MomentSequence, cfg: &ReconstructionConfig) -> Result<(CoefficientSeries, SampledFunction)> {
    let a = match cfg.series_truncation {
        Some(count) => a.truncated(count)?,
        None => a.clone(),
    };
    let series = pollaczek_coefficients(&a, cfg.expansion_truncation)?;
    let samples = reconstruct(&series.coefficients, cfg)?;
    Ok((series, samples))
}

/// Bilateral Laplace transform of the truncated expansion, in closed form:
/// `ã_M(λ) = 2 Γ(λ + 1) Σ_m (−1)^m A_m s_m(λ + ½)`.
pub fn reconstructed_interpolant(coeffs: &PollaczekCoefficients) -> Interpolant {
    let amplitudes = coeffs.amplitudes().to_vec();
    Interpolant::quadrature_backed(move |lambda: Complex64| {
        let y = lambda + 0.5;
        let mut s_prev = Complex64::new(1.0, 0.0);
        let mut s_curr = y * 2.0;
        let mut sum = Complex64::new(amplitudes[0], 0.0);
        for (m, a) in amplitudes.iter().enumerate().skip(1) {
            if m > 1 {
                let k = (m - 1) as f64;
                let next = (y * 2.0 * s_curr + s_prev * k) / (k + 1.0);
                s_prev = s_curr;
                s_curr = next;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sum += s_curr * (sign * a);
        }
        match gamma(lambda + 1.0) {
            Ok(g) => g * sum * 2.0,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    })
}

/// Adds independent uniform noise in `[−ε, ε]` to every coefficient.
pub fn add_noise(a: &MomentSequence, epsilon: f64, seed: u64) -> Result<MomentSequence> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!("noise level must be finite and ≥ 0, got {epsilon}")));
    }
    let values = if epsilon == 0.0 {
        a.values().to_vec()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        a.values().iter().map(|v| v + rng.gen_range(-epsilon..=epsilon)).collect()
    };
    MomentSequence::new(values, a.label().to_string())?.with_noise_level(epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub degree: usize,
    pub l2_error: f64,
}

/// Relative `L²` error as a function of the expansion degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCurve {
    pub points: Vec<SweepPoint>,
}

impl ErrorCurve {
    pub fn argmin(&self) -> Option<SweepPoint> {
        self.points
            .iter()
            .copied()
            .min_by(|a, b| a.l2_error.total_cmp(&b.l2_error))
    }

    /// Each error is at most `(1 + slack)` times the previous one.
    pub fn is_non_increasing(&self, slack: f64) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].l2_error <= (1.0 + slack) * w[0].l2_error)
    }

    /// The minimum is attained strictly inside the degree range.
    pub fn has_interior_minimum(&self) -> bool {
        let (Some(best), Some(first), Some(last)) = (self.argmin(), self.points.first(), self.points.last()) else {
            return false;
        };
        best.degree != first.degree && best.degree != last.degree && best.l2_error < first.l2_error
            && best.l2_error < last.l2_error
    }

    pub fn error_at(&self, degree: usize) -> Option<f64> {
        self.points.iter().find(|p| p.degree == degree).map(|p| p.l2_error)
    }
}

/// Reconstructs at each degree in `degrees` and compares with `reference`,
/// which fixes the grid and geometry.
pub fn truncation_sweep(
    a: &MomentSequence,
    reference: &SampledFunction,
    degrees: &[usize],
    cfg: &ReconstructionConfig,
) -> Result<ErrorCurve> {
    if degrees.is_empty() {
        return Ok(ErrorCurve { points: Vec::new() });
    }
    let a = match cfg.series_truncation {
        Some(count) => a.truncated(count)?,
        None => a.clone(),
    };
    let max_degree = *degrees.iter().max().unwrap();
    let series = pollaczek_coefficients(&a, max_degree)?;
    let grid = reference.abscissas();
    validate_grid(reference.geometry(), &grid)?;
    let mut points = Vec::with_capacity(degrees.len());
    for &degree in degrees {
        let sub = series.coefficients.truncated(degree);
        let rec = SampledFunction::from_fn(reference.geometry(), &grid, |x| reconstruct_at(&sub, reference.geometry(), x))?;
        points.push(SweepPoint {
            degree,
            l2_error: rec.relative_l2_error(reference)?,
        });
    }
    Ok(ErrorCurve { points })
}
