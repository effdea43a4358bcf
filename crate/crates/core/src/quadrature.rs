//! Quadrature rules shared by the special-function checks and the transform oracles.
//!
//! Three families are provided:
//!
//! * fixed Gauss rules ([`GaussLegendre`], [`GaussLaguerre`]) for smooth integrands on
//!   finite panels or with an `e^{-t}` weight;
//! * the double-exponential family ([`DoubleExponential`]) for finite, half-infinite
//!   and doubly-infinite intervals with endpoint singularities or algebraic decay;
//! * [`oscillatory_tail`], which sums half-period panels of a Fourier-type integral
//!   and accelerates the partial sums with Wynn's epsilon algorithm.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be accumulated by a quadrature rule.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]` split into `panels` equal panels.
    pub fn integrate<T, F>(&self, mut f: F, a: f64, b: f64, panels: usize) -> T
    where
        T: QuadValue,
        F: FnMut(f64) -> T,
    {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut total = T::zero();
        for p in 0..panels {
            let lo = a + width * p as f64;
            let mid = lo + 0.5 * width;
            let half = 0.5 * width;
            let mut acc = T::zero();
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                acc = acc + f(mid + half * x) * *w;
            }
            total = total + acc * half;
        }
        total
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Laguerre rule for `∫₀^∞ e^{-t} g(t) dt`.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Laguerre rule needs at least one node");
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let mut z: f64 = 0.0;
        for i in 0..n {
            // Initial guesses for the zeros of L_n.
            z = match i {
                0 => 3.0 / (1.0 + 2.4 * nf),
                1 => z + 15.0 / (1.0 + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
                }
            };
            for _ in 0..200 {
                let (p, p_prev) = laguerre_pair(n, z);
                let dp = nf * (p - p_prev) / z;
                let z1 = z;
                z = z1 - p / dp;
                if (z - z1).abs() <= 1e-15 * z.abs() {
                    break;
                }
            }
            nodes[i] = z;
            let next = laguerre_plain(n + 1, z);
            weights[i] = z / ((nf + 1.0) * (nf + 1.0) * next * next);
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫₀^∞ e^{-t} g(t) dt`.
    pub fn integrate<T, F>(&self, mut g: F) -> T
    where
        T: QuadValue,
        F: FnMut(f64) -> T,
    {
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + g(*x) * *w;
        }
        acc
    }
}

/// `(L_n(t), L_{n-1}(t))`.
fn laguerre_pair(n: usize, t: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j as f64 + 1.0 - t) * p2 - j as f64 * p3) / (j as f64 + 1.0);
    }
    (p1, p2)
}

fn laguerre_plain(n: usize, t: f64) -> f64 {
    let mut l0 = 1.0;
    if n == 0 {
        return l0;
    }
    let mut l1 = 1.0 - t;
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 - t) * l1 - kf * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// Interval handled by [`DoubleExponential`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// `[a, +∞)`
    UpperHalf(f64),
    /// `(-∞, +∞)`
    Whole,
}

/// Settings for the adaptive double-exponential rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleExponential {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
    pub max_level: usize,
}

impl Default for DoubleExponential {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-15,
            max_evals: 1_000_000,
            max_level: 12,
        }
    }
}

const DE_T_MAX: f64 = 4.0;
const DE_H0: f64 = 0.5;

impl DoubleExponential {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over `interval`, halving the step until successive levels agree.
    pub fn integrate<T, F>(&self, mut f: F, interval: Interval) -> Result<QuadResult<T>>
    where
        T: QuadValue,
        F: FnMut(f64) -> T,
    {
        let mut evaluations = 0usize;
        let mut sample = |t: f64, evaluations: &mut usize| -> T {
            let Some((x, w)) = de_node(interval, t) else {
                return T::zero();
            };
            if w == 0.0 || !w.is_finite() {
                return T::zero();
            }
            *evaluations += 1;
            let y = f(x);
            if y.is_finite_value() {
                y * w
            } else {
                T::zero()
            }
        };

        let mut h = DE_H0;
        let k_max = (DE_T_MAX / h).round() as i64;
        let mut sum = T::zero();
        for k in -k_max..=k_max {
            sum = sum + sample(k as f64 * h, &mut evaluations);
        }
        let mut estimate = sum * h;
        let mut last_diff = f64::INFINITY;

        for level in 1..=self.max_level {
            h *= 0.5;
            let k_max = (DE_T_MAX / h).round() as i64;
            let mut k = -k_max + 1;
            if k % 2 == 0 {
                k += 1;
            }
            while k <= k_max {
                sum = sum + sample(k as f64 * h, &mut evaluations);
                k += 2;
            }
            let next = sum * h;
            last_diff = (next - estimate).magnitude();
            estimate = next;
            let scale = estimate.magnitude();
            if level >= 3 && (last_diff <= self.rel_tol * scale || last_diff <= self.abs_tol) {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: last_diff,
                    evaluations,
                });
            }
            if evaluations >= self.max_evals {
                break;
            }
        }
        Err(Error::NonConvergence {
            what: "double-exponential quadrature",
            achieved: last_diff / estimate.magnitude().max(f64::MIN_POSITIVE),
            evaluations,
        })
    }
}

/// Abscissa and weight of the double-exponential map at parameter `t`.
fn de_node(interval: Interval, t: f64) -> Option<(f64, f64)> {
    match interval {
        Interval::Finite(a, b) => {
            let d = 0.5 * (b - a);
            let s = FRAC_PI_2 * t.sinh();
            let cosh_s = s.cosh();
            let w = d * FRAC_PI_2 * t.cosh() / (cosh_s * cosh_s);
            // Distance to the nearer endpoint, computed without cancellation.
            let delta = d * 2.0 / (1.0 + (2.0 * s.abs()).exp());
            let x = if s >= 0.0 { b - delta } else { a + delta };
            if x <= a || x >= b {
                return None;
            }
            Some((x, w))
        }
        Interval::UpperHalf(a) => {
            let e = (FRAC_PI_2 * t.sinh()).exp();
            let x = a + e;
            if x == a || !x.is_finite() {
                return None;
            }
            Some((x, FRAC_PI_2 * t.cosh() * e))
        }
        Interval::Whole => {
            let s = FRAC_PI_2 * t.sinh();
            let x = s.sinh();
            if !x.is_finite() {
                return None;
            }
            Some((x, FRAC_PI_2 * t.cosh() * s.cosh()))
        }
    }
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns the
/// last diagonal estimate.
pub fn wynn_epsilon(partial_sums: &[f64]) -> f64 {
    let n = partial_sums.len();
    if n < 3 {
        return partial_sums.last().copied().unwrap_or(0.0);
    }
    let mut prev = vec![0.0; n + 1];
    let mut curr: Vec<f64> = partial_sums.to_vec();
    let mut best = *partial_sums.last().unwrap();
    let mut col = 0usize;
    while curr.len() > 1 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for j in 0..curr.len() - 1 {
            let diff = curr[j + 1] - curr[j];
            let base = if col == 0 { 0.0 } else { prev[j + 1] };
            if diff == 0.0 {
                // Converged column; stop here.
                return if col % 2 == 0 { curr[j + 1] } else { best };
            }
            next.push(base + 1.0 / diff);
        }
        col += 1;
        if col % 2 == 0 {
            if let Some(v) = next.last() {
                if v.is_finite() {
                    best = *v;
                }
            }
        }
        prev = curr;
        curr = next;
    }
    best
}

/// `∫₀^∞ g(ν) dν` for an oscillatory `g` with half-period `half_period`,
/// integrated panel by panel and accelerated with [`wynn_epsilon`].
///
/// `sub_width` bounds the width of the Gauss–Legendre sub-panels inside each
/// half period.
pub fn oscillatory_tail<F>(mut g: F, half_period: f64, sub_width: f64, rel_tol: f64) -> Result<QuadResult<f64>>
where
    F: FnMut(f64) -> f64,
{
    let gl = GaussLegendre::new(20);
    let subs = ((half_period / sub_width).ceil() as usize).max(1);
    let mut partial = Vec::new();
    let mut running = 0.0;
    let mut evaluations = 0;
    let mut last_estimate = f64::NAN;
    let max_panels = 4000;
    for k in 0..max_panels {
        let lo = half_period * k as f64;
        running += gl.integrate(&mut g, lo, lo + half_period, subs);
        evaluations += subs * gl.len();
        partial.push(running);
        if partial.len() >= 8 && partial.len() % 2 == 0 {
            let window_start = partial.len().saturating_sub(40);
            let estimate = wynn_epsilon(&partial[window_start..]);
            let diff = (estimate - last_estimate).abs();
            if diff <= rel_tol * estimate.abs().max(1e-300) || diff <= 1e-15 {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: diff,
                    evaluations,
                });
            }
            last_estimate = estimate;
        }
    }
    Err(Error::NonConvergence {
        what: "oscillatory tail",
        achieved: f64::NAN,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(10);
        let v: f64 = gl.integrate(|x| x.powi(18) + 3.0 * x.powi(5), -1.0, 1.0, 1);
        assert_relative_eq!(v, 2.0 / 19.0, max_relative = 1e-14);
        let w: f64 = gl.weights().iter().sum();
        assert_relative_eq!(w, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn gauss_laguerre_moments() {
        let gl = GaussLaguerre::new(30);
        for k in 0..20 {
            let v: f64 = gl.integrate(|t| t.powi(k));
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            assert_relative_eq!(v, fact, max_relative = 1e-12);
        }
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        let de = DoubleExponential::default();
        let r = de.integrate(|x: f64| 1.0 / x.sqrt(), Interval::Finite(0.0, 1.0)).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-10);
        let r = de.integrate(|x: f64| x.ln(), Interval::Finite(0.0, 1.0)).unwrap();
        assert_relative_eq!(r.value, -1.0, max_relative = 1e-10);
    }

    #[test]
    fn exp_sinh_and_sinh_sinh() {
        let de = DoubleExponential::default();
        let r = de.integrate(|x: f64| (-x).exp(), Interval::UpperHalf(0.0)).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);
        let r = de.integrate(|x: f64| 1.0 / (x * x), Interval::UpperHalf(1.0)).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);
        let r = de.integrate(|x: f64| 1.0 / (0.25 + x * x), Interval::Whole).unwrap();
        assert_relative_eq!(r.value, 2.0 * PI, max_relative = 1e-10);
    }

    #[test]
    fn non_convergence_is_reported() {
        let de = DoubleExponential {
            max_level: 3,
            ..DoubleExponential::default()
        };
        let r = de.integrate(|x: f64| 1.0 / x, Interval::UpperHalf(1.0));
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn wynn_accelerates_alternating_harmonic() {
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert_relative_eq!(wynn_epsilon(&partial), 2f64.ln(), max_relative = 1e-10);
    }

    #[test]
    fn oscillatory_sine_integral() {
        let r = oscillatory_tail(|x| if x == 0.0 { 1.0 } else { x.sin() / x }, PI, 1.0, 1e-12).unwrap();
        assert_relative_eq!(r.value, FRAC_PI_2, max_relative = 1e-10);
    }
}
