//! Diagnostics on real sequences: finite differences, the L² and L¹ moment
//! statistics, and the Bernoulli-walk objects (harmonic functions, Markov kernel,
//! generalized Poisson kernel) that give those statistics a probabilistic reading.
//!
//! The differences are forward differences, `Δf_n = f_{n+1} − f_n`.
//!
//! Only a finite prefix of a sequence is ever available, so boundedness of the
//! statistic over all `n` is undecidable; reports say "consistent with" or
//! "violates" up to the last index checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{binomial_row, rationalize};
use crate::quadrature::{DoubleExponential, Interval};
use crate::specfun::ln_gamma_real;

/// Finite real sequence `f_0, …, f_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealSequence {
    values: Vec<f64>,
}

impl RealSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("sequence must have at least one entry".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("entry {pos} is not finite")));
        }
        Ok(Self { values })
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new((0..len).map(f).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
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
}

/// Sequence of exact rationals, for the catastrophic-cancellation-free path.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSequence {
    values: Vec<BigRational>,
}

impl RationalSequence {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("sequence must have at least one entry".into()));
        }
        Ok(Self { values })
    }

    /// `f_n = p(n) / q(n)` for integer-valued `p`, `q`.
    pub fn from_ratio(len: usize, f: impl Fn(usize) -> (i64, i64)) -> Result<Self> {
        let mut values = Vec::with_capacity(len);
        for n in 0..len {
            let (p, q) = f(n);
            if q == 0 {
                return Err(Error::InvalidInput(format!("zero denominator at index {n}")));
            }
            values.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
        Self::new(values)
    }

    /// Converts each float to the simplest rational that rounds to it.
    pub fn from_floats(seq: &RealSequence) -> Self {
        let values = seq
            .values()
            .iter()
            .map(|x| rationalize(*x).expect("RealSequence entries are finite"))
            .collect();
        Self { values }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// Point `(n, i)` of the lattice `E = {0 ≤ i ≤ n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    n: usize,
    i: usize,
}

impl LatticePoint {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(domain("LatticePoint", format!("i = {i} exceeds n = {n}")));
        }
        Ok(Self { n, i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticMode {
    Exact,
    Float,
}

fn check_window(len: usize, needed: usize) -> Result<()> {
    if needed > len {
        return Err(Error::IndexOutOfRange {
            needed,
            available: len,
        });
    }
    Ok(())
}

/// `Δ^k f_n`, evaluated by repeated differencing of `f_n, …, f_{n+k}`.
pub fn finite_difference(seq: &RealSequence, k: usize, n: usize) -> Result<f64> {
    check_window(seq.len(), n + k + 1)?;
    let mut row: Vec<f64> = seq.values()[n..=n + k].to_vec();
    for level in 0..k {
        for j in 0..k - level {
            row[j] = row[j + 1] - row[j];
        }
    }
    Ok(row[0])
}

/// Exact `Δ^k f_n`.
pub fn finite_difference_exact(seq: &RationalSequence, k: usize, n: usize) -> Result<BigRational> {
    check_window(seq.values().len(), n + k + 1)?;
    let mut row: Vec<BigRational> = seq.values()[n..=n + k].to_vec();
    for level in 0..k {
        for j in 0..k - level {
            row[j] = &row[j + 1] - &row[j];
        }
    }
    Ok(row.swap_remove(0))
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

fn binomial_f64_row(n: usize) -> Result<Vec<f64>> {
    let mut row = Vec::with_capacity(n + 1);
    let mut b = 1.0f64;
    row.push(b);
    for k in 0..n {
        b = b * (n - k) as f64 / (k + 1) as f64;
        if !b.is_finite() {
            return Err(Error::Overflow("binomial coefficient"));
        }
        row.push(b.round());
    }
    Ok(row)
}

/// `Δ^i f_{n−i}` for `i = 0..=n` in floating point, each by the compensated
/// binomial formula `Σ_m (−1)^m binom(i, m) f_{n−m}`.
fn float_differences(seq: &RealSequence, n: usize) -> Result<Vec<f64>> {
    check_window(seq.len(), n + 1)?;
    let f = seq.values();
    (0..=n)
        .map(|i| {
            let binom = binomial_f64_row(i)?;
            Ok(compensated_sum((0..=i).map(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom[m] * f[n - m]
            })))
        })
        .collect()
}

/// `S_n = (n + 1) Σ_i binom(n, i)² |Δ^i f_{n−i}|²` in floating point.
///
/// Accurate to a few digits up to `n ≈ 15`; beyond that the differences lose
/// everything to cancellation and [`hausdorff_statistic_exact`] should be used.
pub fn hausdorff_statistic(seq: &RealSequence, n: usize) -> Result<f64> {
    let diffs = float_differences(seq, n)?;
    let binom = binomial_f64_row(n)?;
    let mut terms = Vec::with_capacity(n + 1);
    for (b, d) in binom.iter().zip(&diffs) {
        let t = (b * d) * (b * d);
        if !t.is_finite() {
            return Err(Error::Overflow("hausdorff_statistic"));
        }
        terms.push(t);
    }
    let s = (n + 1) as f64 * compensated_sum(terms);
    if !s.is_finite() {
        return Err(Error::Overflow("hausdorff_statistic"));
    }
    Ok(s)
}

/// `T_n = Σ_i binom(n, i) |Δ^i f_{n−i}|` in floating point.
pub fn watanabe_statistic(seq: &RealSequence, n: usize) -> Result<f64> {
    let diffs = float_differences(seq, n)?;
    let binom = binomial_f64_row(n)?;
    let t = compensated_sum(binom.iter().zip(&diffs).map(|(b, d)| b * d.abs()));
    if !t.is_finite() {
        return Err(Error::Overflow("watanabe_statistic"));
    }
    Ok(t)
}

/// Difference table `table[i][k] = Δ^i f_k` for `i + k ≤ N`.
fn exact_difference_table(seq: &RationalSequence) -> Vec<Vec<BigRational>> {
    let mut table = vec![seq.values().to_vec()];
    while table.last().map_or(0, Vec::len) > 1 {
        let prev = table.last().unwrap();
        let next: Vec<BigRational> = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        table.push(next);
    }
    table
}

fn exact_statistics_from_table(table: &[Vec<BigRational>], n: usize) -> (BigRational, BigRational) {
    let binom = binomial_row(n);
    let mut s = BigRational::zero();
    let mut t = BigRational::zero();
    for (i, b) in binom.iter().enumerate() {
        let d = &table[i][n - i];
        let bd = d * BigRational::from_integer(b.clone());
        t += bd.abs();
        s += &bd * &bd;
    }
    (s * BigRational::from_integer(BigInt::from(n + 1)), t)
}

/// Exact `S_n`.
pub fn hausdorff_statistic_exact(seq: &RationalSequence, n: usize) -> Result<BigRational> {
    check_window(seq.values().len(), n + 1)?;
    let prefix = RationalSequence::new(seq.values()[..=n].to_vec())?;
    Ok(exact_statistics_from_table(&exact_difference_table(&prefix), n).0)
}

/// Exact `T_n`.
pub fn watanabe_statistic_exact(seq: &RationalSequence, n: usize) -> Result<BigRational> {
    check_window(seq.values().len(), n + 1)?;
    let prefix = RationalSequence::new(seq.values()[..=n].to_vec())?;
    Ok(exact_statistics_from_table(&exact_difference_table(&prefix), n).1)
}

/// Whether the finite prefix looks compatible with a bounded statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Bounded,
    UnboundedTrend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HausdorffReport {
    pub per_n_statistic: Vec<f64>,
    pub per_n_watanabe: Vec<f64>,
    /// Exact values as `p/q` strings, present in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_n_statistic_exact: Option<Vec<String>>,
    pub max_statistic: f64,
    pub exact_mode: bool,
    /// `T_n² ≤ S_n` for every `n` checked.
    pub cauchy_schwarz_holds: bool,
    pub trend: Trend,
    /// Last index for which the statistics were computed and, in float mode,
    /// resolved above round-off.
    pub checked_up_to: usize,
    /// First index whose float statistic is dominated by round-off.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundoff_limited_from: Option<usize>,
    pub verdict: String,
}

impl HausdorffReport {
    fn assemble(
        s: Vec<f64>,
        t: Vec<f64>,
        exact: Option<Vec<String>>,
        cs_exact: Option<bool>,
        roundoff_limited_from: Option<usize>,
    ) -> Self {
        let resolved = roundoff_limited_from.unwrap_or(s.len()).min(s.len());
        let checked_up_to = resolved.saturating_sub(1);
        let max_statistic = s.iter().copied().fold(0.0, f64::max);
        let cauchy_schwarz_holds = cs_exact.unwrap_or_else(|| {
            s.iter()
                .zip(&t)
                .all(|(s, t)| t * t <= s * (1.0 + 8.0 * f64::EPSILON) + f64::MIN_POSITIVE)
        });
        let trend = classify_trend(&s[..resolved]);
        let mut verdict = match trend {
            Trend::Bounded => format!("consistent with a bounded moment statistic up to n={checked_up_to}"),
            Trend::UnboundedTrend => format!("violates boundedness (growing statistic) up to n={checked_up_to}"),
        };
        if let Some(n) = roundoff_limited_from {
            verdict.push_str(&format!("; float round-off dominates from n={n}, use exact mode beyond"));
        }
        Self {
            per_n_statistic: s,
            per_n_watanabe: t,
            per_n_statistic_exact: exact.clone(),
            exact_mode: exact.is_some(),
            max_statistic,
            cauchy_schwarz_holds,
            trend,
            checked_up_to,
            roundoff_limited_from,
            verdict,
        }
    }

    /// True when the statistic shows no sign of growth on the checked prefix.
    pub fn is_consistent(&self) -> bool {
        self.trend == Trend::Bounded
    }
}

/// Growth heuristic: the second half of the statistic is non-decreasing and its
/// final value exceeds the midpoint value by half again.
fn classify_trend(s: &[f64]) -> Trend {
    if s.len() < 4 {
        return Trend::Bounded;
    }
    let mid = s.len() / 2;
    let tail = &s[mid..];
    let non_decreasing = tail.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12));
    let last = *s.last().unwrap();
    if non_decreasing && last > 1.5 * s[mid] && last > 0.0 {
        Trend::UnboundedTrend
    } else {
        Trend::Bounded
    }
}

/// Statistics for every `n ≤ N` in floating point. Stops early at the first
/// index whose binomials overflow.
pub fn hausdorff_report(seq: &RealSequence) -> Result<HausdorffReport> {
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut roundoff_limited_from = None;
    let abs_table = absolute_sum_table(seq);
    for n in 0..=seq.last_index() {
        match (hausdorff_statistic(seq, n), watanabe_statistic(seq, n)) {
            (Ok(sn), Ok(tn)) => {
                if roundoff_limited_from.is_none() && statistic_roundoff(seq, &abs_table, n)? > ROUNDOFF_FRACTION * sn {
                    roundoff_limited_from = Some(n);
                }
                s.push(sn);
                t.push(tn);
            }
            (Err(Error::Overflow(_)), _) | (_, Err(Error::Overflow(_))) if n > 0 => break,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(HausdorffReport::assemble(s, t, None, None, roundoff_limited_from))
}

/// Largest tolerated ratio of the round-off bound to the float statistic.
const ROUNDOFF_FRACTION: f64 = 1e-2;

/// `table[i][k] = Σ_m binom(i, m) |f_{k+m}|`, built like a difference table with sums.
fn absolute_sum_table(seq: &RealSequence) -> Vec<Vec<f64>> {
    let mut table = vec![seq.values().iter().map(|v| v.abs()).collect::<Vec<_>>()];
    while table.last().map_or(0, Vec::len) > 1 {
        let prev = table.last().unwrap();
        let next: Vec<f64> = prev.windows(2).map(|w| w[0] + w[1]).collect();
        table.push(next);
    }
    table
}

/// First-order round-off bound on the float `S_n`: the difference `Δ^i f_{n−i}`
/// carries an absolute error of about `ε Σ_m binom(i, m) |f_{n−m}|`.
fn statistic_roundoff(seq: &RealSequence, abs_table: &[Vec<f64>], n: usize) -> Result<f64> {
    let diffs = float_differences(seq, n)?;
    let binom = binomial_f64_row(n)?;
    let mut bound = 0.0;
    for (i, (b, d)) in binom.iter().zip(&diffs).enumerate() {
        let delta = 4.0 * f64::EPSILON * abs_table[i][n - i];
        bound += b * b * (2.0 * d.abs() * delta + delta * delta);
    }
    Ok((n + 1) as f64 * bound)
}

/// Statistics for every `n ≤ N` in exact rational arithmetic.
pub fn hausdorff_report_exact(seq: &RationalSequence) -> HausdorffReport {
    let table = exact_difference_table(seq);
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut strings = Vec::new();
    let mut cs = true;
    for n in 0..=seq.last_index() {
        let (sn, tn) = exact_statistics_from_table(&table, n);
        cs &= &tn * &tn <= sn;
        strings.push(sn.to_string());
        s.push(sn.to_f64().unwrap_or(f64::INFINITY));
        t.push(tn.to_f64().unwrap_or(f64::INFINITY));
    }
    HausdorffReport::assemble(s, t, Some(strings), Some(cs), None)
}

/// `u(n, i) = 2^n (−1)^i Δ^i f_{n−i}`.
pub fn harmonic_function(seq: &RealSequence, p: LatticePoint) -> Result<f64> {
    let d = finite_difference(seq, p.i, p.n - p.i)?;
    let sign = if p.i % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * d * 2f64.powi(p.n as i32))
}

/// Exact `u(n, i)`.
pub fn harmonic_function_exact(seq: &RationalSequence, p: LatticePoint) -> Result<BigRational> {
    let d = finite_difference_exact(seq, p.i, p.n - p.i)?;
    let scale = BigRational::from_integer(BigInt::from(2).pow(p.n as u32));
    Ok(if p.i % 2 == 0 { d * scale } else { -d * scale })
}

/// Arguments at or below which the Markov kernel is evaluated with exact integers.
const KERNEL_EXACT_LIMIT: usize = 20;

/// Transition kernel `K((n,i),(m,j)) = 2^n (m−n)! j! (m−j)! / (m! (m−n−j+i)! (j−i)!)`
/// of the Bernoulli walk on `E`.
pub fn markov_kernel(from: LatticePoint, to: LatticePoint) -> Result<f64> {
    let (n, i, m, j) = (from.n, from.i, to.n, to.i);
    if m < n || j < i || j > i + (m - n) {
        return Err(domain(
            "markov_kernel",
            format!("({m},{j}) is not reachable from ({n},{i})"),
        ));
    }
    let mut numerator = vec![m - n, j, m - j];
    let mut denominator = vec![m, m - n - j + i, j - i];
    // Identical factorials cancel before any arithmetic.
    numerator.sort_unstable();
    denominator.sort_unstable();
    let (num, den) = cancel_common(numerator, denominator);
    if m <= KERNEL_EXACT_LIMIT {
        let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::from(1), |a, x| a * BigInt::from(x)) };
        let mut top = BigInt::from(2).pow(n as u32);
        for k in &num {
            top *= fact(*k);
        }
        let mut bottom = BigInt::from(1);
        for k in &den {
            bottom *= fact(*k);
        }
        return Ok(BigRational::new(top, bottom).to_f64().unwrap_or(f64::INFINITY));
    }
    let log_fact = |k: usize| ln_gamma_real(k as f64 + 1.0);
    let log_k = n as f64 * std::f64::consts::LN_2 + num.iter().map(|k| log_fact(*k)).sum::<f64>()
        - den.iter().map(|k| log_fact(*k)).sum::<f64>();
    Ok(log_k.exp())
}

fn cancel_common(mut num: Vec<usize>, mut den: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut k = 0;
    while k < num.len() {
        if let Some(pos) = den.iter().position(|d| *d == num[k]) {
            den.swap_remove(pos);
            num.swap_remove(k);
        } else {
            k += 1;
        }
    }
    (num, den)
}

/// Generalized Poisson kernel `2^n b^{n−i} (1−b)^i`.
pub fn poisson_kernel(p: LatticePoint, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&b) {
        return Err(domain("poisson_kernel", format!("b = {b} outside [0, 1]")));
    }
    Ok(2f64.powi(p.n as i32) * b.powi((p.n - p.i) as i32) * (1.0 - b).powi(p.i as i32))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelLimitStep {
    pub m: usize,
    pub j: usize,
    pub kernel: f64,
    /// `|K − P| / P`, or `|K − P|` when `P = 0`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelLimitRecord {
    pub poisson: f64,
    pub steps: Vec<KernelLimitStep>,
    /// Deviations never increase along the sequence.
    pub decreasing: bool,
}

impl KernelLimitRecord {
    pub fn final_deviation(&self) -> f64 {
        self.steps.last().map_or(f64::NAN, |s| s.deviation)
    }
}

/// Follows `K(p, (m_k, j_k))` along `j_k = round((1 − b) m_k)` with `m_k`
/// doubling from 16 up to `m_max`, comparing against the Poisson kernel.
pub fn kernel_limit_check(p: LatticePoint, b: f64, m_max: usize) -> Result<KernelLimitRecord> {
    if !(b > 0.0 && b < 1.0) {
        return Err(domain("kernel_limit_check", format!("b = {b} must lie in (0, 1)")));
    }
    let poisson = poisson_kernel(p, b)?;
    let mut sizes = Vec::new();
    let mut m = 16usize.max(p.n + 1);
    while m < m_max {
        sizes.push(m);
        m *= 2;
    }
    sizes.push(m_max.max(p.n));
    let mut steps = Vec::new();
    for m in sizes {
        let j = ((1.0 - b) * m as f64).round() as usize;
        let Ok(to) = LatticePoint::new(m, j) else { continue };
        let kernel = match markov_kernel(p, to) {
            Ok(k) => k,
            Err(Error::Domain { .. }) => continue,
            Err(e) => return Err(e),
        };
        let deviation = if poisson != 0.0 {
            (kernel - poisson).abs() / poisson
        } else {
            (kernel - poisson).abs()
        };
        steps.push(KernelLimitStep { m, j, kernel, deviation });
    }
    let decreasing = steps.windows(2).all(|w| w[1].deviation <= w[0].deviation);
    Ok(KernelLimitRecord {
        poisson,
        steps,
        decreasing,
    })
}

/// `E_{(0,0)} = 2^{−n} Σ_i |u(n, i)| binom(n, i)` over a full row `u(n, 0..=n)`.
pub fn expectation(row: &[f64]) -> f64 {
    if row.is_empty() {
        return 0.0;
    }
    let n = row.len() - 1;
    // binom(n,i) 2^{-n} computed multiplicatively to stay in range.
    let mut weight = 0.5f64.powi(n as i32);
    let mut terms = Vec::with_capacity(row.len());
    for (i, u) in row.iter().enumerate() {
        terms.push(u.abs() * weight);
        weight = weight * (n - i) as f64 / (i + 1) as f64;
    }
    compensated_sum(terms)
}

/// Moments `f_n = ∫₀¹ x^n u(x) dx`, `n = 0..=N`.
pub fn moments_from_density<F>(u: F, last_index: usize, quad: &DoubleExponential) -> Result<RealSequence>
where
    F: Fn(f64) -> f64,
{
    let mut values = Vec::with_capacity(last_index + 1);
    for n in 0..=last_index {
        let r = quad.integrate(|x: f64| x.powi(n as i32) * u(x), Interval::Finite(0.0, 1.0))?;
        values.push(r.value);
    }
    RealSequence::new(values)
}
