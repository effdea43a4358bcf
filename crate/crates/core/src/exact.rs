//! Exact rational helpers for the Hausdorff statistics.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Simplest rational (smallest denominator) that rounds to `x` as an `f64`.
///
/// Decimal data such as `0.3333333333333333` maps back to `1/3`. Falls back to
/// the exact dyadic value of `x` if no simpler rational round-trips.
pub fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(BigRational::zero());
    }
    let exact = BigRational::from_float(x)?;
    let magnitude = x.abs();
    let below = f64::from_bits(magnitude.to_bits() - 1);
    let above = f64::from_bits(magnitude.to_bits() + 1);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mid = exact.abs();
    let lo = if below > 0.0 {
        (BigRational::from_float(below)? + &mid) * &half
    } else {
        mid.clone() * &half
    };
    let hi = if above.is_finite() {
        (BigRational::from_float(above)? + &mid) * &half
    } else {
        mid.clone()
    };
    let mut candidate = simplest_between(&lo, &hi);
    if x < 0.0 {
        candidate = -candidate;
    }
    if candidate.to_f64() == Some(x) {
        Some(candidate)
    } else {
        Some(exact)
    }
}

/// Simplest rational in the closed interval `[lo, hi]`, `0 < lo ≤ hi`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let ceil = lo.ceil();
    if &ceil <= hi {
        return ceil;
    }
    let floor = lo.floor();
    let inner = simplest_between(&(hi - &floor).recip(), &(lo - &floor).recip());
    floor + inner.recip()
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| BigInt::from(binomial(n, k))).collect()
}
