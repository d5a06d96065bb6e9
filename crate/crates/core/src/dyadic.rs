//! Exact rational helpers. Everything is `BigRational`; dyadic rationals are
//! the ones whose reduced denominator is a power of two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Q {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Q::from_integer(mag)
    } else {
        Q::new(BigInt::one(), mag)
    }
}

fn power_of_two_exponent(n: &BigInt) -> Option<u64> {
    if !n.is_positive() {
        return None;
    }
    let tz = n.trailing_zeros()?;
    if (n >> tz) == BigInt::one() {
        Some(tz)
    } else {
        None
    }
}

/// The exponent `e` with `x = 2^e`, if `x` is a power of two.
pub fn log2_exact(x: &Q) -> Option<i64> {
    let num = power_of_two_exponent(x.numer())? as i64;
    let den = power_of_two_exponent(x.denom())? as i64;
    Some(num - den)
}

pub fn is_dyadic(x: &Q) -> bool {
    power_of_two_exponent(x.denom()).is_some()
}

pub fn require_dyadic(x: &Q) -> Result<()> {
    if is_dyadic(x) {
        Ok(())
    } else {
        Err(Error::NotDyadic(fmt_q(x)))
    }
}

/// Exponent `k` of the reduced denominator `2^k` of a dyadic rational.
pub fn dyadic_depth(x: &Q) -> Option<u64> {
    power_of_two_exponent(x.denom())
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("integer part fits in i64")
}

/// Largest `k` with `2^k <= x`, for `x > 0`.
pub fn floor_log2(x: &Q) -> i64 {
    debug_assert!(x.is_positive());
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let mut k = num_bits - den_bits;
    // numer/denom lies in (2^(k-1), 2^(k+1)); settle the boundary exactly.
    if *x < pow2(k) {
        k -= 1;
    }
    k
}

/// True when `x` is an integer multiple of `step`.
pub fn is_multiple_of(x: &Q, step: &Q) -> bool {
    (x / step).is_integer()
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("expected a rational p/q, found {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Q::new(n, d))
}

/// Largest standard dyadic interval `[x, x + 2^-j]` (`j >= 0`) that starts at
/// the dyadic point `x` and ends no later than `limit`. Returns `j`.
pub fn largest_aligned_step(x: &Q, limit: &Q) -> u64 {
    let mut j: u64 = match dyadic_depth(x) {
        Some(d) => d,
        None => unreachable!("largest_aligned_step requires a dyadic start"),
    };
    // Grow the interval while it stays aligned and inside the limit.
    while j > 0 {
        let bigger = pow2(-(j as i64 - 1));
        if is_multiple_of(x, &bigger) && &(x + &bigger) <= limit {
            j -= 1;
        } else {
            break;
        }
    }
    while &(x + pow2(-(j as i64))) > limit {
        j += 1;
    }
    j
}

/// Greedy decomposition of `[a, b]` (dyadic endpoints) into maximal standard
/// dyadic intervals, returned as the list of cut points `a = p0 < ... < pk = b`.
pub fn standard_decomposition(a: &Q, b: &Q) -> Vec<Q> {
    let mut cuts = vec![a.clone()];
    let mut x = a.clone();
    while &x < b {
        let j = largest_aligned_step(&x, b);
        x += pow2(-(j as i64));
        cuts.push(x.clone());
    }
    cuts
}

pub fn gcd_u(a: usize, b: usize) -> usize {
    a.gcd(&b)
}
