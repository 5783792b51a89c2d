//! Exact rational helpers.
//!
//! Everything certified in this crate is a `BigRational` or a pair of them.
//! Long truncated products and tail sums are accumulated in fixed-point with
//! denominator 2^[`SCALE_BITS`], rounding the lower endpoint down and the
//! upper endpoint up, so enclosures stay valid while numbers stay small.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Fractional bits kept by the rounding accumulators. The rounding error of a
/// full 10^5-step product is below 10^-52, invisible next to any tail bound.
pub const SCALE_BITS: u32 = 192;

pub fn rat_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_u64(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as "p/q" with q >= 1, the reduced form produced by `BigRational`.
pub fn format_ratio(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Largest multiple of 2^-bits that is <= x.
pub fn floor_to_bits(x: &Rat, bits: u32) -> Rat {
    let scaled = (x.numer() << bits).div_floor(x.denom());
    Rat::new(scaled, BigInt::one() << bits)
}

/// Smallest multiple of 2^-bits that is >= x.
pub fn ceil_to_bits(x: &Rat, bits: u32) -> Rat {
    let scaled = (x.numer() << bits).div_ceil(x.denom());
    Rat::new(scaled, BigInt::one() << bits)
}

/// Lower bound on exp(x) for x >= 0: a partial Taylor sum.
pub fn exp_lower(x: &Rat, terms: u32) -> Rat {
    assert!(!x.is_negative());
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for i in 1..=terms {
        term = term * x / Rat::from(BigInt::from(i));
        sum += term.clone();
    }
    sum
}

/// Upper bound on exp(x) for 0 <= x < terms: partial Taylor sum plus the
/// geometric majorant x^M/M! * M/(M-x) of the dropped tail.
pub fn exp_upper(x: &Rat, terms: u32) -> Rat {
    assert!(!x.is_negative());
    let m = Rat::from(BigInt::from(terms));
    assert!(x < &m, "exp_upper needs x < terms");
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for i in 1..=terms {
        term = term * x / Rat::from(BigInt::from(i));
        sum += term.clone();
    }
    // term now holds x^M/M!
    sum + term * m.clone() / (m - x)
}

/// log2 of a positive big integer, as a plain double (report use only).
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// Certified bounds for a product of factors n_i/d_i in [0, 1], accumulated in
/// fixed point. Returns (lower, upper) with lower <= prod <= upper.
pub fn product_enclosure<I>(factors: I) -> (Rat, Rat)
where
    I: IntoIterator<Item = (u64, u64)>,
{
    let scale = BigUint::one() << SCALE_BITS;
    let mut lo = scale.clone();
    let mut hi = scale.clone();
    for (n, d) in factors {
        debug_assert!(n <= d && d > 0);
        lo = lo * n / d;
        hi = (hi * n + (d - 1)) / d;
    }
    (
        Rat::new(lo.into(), BigInt::from(scale.clone())),
        Rat::new(hi.into(), BigInt::from(scale)),
    )
}

/// Certified upper bound for sum(1/b) over the given b, accumulated in fixed
/// point with each term rounded up.
pub fn reciprocal_sum_upper<I>(values: I) -> Rat
where
    I: IntoIterator<Item = u64>,
{
    let scale = BigUint::one() << SCALE_BITS;
    let mut sum = BigUint::zero();
    for b in values {
        debug_assert!(b > 0);
        sum += (&scale + BigUint::from(b - 1)) / BigUint::from(b);
    }
    Rat::new(sum.into(), BigInt::from(scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        let r = rat_i64(-34, 225);
        assert_eq!(format_ratio(&r), "-34/225");
        assert_eq!(parse_ratio("-34/225").unwrap(), r);
        assert_eq!(parse_ratio("7").unwrap(), rat_i64(7, 1));
        assert!(parse_ratio("1/0").is_none());
    }

    #[test]
    fn rounding_brackets_value() {
        let x = rat_i64(1, 3);
        let lo = floor_to_bits(&x, 16);
        let hi = ceil_to_bits(&x, 16);
        assert!(lo <= x && x <= hi);
        assert!(hi - lo <= rat_i64(1, 65536));
        assert_eq!(floor_to_bits(&rat_i64(1, 2), 8), rat_i64(1, 2));
    }

    #[test]
    fn exp_bounds_bracket() {
        let x = rat_i64(5, 2);
        let lo = exp_lower(&x, 30);
        let hi = exp_upper(&x, 30);
        assert!(lo < hi);
        let e25 = 12.182_493_960_703_473;
        assert!(to_f64(&lo) <= e25 && e25 <= to_f64(&hi));
        assert!(to_f64(&(hi - lo)) < 1e-10);
    }

    #[test]
    fn product_enclosure_brackets_exact() {
        let factors = vec![(3u64, 4u64), (8, 9), (24, 25)];
        let (lo, hi) = product_enclosure(factors);
        let exact = rat_i64(16, 25);
        assert!(lo <= exact && exact <= hi);
        assert!(to_f64(&(hi - lo)) < 1e-50);
    }

    #[test]
    fn reciprocal_sum_is_upper_bound() {
        let bound = reciprocal_sum_upper(vec![4u64, 9, 25]);
        let exact = rat_i64(1, 4) + rat_i64(1, 9) + rat_i64(1, 25);
        assert!(bound >= exact);
        assert!(to_f64(&(bound - exact)) < 1e-50);
    }
}
