//! Families B = {b_1 < b_2 < ...} of pairwise coprime integers >= 2.
//!
//! Four kinds are supported:
//!
//! - `explicit`: a finite list of moduli.
//! - `r-free`: the infinite family {p^r : p prime}, enumerated up to a
//!   declared prime limit and carrying the analytic tail bound
//!   sum(p > x) p^-r <= x^(1-r)/(r-1).
//! - `rooted-explicit`: a finite list of coprime roots a_k, moduli a_k^2.
//! - `rooted-primes`: roots are the primes in [prime_lo, prime_hi], or all
//!   primes >= prime_lo when no upper bound is given (the Moebius case when
//!   prime_lo = 2; then Sigma = sum 1/a_k diverges).
//!
//! Infinite families are a finite enumerated prefix plus a certified analytic
//! tail; finite families have exact tails. Validation rejects non-coprime
//! input rather than repairing it.

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::primes_up_to;
use crate::rat::{rat_u64, reciprocal_sum_upper, Rat};

/// Enumeration horizon for `rooted-primes` families with no upper bound.
pub const DEFAULT_PRIME_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FamilySpec {
    /// Finite list of pairwise coprime moduli >= 2.
    #[serde(rename = "explicit")]
    Explicit { moduli: Vec<u64> },
    /// {p^r : p prime}, enumerated for p <= prime_limit.
    #[serde(rename = "r-free")]
    RFree { r: u32, prime_limit: u64 },
    /// Finite list of pairwise coprime roots >= 2; moduli are their squares.
    #[serde(rename = "rooted-explicit")]
    RootedExplicit { roots: Vec<u64> },
    /// Roots are primes in [prime_lo, prime_hi]; with prime_hi absent, all
    /// primes >= prime_lo (enumerated up to prime_limit).
    #[serde(rename = "rooted-primes")]
    RootedPrimes {
        #[serde(default = "default_prime_lo")]
        prime_lo: u64,
        #[serde(default)]
        prime_hi: Option<u64>,
        #[serde(default = "default_prime_limit")]
        prime_limit: u64,
    },
}

fn default_prime_lo() -> u64 {
    2
}

fn default_prime_limit() -> u64 {
    DEFAULT_PRIME_LIMIT
}

impl FamilySpec {
    pub fn from_json(s: &str) -> Result<Self, FamilyError> {
        serde_json::from_str(s).map_err(|e| FamilyError::Spec(e.to_string()))
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self, FamilyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FamilyError::Spec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family is empty")]
    EmptyFamily,
    #[error("modulus {0} is too small; moduli and roots must be >= 2")]
    ModulusTooSmall(u64),
    #[error("family members {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("modulus {0}^{1} overflows u64")]
    Overflow(u64, u32),
    #[error("no certified tail bound available for this family")]
    NoTailBoundAvailable,
    #[error("family spec: {0}")]
    Spec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extent {
    Finite,
    /// Family continues as {p^r : p prime >= min_prime} past the enumerated
    /// prefix, which covers all primes <= enumerated_to.
    PrimePowers { r: u32, min_prime: u64, enumerated_to: u64 },
}

/// A validated family: the ascending moduli (all of them when finite, a
/// certified prefix otherwise), optional roots with b_k = a_k^2, and tail
/// bounds for the reciprocal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFamily {
    moduli: Vec<u64>,
    roots: Option<Vec<u64>>,
    extent: Extent,
    desc: String,
}

pub fn validate_family(spec: &FamilySpec) -> Result<BFamily, FamilyError> {
    match spec {
        FamilySpec::Explicit { moduli } => {
            let moduli = checked_coprime_list(moduli)?;
            let desc = format!(
                "explicit:{}",
                moduli.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
            );
            Ok(BFamily { moduli, roots: None, extent: Extent::Finite, desc })
        }
        FamilySpec::RFree { r, prime_limit } => {
            if *r < 2 {
                return Err(FamilyError::InvalidParameter(format!(
                    "r-free needs r >= 2, got {r}"
                )));
            }
            let primes = primes_up_to(*prime_limit);
            if primes.is_empty() {
                return Err(FamilyError::EmptyFamily);
            }
            let mut moduli = Vec::with_capacity(primes.len());
            for &p in &primes {
                moduli.push(
                    p.checked_pow(*r).ok_or(FamilyError::Overflow(p, *r))?,
                );
            }
            let roots = if r % 2 == 0 {
                Some(primes.iter().map(|p| p.pow(r / 2)).collect())
            } else {
                None
            };
            Ok(BFamily {
                moduli,
                roots,
                extent: Extent::PrimePowers { r: *r, min_prime: 2, enumerated_to: *prime_limit },
                desc: format!("r-free:r={r},prime_limit={prime_limit}"),
            })
        }
        FamilySpec::RootedExplicit { roots } => {
            let roots = checked_coprime_list(roots)?;
            let mut moduli = Vec::with_capacity(roots.len());
            for &a in &roots {
                moduli.push(a.checked_mul(a).ok_or(FamilyError::Overflow(a, 2))?);
            }
            let desc = format!(
                "rooted-explicit:{}",
                roots.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            );
            Ok(BFamily { moduli, roots: Some(roots), extent: Extent::Finite, desc })
        }
        FamilySpec::RootedPrimes { prime_lo, prime_hi, prime_limit } => {
            if *prime_lo < 2 {
                return Err(FamilyError::ModulusTooSmall(*prime_lo));
            }
            let (horizon, extent, desc) = match prime_hi {
                Some(hi) => {
                    if hi < prime_lo {
                        return Err(FamilyError::InvalidParameter(format!(
                            "rooted-primes range [{prime_lo}, {hi}] is empty"
                        )));
                    }
                    (*hi, Extent::Finite, format!("rooted-primes:{prime_lo}..{hi}"))
                }
                None => (
                    *prime_limit,
                    Extent::PrimePowers { r: 2, min_prime: *prime_lo, enumerated_to: *prime_limit },
                    format!("rooted-primes:{prime_lo}..,enumerated_to={prime_limit}"),
                ),
            };
            let roots: Vec<u64> = primes_up_to(horizon)
                .into_iter()
                .filter(|p| p >= prime_lo)
                .collect();
            if roots.is_empty() && extent == Extent::Finite {
                return Err(FamilyError::EmptyFamily);
            }
            let mut moduli = Vec::with_capacity(roots.len());
            for &a in &roots {
                moduli.push(a.checked_mul(a).ok_or(FamilyError::Overflow(a, 2))?);
            }
            Ok(BFamily { moduli, roots: Some(roots), extent, desc })
        }
    }
}

/// Sorts, then rejects anything < 2 and any non-coprime pair.
fn checked_coprime_list(values: &[u64]) -> Result<Vec<u64>, FamilyError> {
    if values.is_empty() {
        return Err(FamilyError::EmptyFamily);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    for &v in &sorted {
        if v < 2 {
            return Err(FamilyError::ModulusTooSmall(v));
        }
    }
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[i].gcd(&sorted[j]) != 1 {
                return Err(FamilyError::NotCoprime(sorted[i], sorted[j]));
            }
        }
    }
    Ok(sorted)
}

impl BFamily {
    pub fn is_finite(&self) -> bool {
        self.extent == Extent::Finite
    }

    pub fn is_rooted(&self) -> bool {
        self.roots.is_some()
    }

    /// True for the parametric {p^r} kinds (r-free, rooted-primes).
    pub fn is_prime_power_family(&self) -> bool {
        matches!(self.extent, Extent::PrimePowers { .. })
    }

    /// The enumerated ascending prefix (the whole family when finite).
    pub fn enumerated(&self) -> &[u64] {
        &self.moduli
    }

    pub fn enumerated_len(&self) -> usize {
        self.moduli.len()
    }

    /// The k-th modulus, 0-based within the enumerated prefix.
    pub fn modulus(&self, k: usize) -> Option<u64> {
        self.moduli.get(k).copied()
    }

    /// Roots a_k (b_k = a_k^2) when the family is rooted.
    pub fn roots(&self) -> Option<&[u64]> {
        self.roots.as_deref()
    }

    /// A stable, human-readable identity string (used for digests).
    pub fn canonical_description(&self) -> &str {
        &self.desc
    }

    /// All moduli <= limit, ascending. For parametric families this regenerates
    /// past the stored prefix when needed, so it is complete for any limit.
    pub fn enumerate_moduli(&self, limit: u64) -> Vec<u64> {
        match self.extent {
            Extent::Finite => {
                let end = self.moduli.partition_point(|&b| b <= limit);
                self.moduli[..end].to_vec()
            }
            Extent::PrimePowers { r, min_prime, enumerated_to } => {
                let proot = nth_root_floor(limit, r);
                if proot <= enumerated_to {
                    let end = self.moduli.partition_point(|&b| b <= limit);
                    self.moduli[..end].to_vec()
                } else {
                    primes_up_to(proot)
                        .into_iter()
                        .filter(|&p| p >= min_prime)
                        .map(|p| p.pow(r))
                        .collect()
                }
            }
        }
    }

    /// All roots a_k <= limit, ascending; None for non-rooted families.
    pub fn enumerate_roots(&self, limit: u64) -> Option<Vec<u64>> {
        let roots = self.roots.as_ref()?;
        match self.extent {
            Extent::Finite => {
                let end = roots.partition_point(|&a| a <= limit);
                Some(roots[..end].to_vec())
            }
            Extent::PrimePowers { r, min_prime, enumerated_to } => {
                let root_pow = r / 2;
                let proot = nth_root_floor(limit, root_pow);
                if proot <= enumerated_to {
                    let end = roots.partition_point(|&a| a <= limit);
                    Some(roots[..end].to_vec())
                } else {
                    Some(
                        primes_up_to(proot)
                            .into_iter()
                            .filter(|&p| p >= min_prime)
                            .map(|p| p.pow(root_pow))
                            .collect(),
                    )
                }
            }
        }
    }

    /// Number of enumerated moduli <= limit.
    pub fn index_upper_bound(&self, limit: u64) -> usize {
        self.moduli.partition_point(|&b| b <= limit)
    }

    /// Certified upper bound on sum(k > K) 1/b_k, with K clamped to the
    /// enumerated prefix. Exact for finite families (0 past the end);
    /// enumerated terms plus the analytic prime tail otherwise. Monotone
    /// non-increasing in K.
    pub fn tail_sum_bound(&self, k: usize) -> Result<Rat, FamilyError> {
        let start = k.min(self.moduli.len());
        match self.extent {
            Extent::Finite => {
                let mut sum = Rat::zero();
                for &b in &self.moduli[start..] {
                    sum += rat_u64(1, b);
                }
                Ok(sum)
            }
            Extent::PrimePowers { r, enumerated_to, .. } => {
                let partial = reciprocal_sum_upper(self.moduli[start..].iter().copied());
                Ok(partial + analytic_prime_tail(enumerated_to, r))
            }
        }
    }

    /// Certified upper bound on sum(k > K) 1/a_k for rooted families; None
    /// when the sum diverges (all primes with r = 2) or the family is unrooted.
    pub fn tail_root_sum_bound(&self, k: usize) -> Option<Rat> {
        let roots = self.roots.as_ref()?;
        let start = k.min(roots.len());
        match self.extent {
            Extent::Finite => {
                let mut sum = Rat::zero();
                for &a in &roots[start..] {
                    sum += rat_u64(1, a);
                }
                Some(sum)
            }
            Extent::PrimePowers { r, enumerated_to, .. } => {
                let root_pow = r / 2;
                if root_pow < 2 {
                    return None; // sum 1/p diverges
                }
                let partial = reciprocal_sum_upper(roots[start..].iter().copied());
                Some(partial + analytic_prime_tail(enumerated_to, root_pow))
            }
        }
    }

    /// Enclosure of Sigma = sum 1/a_k for rooted families; None when either
    /// the family is unrooted or Sigma diverges. Exact (lo = hi) when finite.
    pub fn sigma_enclosure(&self) -> Option<(Rat, Rat)> {
        let roots = self.roots.as_ref()?;
        match self.extent {
            Extent::Finite => {
                let mut sum = Rat::zero();
                for &a in roots {
                    sum += rat_u64(1, a);
                }
                Some((sum.clone(), sum))
            }
            Extent::PrimePowers { r, enumerated_to, .. } => {
                let root_pow = r / 2;
                if root_pow < 2 {
                    return None;
                }
                let mut lo = Rat::zero();
                for &a in roots {
                    lo += rat_u64(1, a);
                }
                let hi = lo.clone() + analytic_prime_tail(enumerated_to, root_pow);
                Some((lo, hi))
            }
        }
    }

    /// prod(b_k) for finite families, saturating at u64::MAX on overflow.
    pub fn finite_period(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        let mut p = 1u64;
        for &b in &self.moduli {
            p = p.saturating_mul(b);
        }
        Some(p)
    }

    /// prod(a_k) for finite rooted families, saturating on overflow.
    pub fn finite_root_period(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        let mut p = 1u64;
        for &a in self.roots.as_ref()? {
            p = p.saturating_mul(a);
        }
        Some(p)
    }

    /// Largest power of the prime p dividing any family member, or 0 when no
    /// member is divisible by p (at most one can be, by coprimality).
    pub fn prime_power_in_family(&self, p: u64) -> u32 {
        match self.extent {
            Extent::PrimePowers { r, min_prime, .. } => {
                if p >= min_prime {
                    r
                } else {
                    0
                }
            }
            Extent::Finite => {
                for &b in &self.moduli {
                    if b % p == 0 {
                        let mut m = 0u32;
                        let mut rest = b;
                        while rest % p == 0 {
                            rest /= p;
                            m += 1;
                        }
                        return m;
                    }
                }
                0
            }
        }
    }
}

/// sum(p > x, p prime) p^-r <= sum(n > x) n^-r <= x^(1-r)/(r-1), as a rational.
fn analytic_prime_tail(x: u64, r: u32) -> Rat {
    debug_assert!(r >= 2 && x >= 1);
    let denom = BigInt::from(r - 1) * BigInt::from(x).pow(r - 1);
    Rat::new(BigInt::one(), denom)
}

/// floor(x^(1/n)) for n >= 1.
fn nth_root_floor(x: u64, n: u32) -> u64 {
    if n == 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / n as f64) as u64;
    while r.checked_pow(n).map_or(true, |v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(n).map_or(false, |v| v <= x) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i64, to_f64};

    fn explicit(moduli: &[u64]) -> BFamily {
        validate_family(&FamilySpec::Explicit { moduli: moduli.to_vec() }).unwrap()
    }

    #[test]
    fn validates_explicit() {
        let fam = explicit(&[25, 4, 9]);
        assert_eq!(fam.enumerated(), &[4, 9, 25]);
        assert!(fam.is_finite());
        assert!(!fam.is_rooted());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            validate_family(&FamilySpec::Explicit { moduli: vec![4, 6] }),
            Err(FamilyError::NotCoprime(4, 6))
        );
        assert_eq!(
            validate_family(&FamilySpec::Explicit { moduli: vec![] }),
            Err(FamilyError::EmptyFamily)
        );
        assert_eq!(
            validate_family(&FamilySpec::Explicit { moduli: vec![1, 5] }),
            Err(FamilyError::ModulusTooSmall(1))
        );
        assert_eq!(
            validate_family(&FamilySpec::Explicit { moduli: vec![9, 9] }),
            Err(FamilyError::NotCoprime(9, 9))
        );
    }

    #[test]
    fn rfree_generates_prime_powers() {
        let fam = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 10 }).unwrap();
        assert_eq!(fam.enumerated(), &[4, 9, 25, 49]);
        assert_eq!(fam.roots().unwrap(), &[2, 3, 5, 7]);
        assert!(!fam.is_finite());
        assert!(fam.is_rooted());
        let cube = validate_family(&FamilySpec::RFree { r: 3, prime_limit: 10 }).unwrap();
        assert_eq!(cube.enumerated(), &[8, 27, 125, 343]);
        assert!(!cube.is_rooted());
    }

    #[test]
    fn rooted_kinds() {
        let fam = validate_family(&FamilySpec::RootedExplicit { roots: vec![3, 2] }).unwrap();
        assert_eq!(fam.enumerated(), &[4, 9]);
        assert_eq!(fam.roots().unwrap(), &[2, 3]);

        let ranged = validate_family(&FamilySpec::RootedPrimes {
            prime_lo: 3,
            prime_hi: Some(12),
            prime_limit: DEFAULT_PRIME_LIMIT,
        })
        .unwrap();
        assert_eq!(ranged.roots().unwrap(), &[3, 5, 7, 11]);
        assert!(ranged.is_finite());
        let (lo, hi) = ranged.sigma_enclosure().unwrap();
        assert_eq!(lo, hi);
        assert_eq!(lo, rat_i64(1, 3) + rat_i64(1, 5) + rat_i64(1, 7) + rat_i64(1, 11));

        let moebius = validate_family(&FamilySpec::RootedPrimes {
            prime_lo: 2,
            prime_hi: None,
            prime_limit: 1000,
        })
        .unwrap();
        assert!(!moebius.is_finite());
        assert!(moebius.sigma_enclosure().is_none());
        assert!(moebius.tail_root_sum_bound(0).is_none());
    }

    #[test]
    fn enumerate_by_limit() {
        let sf = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 100 }).unwrap();
        assert_eq!(sf.enumerate_moduli(30), vec![4, 9, 25]);
        assert_eq!(sf.enumerate_moduli(1), Vec::<u64>::new());
        // past the stored prefix: regenerates
        let deep = sf.enumerate_moduli(102 * 102);
        assert_eq!(*deep.last().unwrap(), 101 * 101);
        assert_eq!(explicit(&[4, 9, 25]).enumerate_moduli(9), vec![4, 9]);
    }

    #[test]
    fn enumerate_is_prefix_monotone() {
        let sf = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 1000 }).unwrap();
        let small = sf.enumerate_moduli(500);
        let large = sf.enumerate_moduli(90_000);
        assert!(large.starts_with(&small));
    }

    #[test]
    fn tail_bounds_finite() {
        let fam = explicit(&[4, 9, 25]);
        assert_eq!(fam.tail_sum_bound(3).unwrap(), Rat::zero());
        assert_eq!(fam.tail_sum_bound(1).unwrap(), rat_i64(34, 225));
        // monotone non-increasing
        let mut prev = fam.tail_sum_bound(0).unwrap();
        for k in 1..=4 {
            let t = fam.tail_sum_bound(k).unwrap();
            assert!(t <= prev);
            prev = t;
        }
    }

    #[test]
    fn tail_bound_rfree_analytic() {
        let fam = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 1000 }).unwrap();
        let k = fam.enumerated_len();
        // all enumerated moduli consumed: only the analytic tail 1/1000 remains
        assert_eq!(fam.tail_sum_bound(k).unwrap(), rat_i64(1, 1000));
        // dominates the true tail over any window we can check directly
        let deep = fam.enumerate_moduli(3_000 * 3_000);
        let true_partial: Rat = deep[k..].iter().map(|&b| rat_u64(1, b)).sum();
        assert!(fam.tail_sum_bound(k).unwrap() >= true_partial);
    }

    #[test]
    fn coprimality_exhaustive_small() {
        let sf = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 200 }).unwrap();
        let ms = sf.enumerated();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                assert_eq!(ms[i].gcd(&ms[j]), 1);
            }
        }
    }

    #[test]
    fn prime_power_lookup() {
        let sf = validate_family(&FamilySpec::RFree { r: 2, prime_limit: 100 }).unwrap();
        assert_eq!(sf.prime_power_in_family(2), 2);
        assert_eq!(sf.prime_power_in_family(97), 2);
        let fam = explicit(&[9, 25]);
        assert_eq!(fam.prime_power_in_family(7), 0);
        assert_eq!(fam.prime_power_in_family(3), 2);
        assert_eq!(fam.prime_power_in_family(5), 2);
        let fam12 = explicit(&[12, 25]);
        assert_eq!(fam12.prime_power_in_family(2), 2);
        assert_eq!(fam12.prime_power_in_family(3), 1);
    }

    #[test]
    fn json_round_trip() {
        let spec = FamilySpec::from_json(r#"{"kind":"explicit","moduli":[4,9,25]}"#).unwrap();
        assert_eq!(spec, FamilySpec::Explicit { moduli: vec![4, 9, 25] });
        let spec = FamilySpec::from_json(r#"{"kind":"r-free","r":2,"prime_limit":1000000}"#).unwrap();
        assert!(matches!(spec, FamilySpec::RFree { r: 2, prime_limit: 1_000_000 }));
        let spec =
            FamilySpec::from_json(r#"{"kind":"rooted-primes","prime_lo":3,"prime_hi":1000}"#).unwrap();
        let fam = validate_family(&spec).unwrap();
        assert_eq!(fam.roots().unwrap().len(), 167);
        // floats are not exact integers: reject
        assert!(FamilySpec::from_json(r#"{"kind":"explicit","moduli":[4.5]}"#).is_err());
        assert!(FamilySpec::from_json(r#"{"kind":"explicit","modulus":[4]}"#).is_err());
    }

    #[test]
    fn nth_root_floor_edges() {
        assert_eq!(nth_root_floor(63, 2), 7);
        assert_eq!(nth_root_floor(64, 2), 8);
        assert_eq!(nth_root_floor(1, 5), 1);
        assert_eq!(nth_root_floor(u64::MAX, 2), (1u64 << 32) - 1);
        assert_eq!(nth_root_floor(27, 3), 3);
        assert_eq!(nth_root_floor(26, 3), 2);
    }

    #[test]
    fn sigma_enclosure_quartic_family() {
        // r = 4: roots are p^2, Sigma = sum 1/p^2 converges
        let fam = validate_family(&FamilySpec::RFree { r: 4, prime_limit: 1000 }).unwrap();
        let (lo, hi) = fam.sigma_enclosure().unwrap();
        assert!(lo < hi);
        // sum over all primes of 1/p^2 = 0.4522474200...
        assert!(to_f64(&lo) < 0.4522474201 && 0.45224 < to_f64(&hi));
    }
}
