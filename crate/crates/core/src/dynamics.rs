//! The rotation behind the indicator sequence, and its frequency theorems
//! made empirical.
//!
//! A point of the group prod_k Z/b_k Z (truncated to finitely many
//! coordinates) codes to a binary sequence: position n reads 0 when some
//! coordinate satisfies omega_k + n = 0 mod b_k. The all-zeros point codes
//! to eta itself, and coding intertwines the +1 rotation with the shift.
//!
//! The scan operations compare empirical pattern frequencies of eta against
//! the cylinder measure: over prefixes [0, N), over short intervals
//! [N, N + sqrt(N)), and along arithmetic subsequences n p^s + r averaged
//! over r modulo p^m, where p^m is the exact power of p dividing the unique
//! family member p divides (m = 0 if none). Coordinate recovery inverts the
//! coding on a finite window: coordinate k is identified by the residue
//! classes modulo b_k along which the window vanishes identically — the true
//! coordinate always survives, and recovery succeeds when it is the only one.

use num::integer::Roots;
use rand::Rng;
use thiserror::Error;

use crate::bits::BitVec;
use crate::family::BFamily;
use crate::measure::{nu_cylinder, IntervalValue, MeasureError, Pattern};
use crate::primes::is_prime;
use crate::rat::{rat_u64, Rat};
use crate::sieve::{sieve_eta, SieveError};
use crate::Budgets;

/// Reference enclosures truncate the family at the moduli below this limit.
pub const REFERENCE_MODULUS_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("window of length {0} is too short; need at least {1}")]
    WindowTooShort(usize, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("arithmetic overflow computing the scan range")]
    Overflow,
    #[error("truncation index {0} exceeds the {1} enumerated moduli")]
    BadTruncation(usize, usize),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
}

/// A point of the rotation group, truncated to the first `depth` coordinates;
/// coordinate k lives in Z/b_k Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPoint {
    moduli: Vec<u64>,
    coords: Vec<u64>,
}

impl GroupPoint {
    /// The base point (0, 0, ...), which codes to eta.
    pub fn base(family: &BFamily, depth: usize) -> Result<Self, DynamicsError> {
        let moduli = prefix(family, depth)?;
        let coords = vec![0; moduli.len()];
        Ok(GroupPoint { moduli, coords })
    }

    pub fn new(family: &BFamily, coords: Vec<u64>) -> Result<Self, DynamicsError> {
        let moduli = prefix(family, coords.len())?;
        for (k, (&c, &b)) in coords.iter().zip(&moduli).enumerate() {
            if c >= b {
                return Err(DynamicsError::InvalidParameter(format!(
                    "coordinate {k} is {c}, must be below {b}"
                )));
            }
        }
        Ok(GroupPoint { moduli, coords })
    }

    /// Haar-distributed truncation: coordinates independently uniform.
    pub fn random<R: Rng + ?Sized>(
        family: &BFamily,
        depth: usize,
        rng: &mut R,
    ) -> Result<Self, DynamicsError> {
        let moduli = prefix(family, depth)?;
        let coords = moduli.iter().map(|&b| rng.gen_range(0..b)).collect();
        Ok(GroupPoint { moduli, coords })
    }

    pub fn depth(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// steps applications of the +1 rotation.
    pub fn advance(&self, steps: u64) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &b)| ((c as u128 + steps as u128) % b as u128) as u64)
            .collect();
        GroupPoint { moduli: self.moduli.clone(), coords }
    }
}

fn prefix(family: &BFamily, depth: usize) -> Result<Vec<u64>, DynamicsError> {
    if depth > family.enumerated_len() {
        return Err(DynamicsError::BadTruncation(depth, family.enumerated_len()));
    }
    Ok(family.enumerated()[..depth].to_vec())
}

/// The coded word x_1..x_len of the point: x_n = 0 iff omega_k + n = 0 mod
/// b_k for some k <= depth. Bit i holds x_{i+1}.
pub fn phi_window(point: &GroupPoint, len: usize) -> BitVec {
    let mut bits = BitVec::filled(len, true);
    for (&c, &b) in point.coords.iter().zip(&point.moduli) {
        // zeros at n with n = -c mod b, n >= 1
        let mut n = (b - c % b) % b;
        if n == 0 {
            n = b;
        }
        let mut i = n as usize;
        while i <= len {
            bits.set(i - 1, false);
            i += b as usize;
        }
    }
    bits
}

/// An empirical frequency next to its certified reference.
#[derive(Debug, Clone)]
pub struct FrequencyReport {
    pub pattern: String,
    /// Human-readable description of the averaging window.
    pub scope: String,
    /// Denominator of the average.
    pub samples: u64,
    pub matches: u64,
    pub empirical: Rat,
    pub reference: IntervalValue,
    /// Distance from the empirical value to the reference enclosure.
    pub gap: Rat,
}

/// The measure-side reference for a pattern, truncated at the moduli below
/// [`REFERENCE_MODULUS_LIMIT`] (exact for finite families).
pub fn reference_interval(
    family: &BFamily,
    pattern: &Pattern,
    budgets: &Budgets,
) -> Result<IntervalValue, MeasureError> {
    let k = family.index_upper_bound(REFERENCE_MODULUS_LIMIT);
    nu_cylinder(pattern, family, k, budgets)
}

fn report(
    family: &BFamily,
    pattern: &Pattern,
    scope: String,
    matches: u64,
    samples: u64,
    budgets: &Budgets,
) -> Result<FrequencyReport, DynamicsError> {
    let reference = reference_interval(family, pattern, budgets)?;
    let empirical = rat_u64(matches, samples);
    let gap = reference.distance_to(&empirical);
    Ok(FrequencyReport {
        pattern: pattern.to_string(),
        scope,
        samples,
        matches,
        empirical,
        reference,
        gap,
    })
}

/// Frequency of the pattern over window starts 0..N-1 of eta.
pub fn empirical_frequency(
    family: &BFamily,
    pattern: &Pattern,
    n: u64,
    budgets: &Budgets,
) -> Result<FrequencyReport, DynamicsError> {
    let width = pattern.width() as u64;
    if n < 1 {
        return Err(DynamicsError::InvalidParameter("N must be >= 1".into()));
    }
    let hi = n.checked_add(width).ok_or(DynamicsError::Overflow)?;
    let seg = sieve_eta(family, 1, hi)?;
    let mut matches = 0u64;
    for start in 0..n {
        if pattern.matches_bits(seg.eta(), start as usize) {
            matches += 1;
        }
    }
    report(family, pattern, format!("prefix N={n}"), matches, n, budgets)
}

/// Frequency of the pattern over window starts in [N, N + floor(sqrt(N))).
pub fn short_interval_frequency(
    family: &BFamily,
    pattern: &Pattern,
    n: u64,
    budgets: &Budgets,
) -> Result<FrequencyReport, DynamicsError> {
    if n < 4 {
        return Err(DynamicsError::InvalidParameter("N must be >= 4".into()));
    }
    let width = pattern.width() as u64;
    let w = n.sqrt();
    let lo = n + 1;
    let hi = n.checked_add(w).and_then(|v| v.checked_add(width)).ok_or(DynamicsError::Overflow)?;
    let seg = sieve_eta(family, lo, hi)?;
    let mut matches = 0u64;
    for idx in 0..w {
        if pattern.matches_bits(seg.eta(), idx as usize) {
            matches += 1;
        }
    }
    report(family, pattern, format!("short [{n}, {n}+{w})"), matches, w, budgets)
}

/// Report of max |family members in [x, x + floor(sqrt(x))]| over a sample of
/// starting points: a deterministic grid plus every member in range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub max_count: u64,
    /// A starting point attaining the maximum.
    pub argmax: u64,
    pub samples: usize,
}

pub fn short_interval_hypothesis_check(
    family: &BFamily,
    x_lo: u64,
    x_hi: u64,
) -> Result<HypothesisReport, DynamicsError> {
    if x_lo < 1 || x_lo > x_hi {
        return Err(DynamicsError::InvalidParameter("need 1 <= x_lo <= x_hi".into()));
    }
    let reach = x_hi.checked_add(x_hi.sqrt()).ok_or(DynamicsError::Overflow)?;
    let members = family.enumerate_moduli(reach);
    let mut xs: Vec<u64> = vec![x_lo, x_hi];
    let step = ((x_hi - x_lo) / 1000).max(1);
    let mut x = x_lo;
    while x <= x_hi {
        xs.push(x);
        x = match x.checked_add(step) {
            Some(v) => v,
            None => break,
        };
    }
    xs.extend(members.iter().copied().filter(|&b| b >= x_lo && b <= x_hi));
    xs.sort_unstable();
    xs.dedup();
    let mut best = (0u64, x_lo);
    for &x in &xs {
        let end = x + x.sqrt();
        let lo_idx = members.partition_point(|&b| b < x);
        let hi_idx = members.partition_point(|&b| b <= end);
        let count = (hi_idx - lo_idx) as u64;
        if count > best.0 {
            best = (count, x);
        }
    }
    Ok(HypothesisReport { max_count: best.0, argmax: best.1, samples: xs.len() })
}

/// Does the family satisfy the short-interval hypothesis by construction?
/// Finite families do trivially (no members beyond the largest), and prime
/// power families do because [x^(1/r), (x+sqrt x)^(1/r)] shrinks.
pub fn hypothesis_holds_structurally(family: &BFamily) -> bool {
    family.is_finite() || family.is_prime_power_family()
}

/// The averaging exponent m for the prime p: the power of p in the unique
/// family member divisible by p, or 0 when there is none.
pub fn arithmetic_modulus_exponent(family: &BFamily, p: u64) -> Result<u32, DynamicsError> {
    if !is_prime(p) {
        return Err(DynamicsError::NotPrime(p));
    }
    Ok(family.prime_power_in_family(p))
}

/// Average pattern frequency along n p^s + r over n < N, averaged over
/// r mod p^m. Returns the report and m.
pub fn arithmetic_average(
    family: &BFamily,
    pattern: &Pattern,
    p: u64,
    s: u32,
    n: u64,
    budgets: &Budgets,
) -> Result<(FrequencyReport, u32), DynamicsError> {
    if n < 1 {
        return Err(DynamicsError::InvalidParameter("N must be >= 1".into()));
    }
    let m = arithmetic_modulus_exponent(family, p)?;
    let pm = p.checked_pow(m).ok_or(DynamicsError::Overflow)?;
    let ps = p.checked_pow(s).ok_or(DynamicsError::Overflow)?;
    let width = pattern.width() as u64;
    let max_offset = (n - 1)
        .checked_mul(ps)
        .and_then(|v| v.checked_add(pm - 1))
        .ok_or(DynamicsError::Overflow)?;
    let hi = max_offset.checked_add(width + 1).ok_or(DynamicsError::Overflow)?;
    let seg = sieve_eta(family, 1, hi)?;
    let mut matches = 0u64;
    for r in 0..pm {
        for i in 0..n {
            let offset = i * ps + r;
            if pattern.matches_bits(seg.eta(), offset as usize) {
                matches += 1;
            }
        }
    }
    let samples = pm.checked_mul(n).ok_or(DynamicsError::Overflow)?;
    let rep = report(
        family,
        pattern,
        format!("arith p={p} s={s} m={m} N={n}"),
        matches,
        samples,
        budgets,
    )?;
    Ok((rep, m))
}

/// For each k < depth, the residue classes z mod b_k along which the window
/// (bit i = value at position i+1) vanishes identically. The class of the
/// generating coordinate always survives; recovery succeeds for k when the
/// set is a singleton.
pub fn recover_coordinates(
    window: &BitVec,
    family: &BFamily,
    depth: usize,
) -> Result<Vec<Vec<u64>>, DynamicsError> {
    let moduli = prefix(family, depth)?;
    let w = window.len();
    if let Some(&b_last) = moduli.last() {
        if (w as u64) < 2 * b_last {
            return Err(DynamicsError::WindowTooShort(w, 2 * b_last));
        }
    }
    let mut out = Vec::with_capacity(moduli.len());
    for &b in &moduli {
        let mut candidates = Vec::new();
        'z: for z in 0..b {
            // positions n >= 1 with z + n = 0 mod b
            let mut n = (b - z) % b;
            if n == 0 {
                n = b;
            }
            let mut i = n as usize;
            while i <= w {
                if window.get(i - 1) {
                    continue 'z;
                }
                i += b as usize;
            }
            candidates.push(z);
        }
        out.push(candidates);
    }
    Ok(out)
}
