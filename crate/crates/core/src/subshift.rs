//! Admissible-word counting and the entropy of the associated subshift.
//!
//! gamma(n) counts length-n binary words whose support omits a residue class
//! modulo every family member; only moduli <= n can constrain, which realizes
//! the truncation depth K(n) constructively. Two independent routes:
//!
//! - brute force over all 2^n words (the oracle, n capped);
//! - dynamic programming over positions whose state records, for each
//!   constraining modulus, the subset of residue classes the support has hit
//!   so far. A word survives iff every subset stays proper, so states where
//!   a subset fills up are pruned. The state key packs one b_k-bit mask per
//!   modulus; the space is 2^sum(b_k).
//!
//! For n a multiple of b_1...b_K the count is sandwiched:
//! 2^e <= gamma_K(n) <= 2^e * b_1...b_K with integer exponent
//! e = n * prod(1 - 1/b_k), and (1/n) log2 gamma(n) converges to the
//! topological entropy prod_k (1 - 1/b_k).

use std::collections::HashMap;

use num::bigint::BigUint;
use num::{One, Zero};
use thiserror::Error;

use crate::family::BFamily;
use crate::measure::{is_admissible_set, nu_one_cylinder, IntervalValue, MeasureError};
use crate::Budgets;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubshiftError {
    #[error("word length {0} exceeds the brute-force cap {1}")]
    LengthOverCap(u64, u32),
    #[error("dp state needs {0} mask bits, budget allows {1}")]
    StateBudgetExceeded(u64, u32),
    #[error("n = {0} is not a multiple of the truncated period {1}")]
    NotMultipleOfPeriod(u64, u64),
    #[error("truncation index {0} exceeds the {1} enumerated moduli")]
    BadTruncation(usize, usize),
}

/// An exact admissible-word count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCount {
    pub n: u64,
    /// Number of moduli that actually constrain (those <= n).
    pub k_effective: usize,
    pub count: BigUint,
}

/// gamma(n) by enumerating all 2^n words through the admissibility predicate.
pub fn count_words_bruteforce(
    n: u64,
    family: &BFamily,
    budgets: &Budgets,
) -> Result<WordCount, SubshiftError> {
    if n > budgets.brute_cap as u64 {
        return Err(SubshiftError::LengthOverCap(n, budgets.brute_cap));
    }
    let moduli = family.enumerate_moduli(n);
    let mut support = Vec::with_capacity(n as usize);
    let mut count = 0u64;
    for word in 0u64..(1u64 << n) {
        support.clear();
        for j in 0..n {
            if word >> j & 1 == 1 {
                support.push(j + 1);
            }
        }
        if is_admissible_set(&support, family) {
            count += 1;
        }
    }
    Ok(WordCount { n, k_effective: moduli.len(), count: BigUint::from(count) })
}

/// gamma(n): every modulus <= n constrains, none larger can.
pub fn count_words_dp(n: u64, family: &BFamily, budgets: &Budgets) -> Result<WordCount, SubshiftError> {
    let moduli = family.enumerate_moduli(n);
    dp_count(n, &moduli, budgets)
}

/// gamma_K(n): only the first K moduli constrain (those <= n effectively).
pub fn count_words_dp_prefix(
    n: u64,
    family: &BFamily,
    k: usize,
    budgets: &Budgets,
) -> Result<WordCount, SubshiftError> {
    if k > family.enumerated_len() {
        return Err(SubshiftError::BadTruncation(k, family.enumerated_len()));
    }
    let moduli: Vec<u64> = family.enumerated()[..k].iter().copied().filter(|&b| b <= n).collect();
    dp_count(n, &moduli, budgets)
}

fn dp_count(n: u64, moduli: &[u64], budgets: &Budgets) -> Result<WordCount, SubshiftError> {
    let mask_bits: u64 = moduli.iter().sum();
    if mask_bits > budgets.state_bits as u64 {
        return Err(SubshiftError::StateBudgetExceeded(mask_bits, budgets.state_bits));
    }
    if moduli.is_empty() {
        return Ok(WordCount { n, k_effective: 0, count: BigUint::one() << n });
    }
    // bit offset of each modulus inside the packed key
    let mut offsets = Vec::with_capacity(moduli.len());
    let mut acc = 0u32;
    for &b in moduli {
        offsets.push(acc);
        acc += b as u32;
    }
    let full_masks: Vec<u128> =
        moduli.iter().zip(&offsets).map(|(&b, &off)| ((1u128 << b) - 1) << off).collect();

    let mut states: HashMap<u128, BigUint> = HashMap::new();
    states.insert(0u128, BigUint::one());
    for pos in 1..=n {
        let mut bits_to_set = 0u128;
        for (i, &b) in moduli.iter().enumerate() {
            bits_to_set |= 1u128 << (offsets[i] as u64 + pos % b);
        }
        let mut next: HashMap<u128, BigUint> = HashMap::with_capacity(states.len() * 2);
        for (key, cnt) in states {
            // position in the support: mark residues, prune filled moduli
            let key1 = key | bits_to_set;
            if full_masks.iter().all(|&fm| key1 & fm != fm) {
                *next.entry(key1).or_insert_with(BigUint::zero) += &cnt;
            }
            // position left empty: state unchanged
            *next.entry(key).or_insert_with(BigUint::zero) += cnt;
        }
        states = next;
    }
    let count = states.into_values().sum();
    Ok(WordCount { n, k_effective: moduli.len(), count })
}

/// The sandwich test at a multiple of the truncated period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketReport {
    pub n: u64,
    pub k: usize,
    /// n * prod(1 - 1/b_k), an integer here.
    pub exponent: u64,
    pub lower: BigUint,
    pub count: BigUint,
    pub upper: BigUint,
    pub holds: bool,
}

/// Checks 2^e <= gamma_K(n) <= 2^e * prod(b_k) for n a multiple of
/// b_1...b_K, where e = n * prod(1 - 1/b_k).
pub fn gamma_bracket_check(
    n: u64,
    family: &BFamily,
    k: usize,
    budgets: &Budgets,
) -> Result<BracketReport, SubshiftError> {
    if k > family.enumerated_len() {
        return Err(SubshiftError::BadTruncation(k, family.enumerated_len()));
    }
    let moduli = &family.enumerated()[..k];
    let period: u64 = moduli.iter().product();
    if n % period != 0 {
        return Err(SubshiftError::NotMultipleOfPeriod(n, period));
    }
    let exponent = (n / period) * moduli.iter().map(|&b| b - 1).product::<u64>();
    let count = count_words_dp_prefix(n, family, k, budgets)?.count;
    let lower = BigUint::one() << exponent;
    let upper = &lower * BigUint::from(period);
    let holds = lower <= count && count <= upper;
    Ok(BracketReport { n, k, exponent, lower, count, upper, holds })
}

/// Certified enclosure of the topological entropy prod_k (1 - 1/b_k); exact
/// for finite families. Coincides with the measure of the one-cylinder at a
/// single position, and is computed that way.
pub fn entropy_interval(family: &BFamily, k: usize) -> Result<IntervalValue, MeasureError> {
    nu_one_cylinder(&[1], family, k)
}
