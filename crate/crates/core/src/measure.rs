//! Cylinder-set probabilities for the shift-invariant measure carried by the
//! indicator sequence of a family.
//!
//! Writing t(A, b) for the number of residues of A modulo b, the measure of
//! the set of sequences equal to 1 on A is prod_k (1 - t(A, b_k)/b_k); a
//! mixed cylinder (ones on A, zeros on B) expands by inclusion-exclusion
//! over the sets D with A <= D <= A u B, with sign (-1)^|D \ A|. The value
//! is positive exactly when A omits a residue class modulo every b_k.
//!
//! Finite families give exact rationals (cross-checkable against counting one
//! full period, [`nu_exact_finite`]). Infinite families give a certified
//! enclosure: the product truncated at depth K as the upper end, and the
//! Weierstrass bound prod_{k>K}(1 - t/b_k) >= 1 - |A| * sum_{k>K} 1/b_k,
//! clamped at zero, under the lower end.
//!
//! For rooted families the signed measure assigns a cylinder of sign pattern
//! alpha the value 2^-lambda * nu(squared cylinder), lambda counting the
//! nonzero cells, and the sign product prod_k (1 - 2/a_k) is the expectation
//! of (-1)^Delta under the Haar measure of the root group.

use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::bits::BitVec;
use crate::family::{BFamily, FamilyError};
use crate::rat::{product_enclosure, rat_u64, Rat};
use crate::sieve::{sieve_eta, SieveError};
use crate::Budgets;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("no certified tail bound available for this family")]
    NoTailBoundAvailable,
    #[error("pattern has {0} zero cells; inclusion-exclusion budget allows {1}")]
    PatternTooWide(usize, u32),
    #[error("family period {0} exceeds budget {1}")]
    PeriodTooLarge(u64, u64),
    #[error("operation requires a finite family")]
    NotFiniteFamily,
    #[error("operation requires a rooted family (b_k = a_k^2)")]
    NotRootedFamily,
    #[error("bad pattern: {0}")]
    BadPattern(String),
    #[error("bad correlation spec: {0}")]
    BadCorrelation(String),
    #[error(transparent)]
    Sieve(#[from] SieveError),
}

impl From<FamilyError> for MeasureError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::NoTailBoundAvailable => MeasureError::NoTailBoundAvailable,
            other => MeasureError::BadPattern(other.to_string()),
        }
    }
}

/// A certified enclosure lo <= value <= hi with 0 <= lo <= hi <= 1.
/// `exact` implies lo = hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalValue {
    lo: Rat,
    hi: Rat,
    exact: bool,
}

impl IntervalValue {
    pub fn exact(v: Rat) -> Self {
        assert!(v >= Rat::zero() && v <= Rat::one(), "exact value outside [0,1]");
        IntervalValue { lo: v.clone(), hi: v, exact: true }
    }

    /// Clamps the endpoints into [0, 1]; valid whenever the true value is a
    /// probability.
    pub fn bounds(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        let lo = lo.max(Rat::zero());
        let hi = hi.min(Rat::one());
        let exact = lo == hi;
        IntervalValue { lo, hi, exact }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn width(&self) -> Rat {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Distance from v to the enclosure; zero when v lies inside.
    pub fn distance_to(&self, v: &Rat) -> Rat {
        if v < &self.lo {
            self.lo.clone() - v.clone()
        } else if v > &self.hi {
            v.clone() - self.hi.clone()
        } else {
            Rat::zero()
        }
    }

    /// Multiplies by 2^-shift (exactness preserved).
    pub fn scale_pow2(&self, shift: u32) -> Self {
        let f = Rat::new(num::BigInt::one(), num::BigInt::one() << shift);
        IntervalValue {
            lo: self.lo.clone() * f.clone(),
            hi: self.hi.clone() * f,
            exact: self.exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    One,
    Zero,
    Free,
}

/// A window pattern: cells at positions 1..=width forced to one, zero, or
/// left free. At least one cell is forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    cells: Vec<Cell>,
}

impl Pattern {
    pub fn from_cells(cells: Vec<Cell>) -> Result<Self, MeasureError> {
        if cells.is_empty() {
            return Err(MeasureError::BadPattern("empty pattern".into()));
        }
        if cells.iter().all(|c| *c == Cell::Free) {
            return Err(MeasureError::BadPattern("pattern has no forced cell".into()));
        }
        Ok(Pattern { cells })
    }

    /// Characters: '1', '0', '*' (free).
    pub fn parse(s: &str) -> Result<Self, MeasureError> {
        let cells = s
            .chars()
            .map(|c| match c {
                '1' => Ok(Cell::One),
                '0' => Ok(Cell::Zero),
                '*' => Ok(Cell::Free),
                other => Err(MeasureError::BadPattern(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::from_cells(cells)
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// 1-based positions forced to one.
    pub fn ones(&self) -> Vec<u64> {
        self.positions(Cell::One)
    }

    /// 1-based positions forced to zero.
    pub fn zeros(&self) -> Vec<u64> {
        self.positions(Cell::Zero)
    }

    fn positions(&self, which: Cell) -> Vec<u64> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == which)
            .map(|(i, _)| i as u64 + 1)
            .collect()
    }

    /// Does the pattern match the bits starting at index `start` (position 1
    /// of the pattern = bit `start`)? Caller guarantees the window fits.
    #[inline]
    pub fn matches_bits(&self, bits: &BitVec, start: usize) -> bool {
        self.cells.iter().enumerate().all(|(j, c)| match c {
            Cell::One => bits.get(start + j),
            Cell::Zero => !bits.get(start + j),
            Cell::Free => true,
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                Cell::One => "1",
                Cell::Zero => "0",
                Cell::Free => "*",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedCell {
    Plus,
    Minus,
    Zero,
    Free,
}

/// A window pattern over {-1, 0, +1} with free cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPattern {
    cells: Vec<SignedCell>,
}

impl SignedPattern {
    pub fn from_cells(cells: Vec<SignedCell>) -> Result<Self, MeasureError> {
        if cells.is_empty() {
            return Err(MeasureError::BadPattern("empty pattern".into()));
        }
        if cells.iter().all(|c| *c == SignedCell::Free) {
            return Err(MeasureError::BadPattern("pattern has no forced cell".into()));
        }
        Ok(SignedPattern { cells })
    }

    /// Characters: '+', '-', '0', '*' (free).
    pub fn parse(s: &str) -> Result<Self, MeasureError> {
        let cells = s
            .chars()
            .map(|c| match c {
                '+' => Ok(SignedCell::Plus),
                '-' => Ok(SignedCell::Minus),
                '0' => Ok(SignedCell::Zero),
                '*' => Ok(SignedCell::Free),
                other => Err(MeasureError::BadPattern(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignedPattern::from_cells(cells)
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[SignedCell] {
        &self.cells
    }

    /// Number of cells forced to +1 or -1.
    pub fn lambda(&self) -> u32 {
        self.cells
            .iter()
            .filter(|c| matches!(c, SignedCell::Plus | SignedCell::Minus))
            .count() as u32
    }

    /// Squares cellwise: +-1 become one, 0 stays zero, free stays free.
    pub fn squared(&self) -> Pattern {
        let cells = self
            .cells
            .iter()
            .map(|c| match c {
                SignedCell::Plus | SignedCell::Minus => Cell::One,
                SignedCell::Zero => Cell::Zero,
                SignedCell::Free => Cell::Free,
            })
            .collect();
        Pattern { cells }
    }
}

impl fmt::Display for SignedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                SignedCell::Plus => "+",
                SignedCell::Minus => "-",
                SignedCell::Zero => "0",
                SignedCell::Free => "*",
            })?;
        }
        Ok(())
    }
}

/// t(A, b): number of distinct residues of A modulo b.
pub fn residue_count(a: &[u64], b: u64) -> u64 {
    debug_assert!(b >= 1);
    let mut residues: Vec<u64> = a.iter().map(|&n| n % b).collect();
    residues.sort_unstable();
    residues.dedup();
    residues.len() as u64
}

/// A is admissible iff t(A, b_k) < b_k for every k. Only moduli b_k <= |A|
/// can fail, so only those are tested.
pub fn is_admissible_set(a: &[u64], family: &BFamily) -> bool {
    first_violated_modulus(a, family).is_none()
}

/// The smallest modulus whose residue classes A exhausts, if any.
pub fn first_violated_modulus(a: &[u64], family: &BFamily) -> Option<u64> {
    family
        .enumerate_moduli(a.len() as u64)
        .into_iter()
        .find(|&b| residue_count(a, b) == b)
}

/// A word is admissible iff its support {i+1 : bit i set} is.
pub fn is_admissible_word(word: &BitVec, family: &BFamily) -> bool {
    let support: Vec<u64> = word.ones().map(|i| i as u64 + 1).collect();
    is_admissible_set(&support, family)
}

/// Exact prod_k (b_k - t(A, b_k)) / b_k over a finite family.
fn one_cylinder_exact(a: &[u64], family: &BFamily) -> Rat {
    debug_assert!(family.is_finite());
    let mut p = Rat::one();
    for &b in family.enumerated() {
        let t = residue_count(a, b);
        p *= rat_u64(b - t, b);
    }
    p
}

/// Certified enclosure of the full infinite product, truncated at depth k.
fn one_cylinder_enclosure(a: &[u64], family: &BFamily, k: usize) -> Result<(Rat, Rat), MeasureError> {
    // the truncation must cover every modulus that could reject A
    let k_eff = k
        .max(family.index_upper_bound(a.len() as u64))
        .min(family.enumerated_len());
    let factors = family.enumerated()[..k_eff]
        .iter()
        .map(|&b| (b - residue_count(a, b), b));
    let (p_lo, p_hi) = product_enclosure(factors);
    let tail = family.tail_sum_bound(k_eff)?;
    let slack = Rat::one() - Rat::from(num::BigInt::from(a.len())) * tail;
    let lo = if slack.is_negative() { Rat::zero() } else { p_lo * slack };
    Ok((lo, p_hi))
}

/// nu(C^1_A): measure of the cylinder forcing ones on the set A (1-based
/// positions). Exact for finite families; otherwise an enclosure truncated at
/// depth k (raised internally to cover all moduli <= |A|).
pub fn nu_one_cylinder(a: &[u64], family: &BFamily, k: usize) -> Result<IntervalValue, MeasureError> {
    if a.is_empty() {
        return Ok(IntervalValue::exact(Rat::one()));
    }
    if !is_admissible_set(a, family) {
        return Ok(IntervalValue::exact(Rat::zero()));
    }
    if family.is_finite() {
        Ok(IntervalValue::exact(one_cylinder_exact(a, family)))
    } else {
        let (lo, hi) = one_cylinder_enclosure(a, family, k)?;
        Ok(IntervalValue::bounds(lo, hi))
    }
}

/// nu(C_{A,B}) for the pattern's ones set A and zeros set B, by
/// inclusion-exclusion over the 2^|B| supersets of A inside A u B.
pub fn nu_cylinder(
    pattern: &Pattern,
    family: &BFamily,
    k: usize,
    budgets: &Budgets,
) -> Result<IntervalValue, MeasureError> {
    let ones = pattern.ones();
    let zeros = pattern.zeros();
    // the subset masks live in a u64, so 62 is a hard ceiling on zero cells
    let cap = budgets.zero_cells.min(62);
    if zeros.len() as u32 > cap {
        return Err(MeasureError::PatternTooWide(zeros.len(), cap));
    }
    if !is_admissible_set(&ones, family) {
        return Ok(IntervalValue::exact(Rat::zero()));
    }
    let mut d = ones.clone();
    if family.is_finite() {
        let mut sum = Rat::zero();
        for mask in 0u64..(1u64 << zeros.len()) {
            d.truncate(ones.len());
            for (i, &z) in zeros.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d.push(z);
                }
            }
            let term = one_cylinder_exact(&d, family);
            if mask.count_ones() % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        Ok(IntervalValue::exact(sum))
    } else {
        // truncation depth must cover every subset D up to size |A| + |B|
        let k_eff = k
            .max(family.index_upper_bound((ones.len() + zeros.len()) as u64))
            .min(family.enumerated_len());
        let mut sum_lo = Rat::zero();
        let mut sum_hi = Rat::zero();
        for mask in 0u64..(1u64 << zeros.len()) {
            d.truncate(ones.len());
            for (i, &z) in zeros.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d.push(z);
                }
            }
            let (lo, hi) = if is_admissible_set(&d, family) {
                one_cylinder_enclosure(&d, family, k_eff)?
            } else {
                (Rat::zero(), Rat::zero())
            };
            if mask.count_ones() % 2 == 0 {
                sum_lo += lo;
                sum_hi += hi;
            } else {
                sum_lo -= hi;
                sum_hi -= lo;
            }
        }
        Ok(IntervalValue::bounds(sum_lo, sum_hi))
    }
}

/// Independent oracle for finite families: sieve one full period
/// P = prod(b_k) and count the window starts matching the pattern.
pub fn nu_exact_finite(
    pattern: &Pattern,
    family: &BFamily,
    budgets: &Budgets,
) -> Result<Rat, MeasureError> {
    let period = family.finite_period().ok_or(MeasureError::NotFiniteFamily)?;
    if period > budgets.period_limit {
        return Err(MeasureError::PeriodTooLarge(period, budgets.period_limit));
    }
    let seg = sieve_eta(family, 1, period + pattern.width() as u64 + 1)?;
    let mut matches = 0u64;
    for n in 0..period {
        if pattern.matches_bits(seg.eta(), n as usize) {
            matches += 1;
        }
    }
    Ok(rat_u64(matches, period))
}

/// nu_M of a signed cylinder: 2^-lambda times the measure of the squared
/// pattern. Requires a rooted family.
pub fn nu_m_cylinder(
    signed: &SignedPattern,
    family: &BFamily,
    k: usize,
    budgets: &Budgets,
) -> Result<IntervalValue, MeasureError> {
    if !family.is_rooted() {
        return Err(MeasureError::NotRootedFamily);
    }
    let squared = nu_cylinder(&signed.squared(), family, k, budgets)?;
    Ok(squared.scale_pow2(signed.lambda()))
}

/// The nu_M integral of mu_{s_1}^{i_1} ... mu_{s_r}^{i_r}: exactly zero when
/// any exponent is odd, and the plain ones-cylinder measure at positions
/// s_j + 1 when all exponents are 2.
pub fn nu_m_correlation(
    shifts: &[u64],
    exponents: &[u8],
    family: &BFamily,
    k: usize,
) -> Result<IntervalValue, MeasureError> {
    validate_correlation(shifts, exponents).map_err(MeasureError::BadCorrelation)?;
    if exponents.iter().any(|&e| e == 1) {
        return Ok(IntervalValue::exact(Rat::zero()));
    }
    let positions: Vec<u64> = shifts.iter().map(|&s| s + 1).collect();
    nu_one_cylinder(&positions, family, k)
}

pub(crate) fn validate_correlation(shifts: &[u64], exponents: &[u8]) -> Result<(), String> {
    if shifts.is_empty() || shifts.len() != exponents.len() {
        return Err(format!(
            "need equally many shifts ({}) and exponents ({}), at least one",
            shifts.len(),
            exponents.len()
        ));
    }
    if !shifts.windows(2).all(|w| w[0] < w[1]) {
        return Err("shifts must be strictly increasing".into());
    }
    if let Some(&e) = exponents.iter().find(|&&e| e != 1 && e != 2) {
        return Err(format!("exponents must be 1 or 2, got {e}"));
    }
    Ok(())
}

/// prod_k (1 - 2/a_k) over the roots of a rooted family: the expectation of
/// (-1)^Delta, equal to 2 P((-1)^Delta = 1) - 1. Exact for finite families.
/// When Sigma = sum 1/a_k diverges the factors are in [0,1) and their product
/// is exactly zero.
pub fn sign_product(family: &BFamily, k: usize) -> Result<IntervalValue, MeasureError> {
    let roots = family.roots().ok_or(MeasureError::NotRootedFamily)?;
    if family.is_finite() {
        let mut p = Rat::one();
        for &a in roots {
            p *= rat_u64(a - 2, a);
        }
        return Ok(IntervalValue::exact(p));
    }
    match family.tail_root_sum_bound(k.min(roots.len())) {
        None => Ok(IntervalValue::exact(Rat::zero())),
        Some(tail) => {
            let k_eff = k.min(roots.len());
            let (p_lo, p_hi) = product_enclosure(roots[..k_eff].iter().map(|&a| (a - 2, a)));
            let slack = Rat::one() - rat_u64(2, 1) * tail;
            let lo = if slack.is_negative() { Rat::zero() } else { p_lo * slack };
            Ok(IntervalValue::bounds(lo, p_hi))
        }
    }
}
