//! Segmented sieves over half-open integer ranges [lo, hi).
//!
//! eta marks the integers with no factor in the family; on rooted families
//! (b_k = a_k^2) the segment also carries delta_n = #{k : a_k | n}, the sign
//! pi_n = (-1)^delta_n, and mu_n = eta_n * pi_n. With roots = all primes, mu
//! is the classical Moebius function.
//!
//! Only family members below the segment's upper end can mark anything, so
//! the cost is O((hi-lo) * sum(1/b_k) + #moduli) marking steps. Results are
//! bit-exact under any split of the range.

use thiserror::Error;

use crate::bits::BitVec;
use crate::family::BFamily;

/// Segments larger than this would not fit interactive memory anyway.
const MAX_SEGMENT: u64 = 1 << 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SieveError {
    #[error("empty range: need 1 <= lo < hi")]
    RangeEmpty,
    #[error("range too large or index overflow")]
    Overflow,
    #[error("operation requires a rooted family (b_k = a_k^2)")]
    NotRootedFamily,
    #[error("delta overflow at n = {0}: more than 255 roots divide n")]
    DeltaSaturated(u64),
}

/// Sieved values over [lo, hi); index i holds data for n = lo + i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    eta: BitVec,
    delta: Option<Vec<u8>>,
    pi: Option<Vec<i8>>,
    mu: Option<Vec<i8>>,
}

impl SieveSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn eta(&self) -> &BitVec {
        &self.eta
    }

    /// eta_n for lo <= n < hi.
    pub fn eta_at(&self, n: u64) -> bool {
        self.eta.get(self.index(n))
    }

    pub fn delta(&self) -> Option<&[u8]> {
        self.delta.as_deref()
    }

    pub fn pi(&self) -> Option<&[i8]> {
        self.pi.as_deref()
    }

    pub fn mu(&self) -> Option<&[i8]> {
        self.mu.as_deref()
    }

    pub fn delta_at(&self, n: u64) -> Option<u8> {
        Some(self.delta.as_ref()?[self.index(n)])
    }

    pub fn pi_at(&self, n: u64) -> Option<i8> {
        Some(self.pi.as_ref()?[self.index(n)])
    }

    pub fn mu_at(&self, n: u64) -> Option<i8> {
        Some(self.mu.as_ref()?[self.index(n)])
    }

    fn index(&self, n: u64) -> usize {
        assert!(n >= self.lo && n < self.hi, "n = {n} outside [{}, {})", self.lo, self.hi);
        (n - self.lo) as usize
    }
}

fn check_range(lo: u64, hi: u64) -> Result<usize, SieveError> {
    if lo < 1 || lo >= hi {
        return Err(SieveError::RangeEmpty);
    }
    let len = hi - lo;
    if len > MAX_SEGMENT || hi > u64::MAX / 2 {
        return Err(SieveError::Overflow);
    }
    Ok(len as usize)
}

/// First multiple of b in [lo, hi), if any.
#[inline]
fn first_multiple(b: u64, lo: u64) -> u64 {
    lo.div_ceil(b) * b
}

/// eta over [lo, hi): bit i is 1 iff lo + i has no factor in the family.
pub fn sieve_eta(family: &BFamily, lo: u64, hi: u64) -> Result<SieveSegment, SieveError> {
    let len = check_range(lo, hi)?;
    let mut eta = BitVec::filled(len, true);
    for b in family.enumerate_moduli(hi - 1) {
        let mut m = first_multiple(b, lo);
        while m < hi {
            eta.set((m - lo) as usize, false);
            m += b;
        }
    }
    Ok(SieveSegment { lo, hi, eta, delta: None, pi: None, mu: None })
}

/// eta, delta, pi, mu over [lo, hi) for a rooted family.
pub fn sieve_mu(family: &BFamily, lo: u64, hi: u64) -> Result<SieveSegment, SieveError> {
    let roots = family.enumerate_roots(hi - 1).ok_or(SieveError::NotRootedFamily)?;
    let mut seg = sieve_eta(family, lo, hi)?;
    let len = seg.len();
    let mut delta = vec![0u8; len];
    for a in roots {
        let mut m = first_multiple(a, lo);
        while m < hi {
            let slot = &mut delta[(m - lo) as usize];
            *slot = slot.checked_add(1).ok_or(SieveError::DeltaSaturated(m))?;
            m += a;
        }
    }
    let pi: Vec<i8> = delta.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).collect();
    let mu: Vec<i8> = pi
        .iter()
        .enumerate()
        .map(|(i, &s)| if seg.eta.get(i) { s } else { 0 })
        .collect();
    seg.delta = Some(delta);
    seg.pi = Some(pi);
    seg.mu = Some(mu);
    Ok(seg)
}

/// Count of n in [1, N] with eta_n = eta_{n+gap} = 1.
pub fn twin_count(family: &BFamily, n: u64, gap: u64) -> Result<u64, SieveError> {
    if n < 1 || gap < 1 {
        return Err(SieveError::RangeEmpty);
    }
    let hi = n.checked_add(gap).and_then(|v| v.checked_add(1)).ok_or(SieveError::Overflow)?;
    let seg = sieve_eta(family, 1, hi)?;
    // position i of the segment is n = 1 + i
    Ok(seg.eta.count_pairs(gap as usize, n as usize))
}
