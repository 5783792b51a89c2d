//! Dynamics and statistics of B-free integers.
//!
//! A family B = {b_1 < b_2 < ...} of pairwise coprime integers >= 2 whose
//! reciprocals have a finite sum defines the *B-free* integers: the n
//! divisible by no b_k. The indicator sequence eta of that set generates a
//! subshift of {0,1}-sequences, carries a canonical shift-invariant measure
//! coming from the rotation on the compact group prod_k Z/b_k Z, and (when
//! every b_k is a perfect square a_k^2) supports a generalized Moebius
//! sequence mu_n = eta_n * (-1)^{delta_n}.
//!
//! The crate is organized around those objects:
//!
//! - [`family`]: validated families (explicit lists, r-free prime powers,
//!   rooted families b_k = a_k^2) with certified tail bounds on the
//!   reciprocal sums.
//! - [`sieve`]: segmented bitset sieves for eta and for the rooted data
//!   (delta, pi, mu), plus twin counting.
//! - [`measure`]: cylinder-set probabilities, exact rationals for finite
//!   families and certified rational enclosures otherwise; the signed
//!   extension nu_M; the sign product prod(1 - 2/a_k).
//! - [`subshift`]: admissible-word counts gamma(n) by brute force and by
//!   subset-state dynamic programming, sandwich-bound checks, and the
//!   topological entropy prod(1 - 1/b_k).
//! - [`dynamics`]: the rotation on prod_k Z/b_k Z, its coding into binary
//!   sequences, empirical pattern frequencies (full orbit, short intervals,
//!   arithmetic subsequences), and coordinate recovery from a window.
//! - [`chowla`]: correlation statistics of mu, estimators for the law of
//!   the sign sequence pi (orbit averaging and Monte Carlo on the root
//!   group), the (-1)^Delta bias, and the drift of that law toward the
//!   uniform Bernoulli measure as Sigma = sum(1/a_k) grows.
//!
//! All probabilities are exact `BigRational`s or rational enclosures; no
//! floating point enters a certified result. Randomized estimators take
//! explicit seeds and produce output independent of thread count.

pub mod bits;
pub mod chowla;
pub mod dynamics;
pub mod family;
pub mod measure;
pub mod rat;
pub mod sieve;
pub mod subshift;

mod primes;

/// Resource ceilings for the operations whose cost is exponential in some
/// parameter. Defaults are sized for interactive use.
#[derive(Debug, Clone)]
pub struct Budgets {
    /// `nu_exact_finite` refuses families whose period prod(b_k) exceeds this.
    pub period_limit: u64,
    /// `count_words_dp` tracks one subset of Z/b_k Z per constraining modulus;
    /// the key needs sum(b_k) bits and the state space is 2^sum. Refuse above
    /// this many bits.
    pub state_bits: u32,
    /// `nu_cylinder` expands 2^z inclusion-exclusion terms for a pattern with
    /// z zero cells. Refuse when z exceeds this.
    pub zero_cells: u32,
    /// `count_words_bruteforce` enumerates 2^n words. Refuse when n exceeds this.
    pub brute_cap: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            period_limit: 10_000_000,
            state_bits: 24,
            zero_cells: 20,
            brute_cap: 20,
        }
    }
}
