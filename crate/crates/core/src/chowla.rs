//! Statistics of the generalized Moebius sequence on rooted families.
//!
//! With b_k = a_k^2, delta_n counts the roots dividing n, pi_n = (-1)^delta_n
//! and mu_n = eta_n pi_n. The normalized autocorrelations of mu with
//! exponents in {1, 2} vanish in the limit exactly when mu is generic for the
//! signed extension nu_M of the cylinder measure; the all-even case reduces
//! to plain eta statistics.
//!
//! The law nu' of the sign sequence pulls back to the Haar measure of the
//! root group prod_k Z/a_k Z when Sigma = sum 1/a_k is finite. Two
//! estimators: orbit averaging of pi (exact over whole periods on finite
//! families), and Monte Carlo on truncated Haar samples with a union-bound
//! correction m * sum_{k>K} 1/a_k for the ignored coordinates. The bias
//! P((-1)^Delta = 1) = (1 + prod(1 - 2/a_k))/2 drifts to 1/2 as Sigma grows,
//! at speed bounded by exp(-2 Sigma); the deviation of nu' from the uniform
//! Bernoulli measure shrinks along root sweeps of growing Sigma.
//!
//! When Sigma diverges (the Moebius case) nu' has no computable description
//! here; sampling refuses, and empirical statistics carry no reference.

use num::{One, Signed, Zero};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::family::BFamily;
use crate::measure::{sign_product, validate_correlation, IntervalValue, MeasureError};
use crate::rat::{rat_u64, to_f64, Rat};
use crate::sieve::{sieve_mu, SieveError, SieveSegment};

const MC_BATCH: u64 = 8192;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChowlaError {
    #[error("Sigma = sum 1/a_k diverges for this family")]
    SigmaInfinite,
    #[error("no samples requested")]
    NoSamples,
    #[error("window covers up to {0}, need {1}")]
    WindowTooShort(u64, u64),
    #[error("bad correlation spec: {0}")]
    BadCorrelation(String),
    #[error("bad sign pattern: {0}")]
    BadPattern(String),
    #[error("operation requires a rooted family (b_k = a_k^2)")]
    NotRootedFamily,
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// A rooted family together with a truncation depth, the Sigma enclosure and
/// the root tail bound at that depth.
#[derive(Debug, Clone)]
pub struct RootedContext {
    family: BFamily,
    depth: usize,
    sigma: Option<(Rat, Rat)>,
    root_tail: Option<Rat>,
}

impl RootedContext {
    /// `depth` is clamped to the enumerated prefix.
    pub fn new(family: BFamily, depth: usize) -> Result<Self, ChowlaError> {
        if !family.is_rooted() {
            return Err(ChowlaError::NotRootedFamily);
        }
        let depth = depth.min(family.roots().unwrap().len());
        let sigma = family.sigma_enclosure();
        let root_tail = family.tail_root_sum_bound(depth);
        Ok(RootedContext { family, depth, sigma, root_tail })
    }

    pub fn with_full_depth(family: BFamily) -> Result<Self, ChowlaError> {
        let depth = family.enumerated_len();
        Self::new(family, depth)
    }

    pub fn family(&self) -> &BFamily {
        &self.family
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// None means Sigma diverges.
    pub fn sigma(&self) -> Option<&(Rat, Rat)> {
        self.sigma.as_ref()
    }

    pub fn sigma_is_finite(&self) -> bool {
        self.sigma.is_some()
    }

    /// Upper bound on sum_{k > depth} 1/a_k; None when it diverges.
    pub fn root_tail_bound(&self) -> Option<&Rat> {
        self.root_tail.as_ref()
    }

    fn truncated_roots(&self) -> &[u64] {
        &self.family.roots().unwrap()[..self.depth]
    }
}

/// The signs pi_n over [1, N]; index n-1 holds pi_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignWindow {
    values: Vec<i8>,
}

impl SignWindow {
    pub fn from_segment(seg: &SieveSegment) -> Result<Self, ChowlaError> {
        if seg.lo() != 1 {
            return Err(ChowlaError::BadPattern("sign window must start at n = 1".into()));
        }
        let pi = seg.pi().ok_or(ChowlaError::NotRootedFamily)?;
        let delta = seg.delta().ok_or(ChowlaError::NotRootedFamily)?;
        debug_assert!(pi
            .iter()
            .zip(delta)
            .all(|(&s, &d)| s == if d % 2 == 0 { 1 } else { -1 }));
        Ok(SignWindow { values: pi.to_vec() })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// (1/N) sum_{1<=n<=N} mu_{n+s_1}^{i_1} ... mu_{n+s_r}^{i_r}, exact.
/// The segment must start at 1 and carry mu up to N + max shift.
pub fn chowla_correlation(
    seg: &SieveSegment,
    shifts: &[u64],
    exponents: &[u8],
    n: u64,
) -> Result<Rat, ChowlaError> {
    validate_correlation(shifts, exponents).map_err(ChowlaError::BadCorrelation)?;
    if n < 1 {
        return Err(ChowlaError::BadCorrelation("N must be >= 1".into()));
    }
    let mu = seg.mu().ok_or(ChowlaError::NotRootedFamily)?;
    if seg.lo() != 1 {
        return Err(ChowlaError::BadCorrelation("window must start at n = 1".into()));
    }
    let need = n + shifts.last().unwrap();
    if seg.hi() <= need {
        return Err(ChowlaError::WindowTooShort(seg.hi() - 1, need));
    }
    let mut sum = 0i64;
    for t in 1..=n {
        let mut prod = 1i64;
        for (&s, &e) in shifts.iter().zip(exponents) {
            let v = mu[(t + s - 1) as usize] as i64;
            prod *= if e == 1 { v } else { v * v };
            if prod == 0 {
                break;
            }
        }
        sum += prod;
    }
    Ok(Rat::new(sum.into(), n.into()))
}

/// Frequency over offsets 0..N-1 of the sign pattern alpha (entries +-1) in
/// pi: matches t with pi_{t+j} = alpha_j for all j = 1..m. Exact rational.
/// Computed for any rooted family, finite Sigma or not.
pub fn nu_prime_empirical(
    ctx: &RootedContext,
    pattern: &[i8],
    n: u64,
) -> Result<Rat, ChowlaError> {
    validate_sign_pattern(pattern)?;
    if n < 1 {
        return Err(ChowlaError::BadPattern("N must be >= 1".into()));
    }
    let m = pattern.len() as u64;
    if m == 0 {
        return Ok(Rat::one());
    }
    let seg = sieve_mu(ctx.family(), 1, n + m)?;
    let pi = seg.pi().unwrap();
    let mut matches = 0u64;
    for t in 0..n as usize {
        if pattern.iter().enumerate().all(|(j, &a)| pi[t + j] == a) {
            matches += 1;
        }
    }
    Ok(rat_u64(matches, n))
}

fn validate_sign_pattern(pattern: &[i8]) -> Result<(), ChowlaError> {
    if pattern.iter().any(|&a| a != 1 && a != -1) {
        return Err(ChowlaError::BadPattern("sign pattern entries must be +-1".into()));
    }
    Ok(())
}

/// A Monte Carlo estimate with its reported uncertainty: the binomial
/// standard error plus the union-bound tail correction m * sum_{k>K} 1/a_k.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub estimate: Rat,
    pub matches: u64,
    pub samples: u64,
    pub std_error: f64,
    pub tail_error: Rat,
}

impl McEstimate {
    pub fn total_error(&self) -> f64 {
        self.std_error + to_f64(&self.tail_error)
    }
}

/// Pattern counts from S truncated Haar samples: entry i counts samples whose
/// sign vector has minus signs exactly where i has bits set. Deterministic
/// given the seed, independent of thread count (fixed batching).
pub fn mc_sign_histogram(
    ctx: &RootedContext,
    width: u32,
    samples: u64,
    seed: u64,
) -> Result<Vec<u64>, ChowlaError> {
    if !ctx.sigma_is_finite() {
        return Err(ChowlaError::SigmaInfinite);
    }
    if samples == 0 {
        return Err(ChowlaError::NoSamples);
    }
    if width == 0 || width > 20 {
        return Err(ChowlaError::BadPattern(format!(
            "histogram width {width} outside 1..=20"
        )));
    }
    let roots = ctx.truncated_roots();
    let dists: Vec<Uniform<u64>> = roots.iter().map(|&a| Uniform::from(0..a)).collect();
    let nbatches = samples.div_ceil(MC_BATCH);
    let hists: Vec<Vec<u64>> = (0..nbatches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, batch));
            let todo = MC_BATCH.min(samples - batch * MC_BATCH);
            let mut hist = vec![0u64; 1 << width];
            for _ in 0..todo {
                let mut idx = 0usize;
                for (dist, &a) in dists.iter().zip(roots) {
                    let v = dist.sample(&mut rng);
                    // sign at position j flips when v + j = 0 mod a
                    for j in 1..=width as u64 {
                        if (v + j) % a == 0 {
                            idx ^= 1 << (j - 1);
                        }
                    }
                }
                hist[idx] += 1;
            }
            hist
        })
        .collect();
    let mut total = vec![0u64; 1 << width];
    for hist in hists {
        for (t, h) in total.iter_mut().zip(hist) {
            *t += h;
        }
    }
    Ok(total)
}

/// Monte Carlo estimate of nu'(cylinder of the sign pattern) from S truncated
/// Haar samples. Refuses when Sigma diverges (Delta is a.s. infinite).
pub fn nu_prime_montecarlo(
    ctx: &RootedContext,
    pattern: &[i8],
    samples: u64,
    seed: u64,
) -> Result<McEstimate, ChowlaError> {
    validate_sign_pattern(pattern)?;
    if pattern.is_empty() {
        return Err(ChowlaError::BadPattern("empty sign pattern".into()));
    }
    let width = pattern.len() as u32;
    let hist = mc_sign_histogram(ctx, width, samples, seed)?;
    let idx = pattern
        .iter()
        .enumerate()
        .fold(0usize, |acc, (j, &a)| if a == -1 { acc | 1 << j } else { acc });
    let matches = hist[idx];
    let estimate = rat_u64(matches, samples);
    let p = matches as f64 / samples as f64;
    let std_error = (p * (1.0 - p) / samples as f64).sqrt();
    let tail = ctx.root_tail_bound().cloned().unwrap_or_else(Rat::zero);
    let tail_error = Rat::from(num::BigInt::from(pattern.len())) * tail;
    Ok(McEstimate { estimate, matches, samples, std_error, tail_error })
}

/// Enclosure of P((-1)^Delta = 1) = (1 + prod(1 - 2/a_k))/2. The distance
/// from 1/2 is bounded by exp(-2 Sigma)/2.
pub fn bias(ctx: &RootedContext) -> Result<IntervalValue, ChowlaError> {
    if !ctx.sigma_is_finite() {
        return Err(ChowlaError::SigmaInfinite);
    }
    let sp = sign_product(ctx.family(), ctx.depth())?;
    let half = rat_u64(1, 2);
    let lo = (Rat::one() + sp.lo().clone()) * half.clone();
    let hi = (Rat::one() + sp.hi().clone()) * half;
    Ok(if sp.is_exact() {
        IntervalValue::exact(lo)
    } else {
        IntervalValue::bounds(lo, hi)
    })
}

/// One row of the Bernoulli-convergence table: the largest deviation of nu'
/// from the uniform value 2^-m over all 2^m sign patterns of width m.
#[derive(Debug, Clone)]
pub struct BernoulliRow {
    pub label: String,
    pub sigma_lo: Rat,
    pub sigma_hi: Rat,
    pub deviation: Rat,
    /// Reported uncertainty of the deviation; 0 for exact rows.
    pub error: f64,
    pub exact: bool,
    pub samples: u64,
}

/// For each context: max over width-m sign patterns of |nu'(pattern) - 2^-m|.
/// m = 1 rows are exact (the deviation is prod(1 - 2/a_k)/2); wider rows are
/// Monte Carlo with per-context derived seeds.
pub fn bernoulli_convergence(
    contexts: &[(String, RootedContext)],
    m: u32,
    samples: u64,
    seed: u64,
) -> Result<Vec<BernoulliRow>, ChowlaError> {
    if m == 0 {
        return Err(ChowlaError::BadPattern("pattern width m must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(contexts.len());
    for (i, (label, ctx)) in contexts.iter().enumerate() {
        let (sigma_lo, sigma_hi) = ctx.sigma().cloned().ok_or(ChowlaError::SigmaInfinite)?;
        let row = if m == 1 {
            let sp = sign_product(ctx.family(), ctx.depth())?;
            if !sp.is_exact() {
                // enclosure row: worst-case endpoint, error = enclosure width
                let dev = sp.hi().clone() * rat_u64(1, 2);
                BernoulliRow {
                    label: label.clone(),
                    sigma_lo,
                    sigma_hi,
                    deviation: dev,
                    error: to_f64(&sp.width()) / 2.0,
                    exact: false,
                    samples: 0,
                }
            } else {
                BernoulliRow {
                    label: label.clone(),
                    sigma_lo,
                    sigma_hi,
                    deviation: sp.lo().clone() * rat_u64(1, 2),
                    error: 0.0,
                    exact: true,
                    samples: 0,
                }
            }
        } else {
            let hist = mc_sign_histogram(ctx, m, samples, derive_seed(seed, i as u64))?;
            let uniform = Rat::new(num::BigInt::one(), num::BigInt::one() << m);
            let mut deviation = Rat::zero();
            let mut max_se = 0.0f64;
            for &count in &hist {
                let p = rat_u64(count, samples);
                let dev = (p.clone() - uniform.clone()).abs();
                if dev > deviation {
                    deviation = dev;
                }
                let pf = count as f64 / samples as f64;
                max_se = max_se.max((pf * (1.0 - pf) / samples as f64).sqrt());
            }
            let tail = ctx.root_tail_bound().cloned().unwrap_or_else(Rat::zero);
            BernoulliRow {
                label: label.clone(),
                sigma_lo,
                sigma_hi,
                deviation,
                error: max_se + to_f64(&tail) * m as f64,
                exact: false,
                samples,
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{validate_family, FamilySpec};
    use crate::measure::nu_exact_finite;
    use crate::measure::Pattern;
    use crate::rat::rat_i64;
    use crate::Budgets;

    fn rooted(roots: &[u64]) -> BFamily {
        validate_family(&FamilySpec::RootedExplicit { roots: roots.to_vec() }).unwrap()
    }

    fn ctx(roots: &[u64]) -> RootedContext {
        RootedContext::with_full_depth(rooted(roots)).unwrap()
    }

    fn moebius_family() -> BFamily {
        validate_family(&FamilySpec::RootedPrimes {
            prime_lo: 2,
            prime_hi: None,
            prime_limit: 1000,
        })
        .unwrap()
    }

    #[test]
    fn correlation_square_is_density() {
        let fam = rooted(&[2, 3]);
        let n = 36 * 10;
        let seg = sieve_mu(&fam, 1, n + 1).unwrap();
        let corr = chowla_correlation(&seg, &[0], &[2], n).unwrap();
        let eta_mean = rat_u64(
            (1..=n).filter(|&i| seg.eta_at(i)).count() as u64,
            n,
        );
        assert_eq!(corr, eta_mean);
        assert_eq!(corr, rat_i64(2, 3)); // whole periods of 36
    }

    #[test]
    fn correlation_matches_period_oracle() {
        let fam = rooted(&[2, 3]);
        let periods = 7u64;
        let n = 36 * periods;
        let seg = sieve_mu(&fam, 1, n + 4).unwrap();
        let mu = seg.mu().unwrap();
        for (shifts, exps) in [
            (vec![0u64, 1], vec![1u8, 1]),
            (vec![0, 2], vec![1, 1]),
            (vec![0, 1, 3], vec![1, 2, 1]),
        ] {
            let got = chowla_correlation(&seg, &shifts, &exps, n).unwrap();
            // direct one-period average
            let mut sum = 0i64;
            for t in 1..=36u64 {
                let mut prod = 1i64;
                for (&s, &e) in shifts.iter().zip(&exps) {
                    let v = mu[(t + s - 1) as usize] as i64;
                    prod *= if e == 1 { v } else { v * v };
                }
                sum += prod;
            }
            assert_eq!(got, Rat::new(sum.into(), 36.into()), "shifts {shifts:?}");
        }
    }

    #[test]
    fn correlation_window_guard() {
        let fam = rooted(&[2, 3]);
        let seg = sieve_mu(&fam, 1, 50).unwrap();
        assert!(matches!(
            chowla_correlation(&seg, &[0, 10], &[1, 1], 45),
            Err(ChowlaError::WindowTooShort(49, 55))
        ));
        assert!(chowla_correlation(&seg, &[0], &[3], 10).is_err());
        assert!(chowla_correlation(&seg, &[3, 1], &[1, 1], 10).is_err());
    }

    #[test]
    fn sign_window_from_segment() {
        let fam = rooted(&[2, 3, 5]);
        let seg = sieve_mu(&fam, 1, 31).unwrap();
        let w = SignWindow::from_segment(&seg).unwrap();
        assert_eq!(w.len(), 30);
        assert_eq!(w.values()[29], seg.pi_at(30).unwrap());
        // eta-only segments carry no sign data
        let plain = crate::sieve::sieve_eta(&fam, 1, 31).unwrap();
        assert!(SignWindow::from_segment(&plain).is_err());
        let offset = sieve_mu(&fam, 2, 31).unwrap();
        assert!(SignWindow::from_segment(&offset).is_err());
    }

    #[test]
    fn empirical_nu_prime_period() {
        // roots {2,3}: delta over one period of 6 is (0,1,1,1,0,2),
        // pi = (+,-,-,-,+,+), so the (+) pattern has frequency 3/6 = 1/2.
        let c = ctx(&[2, 3]);
        let v = nu_prime_empirical(&c, &[1], 6 * 50).unwrap();
        assert_eq!(v, rat_i64(1, 2));
        let v = nu_prime_empirical(&c, &[], 100).unwrap();
        assert_eq!(v, Rat::one());
    }

    #[test]
    fn mc_agrees_with_exact() {
        let c = ctx(&[2, 3]);
        let est = nu_prime_montecarlo(&c, &[1], 40_000, 424242).unwrap();
        let exact = 0.5;
        let err = to_f64(&est.estimate) - exact;
        assert!(err.abs() <= 3.0 * est.total_error() + 1e-12, "err = {err}");
        assert_eq!(est.tail_error, Rat::zero());

        let c35 = ctx(&[3, 5]);
        let est = nu_prime_montecarlo(&c35, &[1], 40_000, 7).unwrap();
        // (1 + 1/5)/2 = 3/5
        assert!((to_f64(&est.estimate) - 0.6).abs() <= 3.0 * est.total_error());
    }

    #[test]
    fn mc_is_deterministic() {
        let c = ctx(&[3, 5, 7]);
        let a = nu_prime_montecarlo(&c, &[1, -1], 20_000, 99).unwrap();
        let b = nu_prime_montecarlo(&c, &[1, -1], 20_000, 99).unwrap();
        assert_eq!(a.estimate, b.estimate);
        let c2 = nu_prime_montecarlo(&c, &[1, -1], 20_000, 100).unwrap();
        assert!(a.estimate != c2.estimate || a.matches == c2.matches);
    }

    #[test]
    fn mc_refusals() {
        let c = ctx(&[3, 5]);
        assert!(matches!(
            nu_prime_montecarlo(&c, &[1], 0, 1),
            Err(ChowlaError::NoSamples)
        ));
        let moebius = RootedContext::with_full_depth(moebius_family()).unwrap();
        assert!(!moebius.sigma_is_finite());
        assert!(matches!(
            nu_prime_montecarlo(&moebius, &[1], 100, 1),
            Err(ChowlaError::SigmaInfinite)
        ));
        assert!(nu_prime_montecarlo(&c, &[2], 10, 1).is_err());
    }

    #[test]
    fn bias_exact_cases() {
        let v = bias(&ctx(&[2, 3])).unwrap();
        assert_eq!(*v.lo(), rat_i64(1, 2));
        assert!(v.is_exact());
        let v = bias(&ctx(&[3, 5])).unwrap();
        assert_eq!(*v.lo(), rat_i64(3, 5));
        assert!(bias(&RootedContext::with_full_depth(moebius_family()).unwrap()).is_err());
    }

    #[test]
    fn orbit_and_mc_estimators_agree() {
        // statistical 3-SE gate on a finite rooted family
        let c = ctx(&[3, 5, 7]);
        let pattern = [1i8, 1];
        let period = 105u64;
        let orbit = nu_prime_empirical(&c, &pattern, period * 400).unwrap();
        let mc = nu_prime_montecarlo(&c, &pattern, 60_000, 31337).unwrap();
        let gap = (to_f64(&orbit) - to_f64(&mc.estimate)).abs();
        assert!(gap <= 3.0 * mc.total_error(), "gap = {gap}");
    }

    #[test]
    fn orbit_estimate_approaches_bias_reference() {
        // Far below the group period the orbit average carries
        // equidistribution error well above the iid standard error, so only
        // coarse agreement with (1 + prod(1 - 2/a_k))/2 can be checked here.
        // The exact statement (equality over whole periods) is tested above.
        let fam = validate_family(&FamilySpec::RootedPrimes {
            prime_lo: 3,
            prime_hi: Some(100),
            prime_limit: 1000,
        })
        .unwrap();
        let c = RootedContext::with_full_depth(fam).unwrap();
        let est = nu_prime_empirical(&c, &[1], 1_000_000).unwrap();
        let reference = bias(&c).unwrap();
        let gap = (to_f64(&est) - to_f64(reference.lo())).abs();
        assert!(gap < 0.05, "gap = {gap}");
    }

    #[test]
    fn bernoulli_rows() {
        let contexts = vec![
            ("X=10".to_string(), ctx(&[3, 5, 7])),
            ("X=20".to_string(), ctx(&[3, 5, 7, 11, 13, 17, 19])),
        ];
        let rows = bernoulli_convergence(&contexts, 1, 0, 0).unwrap();
        assert!(rows.iter().all(|r| r.exact));
        assert_eq!(rows[0].deviation, rat_i64(1, 14)); // (1/3)(3/5)(5/7)/2
        assert!(rows[1].deviation < rows[0].deviation);
        // a context containing root 2 has deviation exactly 0
        let with_two = vec![("root2".to_string(), ctx(&[2, 5]))];
        let rows = bernoulli_convergence(&with_two, 1, 0, 0).unwrap();
        assert_eq!(rows[0].deviation, Rat::zero());

        let rows = bernoulli_convergence(&contexts, 2, 30_000, 5).unwrap();
        assert!(rows.iter().all(|r| !r.exact && r.samples == 30_000));
        let d0 = to_f64(&rows[0].deviation);
        let d1 = to_f64(&rows[1].deviation);
        assert!(d1 <= d0 + 3.0 * (rows[0].error + rows[1].error));
    }

    #[test]
    fn all_even_correlation_equals_measure_reference() {
        let fam = rooted(&[2, 3]);
        let n = 36 * 25;
        let seg = sieve_mu(&fam, 1, n + 3).unwrap();
        let corr = chowla_correlation(&seg, &[0, 2], &[2, 2], n).unwrap();
        let reference =
            nu_exact_finite(&Pattern::parse("1*1").unwrap(), &fam, &Budgets::default()).unwrap();
        assert_eq!(corr, reference);
    }
}
