//! bfree: a command line laboratory for B-free integers. Sieves the
//! indicator and generalized-Moebius sequences, evaluates cylinder measures
//! exactly or as certified enclosures, counts admissible words, runs the
//! genericity scans, and estimates the sign-sequence law. Output is NDJSON
//! (or CSV), deterministic for a fixed configuration: randomized subcommands
//! require an explicit seed and thread count never changes numbers.

mod emit;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use bfree_core::chowla::{
    bernoulli_convergence, bias, chowla_correlation, nu_prime_empirical, nu_prime_montecarlo,
    ChowlaError, RootedContext,
};
use bfree_core::dynamics::{
    arithmetic_average, empirical_frequency, hypothesis_holds_structurally, phi_window,
    recover_coordinates, short_interval_frequency, short_interval_hypothesis_check, DynamicsError,
    FrequencyReport, GroupPoint,
};
use bfree_core::family::{validate_family, BFamily, FamilyError, FamilySpec};
use bfree_core::measure::{
    first_violated_modulus, nu_cylinder, nu_m_correlation, nu_m_cylinder, IntervalValue,
    MeasureError, Pattern, SignedPattern,
};
use bfree_core::rat::{format_ratio, log2_biguint, to_f64};
use bfree_core::sieve::{sieve_eta, sieve_mu, twin_count, SieveError};
use bfree_core::subshift::{count_words_bruteforce, count_words_dp, SubshiftError};
use bfree_core::Budgets;
use emit::{Emitter, Format};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "bfree", version, about = "B-free integers: sieves, measures, entropy, genericity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Family spec file (JSON; see README for the four kinds)
    #[arg(long, global = true)]
    family: Option<PathBuf>,
    /// Seed; required by randomized subcommands
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: BFREE_THREADS, then all cores). Affects wall
    /// time only, never numeric output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Ndjson)]
    format: Format,
    /// Cap on prod(b_k) for exact period counting
    #[arg(long = "budget-period", global = true)]
    budget_period: Option<u64>,
    /// Cap (in mask bits) on the word-count DP state
    #[arg(long = "budget-states", global = true)]
    budget_states: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaMethod {
    Brute,
    Dp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NuMethod {
    Orbit,
    Mc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sieve eta (and with --mu the rooted delta/pi/mu data) over [lo, hi)
    Sieve {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        /// Also compute delta, pi, mu (rooted families only)
        #[arg(long)]
        mu: bool,
        /// Emit one record with the eta bits hex-packed instead of per-n records
        #[arg(long)]
        hex: bool,
    },
    /// Count n <= N with eta_n = eta_{n+gap} = 1
    Twins {
        #[arg(long)]
        gap: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Measure of a cylinder pattern: '1','0','*', or '+','-','0','*' for the signed measure
    Measure {
        #[arg(long)]
        pattern: String,
        /// Truncation depth for enclosures (default: all moduli below 10^6)
        #[arg(long = "K")]
        k: Option<usize>,
    },
    /// Admissibility of a pattern's support, and the first violated modulus
    Admissible {
        #[arg(long)]
        pattern: String,
    },
    /// Exact count of admissible words of length n
    Gamma {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = GammaMethod::Dp)]
        method: GammaMethod,
    },
    /// Certified enclosure of the topological entropy prod(1 - 1/b_k)
    Entropy {
        /// Truncation depth (default: the whole enumerated prefix)
        #[arg(long = "K")]
        k: Option<usize>,
    },
    /// Pattern frequency of eta over window starts 0..N-1, with reference
    Generic {
        #[arg(long)]
        pattern: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Pattern frequency over the short interval [N, N + floor(sqrt N))
    Short {
        #[arg(long)]
        pattern: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Pattern frequency along n p^s + r, averaged over r mod p^m
    Arith {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long = "N")]
        n: u64,
    },
    /// Recover rotation coordinates from coded windows of seeded random points
    Recover {
        /// Number of coordinates to recover
        #[arg(long = "K")]
        k: usize,
        /// Window length (must be >= 2 b_K)
        #[arg(long, default_value_t = 10_000)]
        window: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Empirical Chowla correlation (1/N) sum mu_{n+s_1}^{i_1}...mu_{n+s_r}^{i_r}
    Chowla {
        #[arg(long, value_delimiter = ',')]
        shifts: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u8>,
        #[arg(long = "N")]
        n: u64,
    },
    /// Estimate nu' of a sign pattern ('+'/'-') by orbit average or Monte Carlo
    Nuprime {
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        method: NuMethod,
        /// Orbit length (orbit method)
        #[arg(long = "N")]
        n: Option<u64>,
        /// Sample count (mc method)
        #[arg(long)]
        samples: Option<u64>,
        /// Truncation depth (default: the whole enumerated prefix)
        #[arg(long = "K")]
        k: Option<usize>,
    },
    /// Max deviation of nu' from the uniform Bernoulli measure along a root sweep
    Bernoulli {
        /// Upper ends X of the root ranges [prime-lo, X]
        #[arg(long = "roots-sweep", value_delimiter = ',')]
        roots_sweep: Vec<u64>,
        /// Pattern width (1 is exact, wider uses Monte Carlo)
        #[arg(long)]
        m: u32,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long = "prime-lo", default_value_t = 3)]
        prime_lo: u64,
    },
    /// Enclosure of the sign bias P((-1)^Delta = 1)
    Bias {
        /// Truncation depth (default: the whole enumerated prefix)
        #[arg(long = "K")]
        k: Option<usize>,
    },
}

enum CliError {
    Validation(String),
    Budget(String),
    Unsupported(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Unsupported(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Budget(_) => "budget",
            CliError::Unsupported(_) => "unsupported",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Budget(m) | CliError::Unsupported(m) => m,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::NoTailBoundAvailable => CliError::Unsupported(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SieveError> for CliError {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::Overflow | SieveError::DeltaSaturated(_) => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::NoTailBoundAvailable => CliError::Unsupported(e.to_string()),
            MeasureError::PatternTooWide(..) | MeasureError::PeriodTooLarge(..) => {
                CliError::Budget(e.to_string())
            }
            MeasureError::Sieve(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SubshiftError> for CliError {
    fn from(e: SubshiftError) -> Self {
        match e {
            SubshiftError::LengthOverCap(..) | SubshiftError::StateBudgetExceeded(..) => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Overflow => CliError::Budget(e.to_string()),
            DynamicsError::Measure(e) => e.into(),
            DynamicsError::Sieve(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ChowlaError> for CliError {
    fn from(e: ChowlaError) -> Self {
        match e {
            ChowlaError::SigmaInfinite => CliError::Unsupported(e.to_string()),
            ChowlaError::Sieve(e) => e.into(),
            ChowlaError::Measure(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("io: {e}"))
    }
}

fn main() {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("BFREE_THREADS").ok().and_then(|s| s.parse().ok())
    });
    if let Some(t) = threads {
        if t >= 1 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    let mut emitter = Emitter::new(cli.format);
    let outcome = run(&cli, &mut emitter).and_then(|()| emitter.finish().map_err(CliError::from));
    if let Err(e) = outcome {
        let diagnostic = json!({"error": e.kind(), "message": e.message()});
        eprintln!("{diagnostic}");
        std::process::exit(e.exit_code());
    }
}

fn budgets(cli: &Cli) -> Budgets {
    let mut b = Budgets::default();
    if let Some(p) = cli.budget_period {
        b.period_limit = p;
    }
    if let Some(s) = cli.budget_states {
        b.state_bits = s;
    }
    b
}

fn load_family(cli: &Cli) -> Result<(BFamily, String), CliError> {
    let path = cli
        .family
        .as_ref()
        .ok_or_else(|| CliError::Validation("--family <path> is required".into()))?;
    let spec = FamilySpec::from_json_file(path)?;
    let family = validate_family(&spec)?;
    let digest = hex::encode(Sha256::digest(family.canonical_description().as_bytes()));
    Ok((family, digest[..16].to_string()))
}

fn require_seed(cli: &Cli) -> Result<u64, CliError> {
    cli.seed.ok_or_else(|| CliError::Validation("--seed is required for this subcommand".into()))
}

fn iv_json(iv: &IntervalValue) -> Value {
    json!({
        "lo": format_ratio(iv.lo()),
        "hi": format_ratio(iv.hi()),
        "exact": iv.is_exact(),
        "lo_f64": to_f64(iv.lo()),
        "hi_f64": to_f64(iv.hi()),
    })
}

fn frequency_json(
    cmd: &str,
    method: &str,
    digest: &str,
    seed: Option<u64>,
    rep: &FrequencyReport,
    extra: &[(&str, Value)],
) -> Value {
    let mut obj = json!({
        "cmd": cmd,
        "method": method,
        "family": digest,
        "seed": seed,
        "pattern": rep.pattern,
        "scope": rep.scope,
        "samples": rep.samples,
        "matches": rep.matches,
        "empirical": format_ratio(&rep.empirical),
        "empirical_f64": to_f64(&rep.empirical),
        "reference": iv_json(&rep.reference),
        "gap": format_ratio(&rep.gap),
        "gap_f64": to_f64(&rep.gap),
    });
    let map = obj.as_object_mut().unwrap();
    for (k, v) in extra {
        map.insert((*k).to_string(), v.clone());
    }
    obj
}

fn run(cli: &Cli, out: &mut Emitter) -> Result<(), CliError> {
    let budgets = budgets(cli);
    match &cli.cmd {
        Cmd::Sieve { lo, hi, mu, hex: hex_out } => {
            let (family, digest) = load_family(cli)?;
            let seg = if *mu {
                sieve_mu(&family, *lo, *hi)?
            } else {
                sieve_eta(&family, *lo, *hi)?
            };
            if *hex_out {
                out.record(json!({
                    "cmd": "sieve",
                    "method": "segmented",
                    "family": digest,
                    "seed": null,
                    "lo": lo,
                    "hi": hi,
                    "encoding": "hex bytes, bit 8j+i of byte j is eta at lo+8j+i",
                    "eta_hex": seg.eta().to_hex(),
                }))?;
            } else {
                for n in *lo..*hi {
                    let mut rec = json!({
                        "cmd": "sieve",
                        "method": "segmented",
                        "family": digest,
                        "seed": null,
                        "n": n,
                        "eta": seg.eta_at(n) as u8,
                    });
                    if *mu {
                        let map = rec.as_object_mut().unwrap();
                        map.insert("delta".into(), json!(seg.delta_at(n).unwrap()));
                        map.insert("pi".into(), json!(seg.pi_at(n).unwrap()));
                        map.insert("mu".into(), json!(seg.mu_at(n).unwrap()));
                    }
                    out.record(rec)?;
                }
            }
        }
        Cmd::Twins { gap, n } => {
            let (family, digest) = load_family(cli)?;
            let count = twin_count(&family, *n, *gap)?;
            let frequency = bfree_core::rat::rat_u64(count, *n);
            out.record(json!({
                "cmd": "twins",
                "method": "segmented",
                "family": digest,
                "seed": null,
                "N": n,
                "gap": gap,
                "count": count,
                "frequency": format_ratio(&frequency),
                "frequency_f64": to_f64(&frequency),
            }))?;
        }
        Cmd::Measure { pattern, k } => {
            let (family, digest) = load_family(cli)?;
            let depth =
                k.unwrap_or_else(|| family.index_upper_bound(bfree_core::dynamics::REFERENCE_MODULUS_LIMIT));
            let signed = pattern.contains('+') || pattern.contains('-');
            let iv = if signed {
                let sp = SignedPattern::parse(pattern)?;
                nu_m_cylinder(&sp, &family, depth, &budgets)?
            } else {
                let p = Pattern::parse(pattern)?;
                nu_cylinder(&p, &family, depth, &budgets)?
            };
            out.record(json!({
                "cmd": "measure",
                "method": if signed { "nu_M" } else { "nu_B" },
                "family": digest,
                "seed": null,
                "pattern": pattern,
                "K": depth,
                "lo": format_ratio(iv.lo()),
                "hi": format_ratio(iv.hi()),
                "exact": iv.is_exact(),
                "lo_f64": to_f64(iv.lo()),
                "hi_f64": to_f64(iv.hi()),
            }))?;
        }
        Cmd::Admissible { pattern } => {
            let (family, digest) = load_family(cli)?;
            let p = Pattern::parse(pattern)?;
            let ones = p.ones();
            let violated = first_violated_modulus(&ones, &family);
            out.record(json!({
                "cmd": "admissible",
                "method": "residue-count",
                "family": digest,
                "seed": null,
                "pattern": pattern,
                "admissible": violated.is_none(),
                "violated_modulus": violated,
            }))?;
        }
        Cmd::Gamma { n, method } => {
            let (family, digest) = load_family(cli)?;
            let (wc, method_name) = match method {
                GammaMethod::Brute => (count_words_bruteforce(*n, &family, &budgets)?, "brute"),
                GammaMethod::Dp => (count_words_dp(*n, &family, &budgets)?, "dp"),
            };
            out.record(json!({
                "cmd": "gamma",
                "method": method_name,
                "family": digest,
                "seed": null,
                "n": n,
                "k_effective": wc.k_effective,
                "count": wc.count.to_string(),
                "log2_per_symbol": log2_biguint(&wc.count) / *n as f64,
            }))?;
        }
        Cmd::Entropy { k } => {
            let (family, digest) = load_family(cli)?;
            let depth = k.unwrap_or_else(|| family.enumerated_len());
            let iv = bfree_core::subshift::entropy_interval(&family, depth)?;
            let mut rec = json!({
                "cmd": "entropy",
                "method": "truncated-product",
                "family": digest,
                "seed": null,
                "K": depth,
            });
            merge(&mut rec, iv_json(&iv));
            out.record(rec)?;
        }
        Cmd::Generic { pattern, n } => {
            let (family, digest) = load_family(cli)?;
            let p = Pattern::parse(pattern)?;
            let rep = empirical_frequency(&family, &p, *n, &budgets)?;
            out.record(frequency_json("generic", "orbit-scan", &digest, None, &rep, &[]))?;
        }
        Cmd::Short { pattern, n } => {
            let (family, digest) = load_family(cli)?;
            let p = Pattern::parse(pattern)?;
            let rep = short_interval_frequency(&family, &p, *n, &budgets)?;
            let supported = hypothesis_holds_structurally(&family);
            out.record(frequency_json(
                "short",
                "short-interval-scan",
                &digest,
                None,
                &rep,
                &[("hypothesis_supported", json!(supported))],
            ))?;
            let hyp = short_interval_hypothesis_check(&family, 1_000.min(*n), *n)?;
            out.record(json!({
                "cmd": "short",
                "method": "hypothesis-check",
                "family": digest,
                "seed": null,
                "x_lo": 1_000.min(*n),
                "x_hi": n,
                "max_count": hyp.max_count,
                "argmax": hyp.argmax,
                "samples": hyp.samples,
            }))?;
        }
        Cmd::Arith { pattern, p, s, n } => {
            let (family, digest) = load_family(cli)?;
            let pat = Pattern::parse(pattern)?;
            let (rep, m) = arithmetic_average(&family, &pat, *p, *s, *n, &budgets)?;
            out.record(frequency_json(
                "arith",
                "arithmetic-scan",
                &digest,
                None,
                &rep,
                &[("p", json!(p)), ("s", json!(s)), ("m", json!(m))],
            ))?;
        }
        Cmd::Recover { k, window, trials } => {
            let (family, digest) = load_family(cli)?;
            let seed = require_seed(cli)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut singleton_trials = 0u64;
            let mut contained = 0u64;
            for trial in 0..*trials {
                let point = GroupPoint::random(&family, *k, &mut rng)?;
                let coded = phi_window(&point, *window);
                let candidates = recover_coordinates(&coded, &family, *k)?;
                let contains_true = candidates
                    .iter()
                    .zip(point.coords())
                    .all(|(set, c)| set.contains(c));
                let singleton = candidates
                    .iter()
                    .zip(point.coords())
                    .all(|(set, &c)| set.as_slice() == [c]);
                contained += contains_true as u64;
                singleton_trials += singleton as u64;
                out.record(json!({
                    "cmd": "recover",
                    "method": "vanishing-progressions",
                    "family": digest,
                    "seed": seed,
                    "trial": trial,
                    "coords": point.coords(),
                    "candidates": candidates,
                    "contains_true": contains_true,
                    "singleton": singleton,
                }))?;
            }
            out.record(json!({
                "cmd": "recover",
                "method": "summary",
                "family": digest,
                "seed": seed,
                "trials": trials,
                "window": window,
                "K": k,
                "singleton_trials": singleton_trials,
                "contains_true_trials": contained,
            }))?;
        }
        Cmd::Chowla { shifts, exponents, n } => {
            let (family, digest) = load_family(cli)?;
            let max_shift = shifts.iter().max().copied().unwrap_or(0);
            let seg = sieve_mu(&family, 1, n + max_shift + 1)?;
            let value = chowla_correlation(&seg, shifts, exponents, *n)?;
            let depth = family.index_upper_bound(bfree_core::dynamics::REFERENCE_MODULUS_LIMIT);
            let reference = nu_m_correlation(shifts, exponents, &family, depth)?;
            let all_even = exponents.iter().all(|&e| e == 2);
            let sigma_finite = family.sigma_enclosure().is_some();
            let note = if all_even {
                "all exponents even: plain eta statistics, reference asserted"
            } else if sigma_finite {
                "nu_M reference shown; convergence to it is not asserted"
            } else {
                "conjectural: no reference measure (Sigma diverges)"
            };
            out.record(json!({
                "cmd": "chowla",
                "method": "mu-window",
                "family": digest,
                "seed": null,
                "shifts": shifts,
                "exponents": exponents,
                "N": n,
                "value": format_ratio(&value),
                "value_f64": to_f64(&value),
                "reference": iv_json(&reference),
                "note": note,
            }))?;
        }
        Cmd::Nuprime { pattern, method, n, samples, k } => {
            let (family, digest) = load_family(cli)?;
            let signs = parse_signs(pattern)?;
            let depth = k.unwrap_or_else(|| family.enumerated_len());
            let ctx = RootedContext::new(family, depth)?;
            let reference = width_one_reference(&ctx, &signs)?;
            match method {
                NuMethod::Orbit => {
                    let n = n.ok_or_else(|| {
                        CliError::Validation("--N is required for the orbit method".into())
                    })?;
                    let estimate = nu_prime_empirical(&ctx, &signs, n)?;
                    out.record(json!({
                        "cmd": "nuprime",
                        "method": "orbit",
                        "family": digest,
                        "seed": null,
                        "pattern": pattern,
                        "N": n,
                        "estimate": format_ratio(&estimate),
                        "estimate_f64": to_f64(&estimate),
                        "reference": reference,
                        "note": if ctx.sigma_is_finite() {
                            "Sigma finite: orbit average converges to nu'"
                        } else {
                            "conjectural: no reference measure (Sigma diverges)"
                        },
                    }))?;
                }
                NuMethod::Mc => {
                    let samples = samples.ok_or_else(|| {
                        CliError::Validation("--samples is required for the mc method".into())
                    })?;
                    let seed = require_seed(cli)?;
                    let est = nu_prime_montecarlo(&ctx, &signs, samples, seed)?;
                    out.record(json!({
                        "cmd": "nuprime",
                        "method": "mc",
                        "family": digest,
                        "seed": seed,
                        "pattern": pattern,
                        "samples": samples,
                        "estimate": format_ratio(&est.estimate),
                        "estimate_f64": to_f64(&est.estimate),
                        "std_error": est.std_error,
                        "tail_error": format_ratio(&est.tail_error),
                        "total_error": est.total_error(),
                        "reference": reference,
                    }))?;
                }
            }
        }
        Cmd::Bernoulli { roots_sweep, m, samples, prime_lo } => {
            if roots_sweep.is_empty() {
                return Err(CliError::Validation("--roots-sweep needs at least one X".into()));
            }
            let (samples, seed) = if *m >= 2 {
                (
                    samples.ok_or_else(|| {
                        CliError::Validation("--samples is required for m >= 2".into())
                    })?,
                    require_seed(cli)?,
                )
            } else {
                (0, cli.seed.unwrap_or(0))
            };
            let mut contexts = Vec::new();
            for &x in roots_sweep {
                let spec = FamilySpec::RootedPrimes {
                    prime_lo: *prime_lo,
                    prime_hi: Some(x),
                    prime_limit: bfree_core::family::DEFAULT_PRIME_LIMIT,
                };
                let family = validate_family(&spec)?;
                contexts.push((format!("primes in [{prime_lo}, {x}]"), RootedContext::with_full_depth(family)?));
            }
            let rows = bernoulli_convergence(&contexts, *m, samples, seed)?;
            for ((row, ctx), &x) in rows.iter().zip(&contexts).zip(roots_sweep) {
                let digest = hex::encode(Sha256::digest(
                    ctx.1.family().canonical_description().as_bytes(),
                ));
                out.record(json!({
                    "cmd": "bernoulli",
                    "method": if row.exact { "exact-sign-product" } else { "mc" },
                    "family": &digest[..16],
                    "seed": if row.exact { Value::Null } else { json!(seed) },
                    "label": row.label,
                    "X": x,
                    "m": m,
                    "sigma_lo": format_ratio(&row.sigma_lo),
                    "sigma_hi": format_ratio(&row.sigma_hi),
                    "sigma_f64": to_f64(&row.sigma_lo),
                    "deviation": format_ratio(&row.deviation),
                    "deviation_f64": to_f64(&row.deviation),
                    "error": row.error,
                    "exact": row.exact,
                    "samples": row.samples,
                }))?;
            }
        }
        Cmd::Bias { k } => {
            let (family, digest) = load_family(cli)?;
            let depth = k.unwrap_or_else(|| family.enumerated_len());
            let ctx = RootedContext::new(family, depth)?;
            let iv = bias(&ctx)?;
            let (sigma_lo, sigma_hi) = ctx.sigma().cloned().unwrap();
            let mut rec = json!({
                "cmd": "bias",
                "method": "sign-product",
                "family": digest,
                "seed": null,
                "K": ctx.depth(),
                "sigma_lo": format_ratio(&sigma_lo),
                "sigma_hi": format_ratio(&sigma_hi),
            });
            merge(&mut rec, iv_json(&iv));
            out.record(rec)?;
        }
    }
    Ok(())
}

fn merge(target: &mut Value, extra: Value) {
    let (Value::Object(target), Value::Object(extra)) = (target, extra) else {
        panic!("merge needs objects");
    };
    for (k, v) in extra {
        target.insert(k, v);
    }
}

fn parse_signs(pattern: &str) -> Result<Vec<i8>, CliError> {
    pattern
        .chars()
        .map(|c| match c {
            '+' => Ok(1i8),
            '-' => Ok(-1i8),
            other => Err(CliError::Validation(format!(
                "sign pattern may contain only '+' and '-', got {other:?}"
            ))),
        })
        .collect()
}

/// For width-1 patterns with finite Sigma the law is explicit:
/// nu'(+1) = (1 + prod(1 - 2/a_k))/2 and nu'(-1) its complement.
fn width_one_reference(ctx: &RootedContext, signs: &[i8]) -> Result<Value, CliError> {
    if signs.len() != 1 || !ctx.sigma_is_finite() {
        return Ok(Value::Null);
    }
    let b = bias(ctx)?;
    let iv = if signs[0] == 1 {
        b
    } else {
        let one = bfree_core::rat::rat_u64(1, 1);
        IntervalValue::bounds(one.clone() - b.hi().clone(), one - b.lo().clone())
    };
    Ok(iv_json(&iv))
}
