use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::output::{num, render, text, Format, Record, Value};
use super::{Context, Failure, Span};
use crate::arith::{factorize, is_prime, padic_valuation};
use crate::error::{Error, Result};
use crate::order_invariance::{
    coincidence_count, coincidence_count_direct, mult_order, mult_order_naive, order_shift_compare,
    pidx_shift_compare,
};
use crate::primitive_index::{
    nu2_plus, pidx_minus, pidx_minus_oracle_with, pidx_plus, pidx_plus_oracle_with, BasePair, ScanConfig,
};
use crate::zsigmondy::{zsigmondy_minus, zsigmondy_minus_direct, zsigmondy_plus, zsigmondy_plus_direct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Minus-index closed form against a linear scan.
    PidxMinus,
    /// Plus-index closed form against a linear scan.
    PidxPlus,
    /// Order via prime powers against stepping through powers.
    Order,
    /// Zsigmondy closed form against primitive-part stripping.
    Zsigmondy,
    /// ζ(n) from the plus sequence against 𝒵(2n).
    Zeta,
    /// ν₂(k^n + h^n) rule against the exact valuation, odd k and h.
    Theorem9,
    /// Prime-power order under the shift k → k + p^(γ+1)·m.
    Theorem3,
    /// Primitive index under the shift (k, h) → (k + Λ(k)m, h + Λ(h)m), on a
    /// seeded random sample.
    Theorem5,
    /// Coincidence count φ(n)/P against a direct count.
    Prop4,
}

impl Target {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

const SWEEP_PAIRS: [(u64, u64); 6] = [(2, 1), (3, 1), (3, 2), (5, 2), (10, 3), (4, 1)];
const ZSIGMONDY_PAIRS: [(u64, u64); 5] = [(2, 1), (3, 1), (3, 2), (5, 2), (10, 3)];
const ORDER_BASES: [u64; 5] = [2, 3, 5, 7, 10];
/// Seed of the default base-shift sample.
pub const SHIFT_SAMPLE_SEED: u64 = 0x5eed;

/// Largest case count any sweep will start.
pub const MAX_CASES: u64 = 5_000_000;
const MAX_SCAN_MODULUS: u64 = 200_000;
const MAX_ZSIGMONDY_N: u64 = 400;
const MAX_PAIR_BASE: u64 = 1_000_000;

/// What to sweep. Every `None` takes the target's default range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRequest {
    pub target: Target,
    pub n: Option<Span>,
    pub pairs: Option<Vec<(u64, u64)>>,
    pub bases: Option<Vec<u64>>,
    pub kmax: Option<u64>,
    pub nmax: Option<u64>,
    pub pmax: Option<u64>,
    pub mmax: Option<u64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl VerifyRequest {
    pub fn new(target: Target) -> Self {
        VerifyRequest {
            target,
            n: None,
            pairs: None,
            bases: None,
            kmax: None,
            nmax: None,
            pmax: None,
            mmax: None,
            samples: None,
            seed: None,
        }
    }
}

#[derive(Debug, Args)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    /// Range of n or N, `a..b` inclusive.
    #[arg(long)]
    n: Option<Span>,
    /// Base pairs `k,h`, space separated.
    #[arg(long, num_args = 1..)]
    pairs: Vec<String>,
    /// Bases for the order sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    bases: Vec<u64>,
    /// Largest base (theorem9, theorem3, theorem5).
    #[arg(long)]
    kmax: Option<u64>,
    /// Largest n (theorem9) or largest modulus (theorem5).
    #[arg(long)]
    nmax: Option<u64>,
    /// Largest prime power (theorem3).
    #[arg(long)]
    pmax: Option<u64>,
    /// Largest shift multiplier (theorem3, theorem5).
    #[arg(long)]
    mmax: Option<u64>,
    /// Sample size (theorem5).
    #[arg(long)]
    samples: Option<u64>,
    /// Sample seed (theorem5).
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_pairs(raw: &[String]) -> Result<Option<Vec<(u64, u64)>>> {
    if raw.is_empty() {
        return Ok(None);
    }
    let mut pairs = Vec::new();
    for token in raw.iter().flat_map(|s| s.split_whitespace()) {
        let bad = || Error::Usage(format!("`{token}` is not a pair k,h"));
        let (k, h) = token.split_once(',').ok_or_else(bad)?;
        let (k, h) = (k.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?);
        if k == 0 || h == 0 || k == h {
            return Err(Error::Usage(format!("pair {token} needs distinct positive bases")));
        }
        pairs.push((k, h));
    }
    Ok(Some(pairs))
}

impl TryFrom<VerifyArgs> for VerifyRequest {
    type Error = Error;

    fn try_from(a: VerifyArgs) -> Result<Self> {
        Ok(VerifyRequest {
            target: a.target,
            n: a.n,
            pairs: parse_pairs(&a.pairs)?,
            bases: (!a.bases.is_empty()).then_some(a.bases),
            kmax: a.kmax,
            nmax: a.nmax,
            pmax: a.pmax,
            mmax: a.mmax,
            samples: a.samples,
            seed: a.seed,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    pub formula: String,
    pub oracle: String,
}

/// Outcome of a sweep. `total_cases` counts evaluated cases only; cases
/// outside a precondition are counted in `excluded`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub command: String,
    pub parameter_ranges: String,
    pub total_cases: u64,
    pub excluded: u64,
    pub mismatches: Vec<Mismatch>,
    pub elapsed: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn summary(&self) -> Record {
        vec![
            ("command", text(&self.command)),
            ("parameter_ranges", text(&self.parameter_ranges)),
            ("total_cases", num(self.total_cases)),
            ("excluded", num(self.excluded)),
            ("mismatch_count", num(self.mismatches.len())),
        ]
    }

    fn mismatch_records(&self) -> Vec<Record> {
        self.mismatches
            .iter()
            .map(|m| {
                vec![
                    ("input", text(&m.input)),
                    ("formula", text(&m.formula)),
                    ("oracle", text(&m.oracle)),
                ]
            })
            .collect()
    }
}

enum Outcome {
    Excluded,
    Pass,
    Fail(Mismatch),
}

fn compare(input: impl FnOnce() -> String, formula: String, oracle: String) -> Outcome {
    if formula == oracle {
        Outcome::Pass
    } else {
        Outcome::Fail(Mismatch {
            input: input(),
            formula,
            oracle,
        })
    }
}

fn limit(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Usage(format!("{what} is beyond the desk-scale limit")))
    }
}

fn cases_limit(count: u64) -> Result<()> {
    limit(count <= MAX_CASES, &format!("{count} cases"))
}

fn pairs_label(pairs: &[(u64, u64)]) -> String {
    pairs.iter().map(|(k, h)| format!("{k},{h}")).collect::<Vec<_>>().join(" ")
}

fn check_pairs(pairs: &[(u64, u64)]) -> Result<()> {
    limit(pairs.iter().all(|&(k, h)| k <= MAX_PAIR_BASE && h <= MAX_PAIR_BASE), "a pair base")
}

fn evaluate<T: Sync>(
    jobs: usize,
    inputs: &[T],
    eval: impl Fn(&T) -> Result<Outcome> + Sync + Send,
) -> Result<(u64, u64, Vec<Mismatch>)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let outcomes: Vec<Outcome> = pool.install(|| inputs.par_iter().map(eval).collect::<Result<_>>())?;
    let (mut total, mut excluded, mut mismatches) = (0, 0, Vec::new());
    for o in outcomes {
        match o {
            Outcome::Excluded => excluded += 1,
            Outcome::Pass => total += 1,
            Outcome::Fail(m) => {
                total += 1;
                mismatches.push(m);
            }
        }
    }
    Ok((total, excluded, mismatches))
}

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn grid(n: Span, pairs: &[(u64, u64)]) -> Vec<(u64, u64, u64)> {
    n.iter()
        .flat_map(|n| pairs.iter().map(move |&(k, h)| (n, k, h)))
        .collect()
}

/// Runs a sweep. `scan` bounds the oracles on non-coprime moduli; the
/// minus-index sweep always scans linearly.
pub fn verify(req: &VerifyRequest, jobs: usize, scan: &ScanConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let jobs = jobs.max(1);
    let (ranges, (total, excluded, mismatches)) = match req.target {
        Target::PidxMinus | Target::PidxPlus => {
            let n = req.n.unwrap_or(Span { lo: 2, hi: 2000 });
            let pairs = req.pairs.clone().unwrap_or(SWEEP_PAIRS.to_vec());
            limit(n.lo >= 2 && n.hi <= MAX_SCAN_MODULUS, "modulus range")?;
            check_pairs(&pairs)?;
            cases_limit(n.count() * pairs.len() as u64)?;
            let plus = req.target == Target::PidxPlus;
            let config = ScanConfig {
                limit: scan.limit.clone(),
                full_linear: true,
            };
            let cases = grid(n, &pairs);
            let r = evaluate(jobs, &cases, |&(n, k, h)| {
                if n.gcd(&h) != 1 {
                    return Ok(Outcome::Excluded);
                }
                let pair = BasePair::new(k, h)?;
                let (f, o) = if plus {
                    (pidx_plus(&b(n), &pair)?, pidx_plus_oracle_with(&b(n), &pair, &config)?)
                } else {
                    (pidx_minus(&b(n), &pair)?, pidx_minus_oracle_with(&b(n), &pair, &config)?)
                };
                Ok(if f.index.agrees_with(&o.index) {
                    Outcome::Pass
                } else {
                    compare(|| format!("n={n} k={k} h={h}"), f.index.to_string(), o.index.to_string())
                })
            })?;
            (format!("n={n}; pairs={}", pairs_label(&pairs)), r)
        }
        Target::Order => {
            let n = req.n.unwrap_or(Span { lo: 2, hi: 10_000 });
            let bases = req.bases.clone().unwrap_or(ORDER_BASES.to_vec());
            limit(n.lo >= 2 && n.hi <= MAX_SCAN_MODULUS, "modulus range")?;
            limit(bases.iter().all(|&k| k >= 1), "base 0")?;
            cases_limit(n.count() * bases.len() as u64)?;
            let cases: Vec<(u64, u64)> = n.iter().flat_map(|n| bases.iter().map(move |&k| (n, k))).collect();
            let r = evaluate(jobs, &cases, |&(n, k)| {
                if n.gcd(&k) != 1 {
                    return Ok(Outcome::Excluded);
                }
                let f = mult_order(&b(n), &b(k))?;
                let o = mult_order_naive(&b(n), &b(k))?;
                Ok(compare(|| format!("n={n} k={k}"), f.to_string(), o.to_string()))
            })?;
            let bases = bases.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            (format!("n={n}; bases={bases}"), r)
        }
        Target::Zsigmondy | Target::Zeta => {
            let zeta = req.target == Target::Zeta;
            let default = if zeta { Span { lo: 2, hi: 25 } } else { Span { lo: 1, hi: 40 } };
            let n = req.n.unwrap_or(default);
            let pairs = req.pairs.clone().unwrap_or(ZSIGMONDY_PAIRS.to_vec());
            limit(n.lo >= 1 && n.hi <= MAX_ZSIGMONDY_N, "n range")?;
            check_pairs(&pairs)?;
            cases_limit(n.count() * pairs.len() as u64)?;
            let cases = grid(n, &pairs);
            let r = evaluate(jobs, &cases, |&(n, k, h)| {
                if k <= h || k.gcd(&h) != 1 || (zeta && n == 1 && (k + h) % 2 == 0) {
                    return Ok(Outcome::Excluded);
                }
                let pair = BasePair::new(k, h)?;
                let input = || format!("n={n} k={k} h={h}");
                if zeta {
                    let f = zsigmondy_minus(2 * n, &pair)?.value;
                    if zsigmondy_plus(n, &pair)?.value != f {
                        return Err(Error::Mismatch(format!("ζ closed form at {}", input())));
                    }
                    let o = zsigmondy_plus_direct(n, &pair)?.value;
                    Ok(compare(input, f.to_string(), o.to_string()))
                } else {
                    let f = zsigmondy_minus(n, &pair)?.value;
                    let o = zsigmondy_minus_direct(n, &pair)?.value;
                    Ok(compare(input, f.to_string(), o.to_string()))
                }
            })?;
            (format!("n={n}; pairs={}", pairs_label(&pairs)), r)
        }
        Target::Theorem9 => {
            let kmax = req.kmax.unwrap_or(49);
            let nmax = req.nmax.unwrap_or(16);
            limit(kmax <= 999 && nmax <= 1000, "kmax or nmax")?;
            let odd: Vec<u64> = (1..=kmax).step_by(2).collect();
            cases_limit((odd.len() * odd.len()) as u64 * nmax)?;
            let cases: Vec<(u64, u64, u64)> = odd
                .iter()
                .flat_map(|&k| odd.iter().flat_map(move |&h| (1..=nmax).map(move |n| (k, h, n))))
                .collect();
            let r = evaluate(jobs, &cases, |&(k, h, n)| {
                if k == h {
                    return Ok(Outcome::Excluded);
                }
                let f = nu2_plus(&BasePair::new(k, h)?, n)?;
                let o = padic_valuation(&b(2), &(b(k).pow(n as u32) + b(h).pow(n as u32)))?;
                Ok(compare(|| format!("k={k} h={h} n={n}"), f.to_string(), o.to_string()))
            })?;
            (format!("odd k,h<={kmax}; n=1..{nmax}"), r)
        }
        Target::Theorem3 => {
            let pmax = req.pmax.unwrap_or(1000);
            let kmax = req.kmax.unwrap_or(30);
            let mmax = req.mmax.unwrap_or(3);
            limit(pmax <= 100_000 && kmax <= 10_000 && mmax <= 1000, "pmax, kmax or mmax")?;
            let mut powers = Vec::new();
            for p in (2..=pmax).filter(|&p| is_prime(&b(p))) {
                let (mut q, mut a) = (p, 1u32);
                while q <= pmax {
                    powers.push((p, a));
                    q *= p;
                    a += 1;
                }
            }
            cases_limit(powers.len() as u64 * kmax * mmax)?;
            let cases: Vec<(u64, u32, u64, u64)> = powers
                .iter()
                .flat_map(|&(p, a)| (1..=kmax).flat_map(move |k| (1..=mmax).map(move |m| (p, a, k, m))))
                .collect();
            let r = evaluate(jobs, &cases, |&(p, a, k, m)| {
                if k == 1 || k % p == 0 {
                    return Ok(Outcome::Excluded);
                }
                let c = order_shift_compare(&b(p), a, &b(k), &b(m))?;
                Ok(compare(|| format!("p={p} a={a} k={k} m={m}"), c.after.to_string(), c.before.to_string()))
            })?;
            (format!("p^a<={pmax}; k=1..{kmax}; m=1..{mmax}"), r)
        }
        Target::Theorem5 => {
            let samples = req.samples.unwrap_or(200);
            let seed = req.seed.unwrap_or(SHIFT_SAMPLE_SEED);
            let nmax = req.nmax.unwrap_or(1000);
            let kmax = req.kmax.unwrap_or(60);
            let mmax = req.mmax.unwrap_or(3);
            limit(samples <= 100_000 && (2..=100_000).contains(&nmax), "samples or nmax")?;
            limit((2..=MAX_PAIR_BASE).contains(&kmax) && (1..=1000).contains(&mmax), "kmax or mmax")?;
            let (cases, rejected) = shift_sample(samples, seed, nmax, kmax, mmax);
            let (total, excluded, mismatches) = evaluate(jobs, &cases, |&(n, k, h, m)| {
                let primes: Vec<BigUint> = factorize(&b(n))?.primes().cloned().collect();
                let c = pidx_shift_compare(&primes, &b(n), &BasePair::new(k, h)?, &b(m))?;
                Ok(compare(
                    || format!("N={n} k={k} h={h} m={m}"),
                    c.after.to_string(),
                    c.before.to_string(),
                ))
            })?;
            (
                format!("seed={seed}; samples={samples}; N=2..{nmax}; k,h=1..{kmax}; m=1..{mmax}"),
                (total, excluded + rejected, mismatches),
            )
        }
        Target::Prop4 => {
            let n = req.n.unwrap_or(Span { lo: 2, hi: 500 });
            let pairs = req.pairs.clone().unwrap_or(SWEEP_PAIRS.to_vec());
            limit(n.lo >= 2 && n.hi <= MAX_SCAN_MODULUS, "modulus range")?;
            check_pairs(&pairs)?;
            cases_limit(n.count() * pairs.len() as u64)?;
            let cases = grid(n, &pairs);
            let r = evaluate(jobs, &cases, |&(n, k, h)| {
                if n.gcd(&(k * h)) != 1 {
                    return Ok(Outcome::Excluded);
                }
                let pair = BasePair::new(k, h)?;
                let f = coincidence_count(&b(n), &pair)?;
                let o = coincidence_count_direct(&b(n), &pair)?;
                Ok(compare(|| format!("n={n} k={k} h={h}"), f.to_string(), o.to_string()))
            })?;
            (format!("n={n}; pairs={}", pairs_label(&pairs)), r)
        }
    };
    Ok(SweepReport {
        command: format!("verify {}", req.target.name()),
        parameter_ranges: ranges,
        total_cases: total,
        excluded,
        mismatches,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Draws `(N, k, h, m)` uniformly from `[2, nmax] × [1, kmax]² × [1, mmax]`
/// until `samples` draws satisfy the preconditions: `k != h`, `N` coprime
/// to `kh`, and distinct shifted bases. Returns the sample and the number
/// of rejected draws.
pub fn shift_sample(samples: u64, seed: u64, nmax: u64, kmax: u64, mmax: u64) -> (Vec<(u64, u64, u64, u64)>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut cases, mut rejected) = (Vec::new(), 0);
    while (cases.len() as u64) < samples {
        let n = rng.random_range(2..=nmax);
        let k = rng.random_range(1..=kmax);
        let h = rng.random_range(1..=kmax);
        let m = rng.random_range(1..=mmax);
        if k == h || n.gcd(&(k * h)) != 1 || shifted_bases_collide(n, k, h, m) {
            rejected += 1;
            continue;
        }
        cases.push((n, k, h, m));
    }
    (cases, rejected)
}

fn shifted_bases_collide(n: u64, k: u64, h: u64, m: u64) -> bool {
    let primes: Vec<BigUint> = match factorize(&b(n)) {
        Ok(f) => f.primes().cloned().collect(),
        Err(_) => return true,
    };
    let period = |x: u64| crate::order_invariance::lambda_period(&primes, &b(x)).map(|l| l.value);
    match (period(k), period(h)) {
        (Ok(lk), Ok(lh)) => b(k) + lk * m == b(h) + lh * m,
        _ => true,
    }
}

pub(crate) fn run(args: VerifyArgs, ctx: &Context, out: &mut dyn Write) -> std::result::Result<bool, Failure> {
    let req = VerifyRequest::try_from(args)?;
    let report = verify(&req, ctx.jobs, &ctx.scan)?;
    let mut summary = report.summary();
    match ctx.format {
        Format::Text => {
            summary.push(("elapsed", text(format!("{:.3}", report.elapsed))));
            let mut records = vec![summary];
            records.extend(report.mismatch_records().into_iter().map(|mut r| {
                r.insert(0, ("mismatch", num(1u32)));
                r
            }));
            render(Format::Text, &records, out)?;
        }
        format => {
            summary.push(("mismatches", Value::Rows(report.mismatch_records())));
            summary.push(("elapsed", text(format!("{:.3}", report.elapsed))));
            render(format, &[summary], out)?;
        }
    }
    Ok(report.passed())
}
