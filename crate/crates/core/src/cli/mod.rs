//! The `pindex` command line: one subcommand per operation, a
//! formula-versus-oracle sweep harness (`verify`) and a family scanner
//! (`scan`).
//!
//! Exit status is 0 on success (an absent index is a result), 1 when a
//! sweep finds a mismatch and 2 on usage or domain errors.

mod output;
mod scan;
mod verify;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::arith::Factorization;
use crate::error::Error;
use crate::order_invariance::{cyclotomic_coset_count, lambda_period, mult_order, mult_order_naive};
use crate::primitive_index::{
    gamma, nu2_plus, pidx_minus, pidx_minus_oracle_with, pidx_plus, pidx_plus_oracle_with, BasePair,
    IndexResult, ScanConfig,
};
use crate::primover::{is_primover, repunit_verdict, wagstaff_verdict, PrimoverVerdict};
use crate::zsigmondy::{
    homog_cyclotomic, homog_cyclotomic_mobius, zsigmondy_minus, zsigmondy_minus_direct, zsigmondy_plus,
    zsigmondy_plus_direct, ZsigmondyValue,
};

pub use output::{Format, Record, Value};
pub use scan::Family;
pub use verify::{shift_sample, verify, Mismatch, SweepReport, Target, VerifyRequest, SHIFT_SAMPLE_SEED};

use output::{num, opt_num, render, text, witness_rows};

#[derive(Debug, Parser)]
#[command(
    name = "pindex",
    version,
    about = "Primitive indexes, multiplicative orders, Zsigmondy numbers and primover classification"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for verify and scan.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Scan bound for oracles when the modulus shares a factor with k or h
    /// (default 10·N).
    #[arg(long, global = true, value_parser = parse_big)]
    scan_limit: Option<BigUint>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Least u with N | k^u - h^u.
    PidxMinus(IndexArgs),
    /// Least u with N | k^u + h^u.
    PidxPlus(IndexArgs),
    /// Multiplicative order of k modulo N.
    Order {
        #[arg(long, value_parser = parse_big)]
        modulus: BigUint,
        #[arg(long, value_parser = parse_big)]
        k: BigUint,
        /// Step through the powers of k instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Lifting exponent γ_p(k,h).
    Gamma {
        #[arg(long, value_parser = parse_big)]
        p: BigUint,
        #[arg(long, value_parser = parse_big)]
        k: BigUint,
        #[arg(long, value_parser = parse_big, default_value = "1")]
        h: BigUint,
    },
    /// Shift period Λ of a base over a set of primes.
    Lambda {
        #[arg(long, value_parser = parse_big, value_delimiter = ',', required = true)]
        primes: Vec<BigUint>,
        #[arg(long, value_parser = parse_big)]
        k: BigUint,
    },
    /// 2-adic valuation of k^n + h^n.
    Nu2Plus(PairArgs),
    /// Homogenized cyclotomic value Φₙ(k,h).
    Cyclotomic(PairArgs),
    /// Zsigmondy number 𝒵(n,k,h) of k^u - h^u.
    Zsigmondy(ZsigmondyArgs),
    /// Zsigmondy number ζ(n,k,h) of k^u + h^u.
    Zeta(ZsigmondyArgs),
    /// Prime / overpseudoprime / ordinary composite classification.
    Primover {
        #[arg(long, value_parser = parse_big)]
        n: BigUint,
        #[arg(long, value_parser = parse_big)]
        base: BigUint,
    },
    /// Number of orbits of s ↦ k·s on the nonzero residues mod n.
    CosetCount {
        #[arg(long, value_parser = parse_big)]
        n: BigUint,
        #[arg(long, value_parser = parse_big)]
        k: BigUint,
    },
    /// Wagstaff number (2^p + 1)/3 and its classification base 2.
    Wagstaff {
        #[arg(long, value_parser = parse_big)]
        p: BigUint,
    },
    /// Repunit (k^n - 1)/(k - 1) and its classification base k.
    Repunit {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_big)]
        base: BigUint,
    },
    /// Compare closed forms with their oracles over a range.
    Verify(verify::VerifyArgs),
    /// List the members of a primover family in a range.
    Scan(scan::ScanArgs),
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[arg(long, value_parser = parse_big)]
    modulus: BigUint,
    #[arg(long, value_parser = parse_big)]
    k: BigUint,
    #[arg(long, value_parser = parse_big, default_value = "1")]
    h: BigUint,
    /// Scan the sequence instead of using the closed form.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_parser = parse_big)]
    k: BigUint,
    #[arg(long, value_parser = parse_big, default_value = "1")]
    h: BigUint,
}

#[derive(Debug, Args)]
struct ZsigmondyArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Strip earlier-term primes from the n-th term instead.
    #[arg(long)]
    oracle: bool,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

pub(crate) struct Context {
    pub format: Format,
    pub jobs: usize,
    pub scan: ScanConfig,
}

/// Runs the command line given by `args` (program name first) and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let ctx = Context {
        format: cli.format,
        jobs: cli.jobs.max(1),
        scan: ScanConfig {
            limit: cli.scan_limit,
            full_linear: false,
        },
    };
    match execute(cli.command, &ctx, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Lib(Error::Mismatch(m))) => {
            let _ = writeln!(err, "error: cross-check failed: {m}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// [`run`] on the process arguments and standard streams.
pub fn main() -> i32 {
    let (stdout, stderr) = (io::stdout(), io::stderr());
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s.trim()).map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn pair_of(k: &BigUint, h: &BigUint) -> Result<BasePair, Failure> {
    Ok(BasePair::new(k.clone(), h.clone())?)
}

fn index_record(r: &IndexResult, pair: &BasePair) -> Record {
    let index = match r.value() {
        Some(u) => num(u),
        None => text(&r.index),
    };
    vec![
        ("sequence", text(r.sequence)),
        ("modulus", num(&r.modulus)),
        ("k", num(pair.k())),
        ("h", num(pair.h())),
        ("index", index),
        ("method", text(r.method)),
    ]
}

pub(crate) fn zsigmondy_record(z: &ZsigmondyValue) -> Record {
    vec![
        ("sequence", text(z.sequence)),
        ("n", num(z.n)),
        ("k", num(z.pair.k())),
        ("h", num(z.pair.h())),
        ("phi", num(&z.phi_value)),
        ("exceptional_prime", opt_num(z.exceptional_prime.as_ref())),
        ("value", num(&z.value)),
        ("method", text(z.method)),
    ]
}

pub(crate) fn verdict_fields(v: &PrimoverVerdict) -> Record {
    vec![
        ("class", text(v.class)),
        ("order", num(&v.order)),
        ("witness", witness_rows(&v.witness)),
        (
            "coset_identity",
            v.coset_identity_holds.map_or(Value::Missing, Value::Bool),
        ),
    ]
}

fn execute(command: Command, ctx: &Context, out: &mut dyn Write) -> Result<bool, Failure> {
    let record: Record = match command {
        Command::Verify(args) => return verify::run(args, ctx, out),
        Command::Scan(args) => return scan::run(args, ctx, out),
        Command::PidxMinus(a) => {
            let pair = pair_of(&a.k, &a.h)?;
            let r = if a.oracle {
                pidx_minus_oracle_with(&a.modulus, &pair, &ctx.scan)?
            } else {
                pidx_minus(&a.modulus, &pair)?
            };
            index_record(&r, &pair)
        }
        Command::PidxPlus(a) => {
            let pair = pair_of(&a.k, &a.h)?;
            let r = if a.oracle {
                pidx_plus_oracle_with(&a.modulus, &pair, &ctx.scan)?
            } else {
                pidx_plus(&a.modulus, &pair)?
            };
            index_record(&r, &pair)
        }
        Command::Order { modulus, k, oracle } => {
            let (order, method) = if oracle {
                (mult_order_naive(&modulus, &k)?, "oracle")
            } else {
                (mult_order(&modulus, &k)?, "formula")
            };
            vec![
                ("modulus", num(&modulus)),
                ("k", num(&k)),
                ("order", num(order)),
                ("method", text(method)),
            ]
        }
        Command::Gamma { p, k, h } => {
            let g = gamma(&p, &pair_of(&k, &h)?)?;
            vec![
                ("p", num(&p)),
                ("k", num(&k)),
                ("h", num(&h)),
                ("gamma", num(g.value)),
                ("branch", text(g.branch)),
            ]
        }
        Command::Lambda { primes, k } => {
            let l = lambda_period(&primes, &k)?;
            vec![
                ("primes", text(radical_list(&l.modulus_class))),
                ("k", num(&k)),
                ("lambda", num(&l.value)),
            ]
        }
        Command::Nu2Plus(a) => {
            let pair = pair_of(&a.k, &a.h)?;
            vec![
                ("n", num(a.n)),
                ("k", num(&a.k)),
                ("h", num(&a.h)),
                ("nu2", num(nu2_plus(&pair, a.n)?)),
            ]
        }
        Command::Cyclotomic(a) => {
            let pair = pair_of(&a.k, &a.h)?;
            let phi = homog_cyclotomic(a.n, &pair)?;
            if phi != homog_cyclotomic_mobius(a.n, &pair)? {
                return Err(Error::Mismatch(format!("recursive and Möbius Φ_{} differ", a.n)).into());
            }
            vec![("n", num(a.n)), ("k", num(&a.k)), ("h", num(&a.h)), ("phi", num(phi))]
        }
        Command::Zsigmondy(a) => {
            let pair = pair_of(&a.pair.k, &a.pair.h)?;
            let z = if a.oracle {
                zsigmondy_minus_direct(a.pair.n, &pair)?
            } else {
                zsigmondy_minus(a.pair.n, &pair)?
            };
            zsigmondy_record(&z)
        }
        Command::Zeta(a) => {
            let pair = pair_of(&a.pair.k, &a.pair.h)?;
            let z = if a.oracle {
                zsigmondy_plus_direct(a.pair.n, &pair)?
            } else {
                zsigmondy_plus(a.pair.n, &pair)?
            };
            zsigmondy_record(&z)
        }
        Command::Primover { n, base } => {
            let v = is_primover(&n, &base)?;
            let mut r = vec![("n", num(&n)), ("base", num(&base))];
            r.extend(verdict_fields(&v));
            r
        }
        Command::CosetCount { n, k } => {
            let cosets = cyclotomic_coset_count(&n, &k)?;
            let order = mult_order(&n, &k)?;
            let holds = n == &order * cosets + 1u32;
            vec![
                ("n", num(&n)),
                ("k", num(&k)),
                ("cosets", num(cosets)),
                ("order", num(order)),
                ("coset_identity", Value::Bool(holds)),
            ]
        }
        Command::Wagstaff { p } => {
            let (value, v) = wagstaff_verdict(&p)?;
            let mut r = vec![("p", num(&p)), ("value", num(value))];
            r.extend(verdict_fields(&v));
            r
        }
        Command::Repunit { n, base } => {
            let mut r = vec![("n", num(n)), ("base", num(&base))];
            if n == 1 {
                r.push(("value", num(1u32)));
            } else {
                let (value, v) = repunit_verdict(n, &base)?;
                r.push(("value", num(value)));
                r.extend(verdict_fields(&v));
            }
            r
        }
    };
    render(ctx.format, &[record], out)?;
    Ok(true)
}

fn radical_list(f: &Factorization) -> String {
    f.primes().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Inclusive integer range written `a..b`, or a single `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    /// Number of values; at least 1.
    pub fn count(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("`{s}` is not a range a..b");
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}
