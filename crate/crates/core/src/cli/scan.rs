use std::io::Write;

use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use super::output::{num, render, Record, Value};
use super::{verdict_fields, Context, Failure, Span};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::primover::{
    classify, is_primover, repunit_verdict, wagstaff_verdict, z_pq_report, PrimoverClass, PrimoverVerdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Composite n in the range that are primover in the base.
    Overpseudoprime,
    /// (2^p + 1)/3 for odd primes p in the range, base 2.
    Wagstaff,
    /// (k^n - 1)/(k - 1) for n in the range.
    Repunit,
    /// (k-1)(k^pq - 1)/((k^p - 1)(k^q - 1)) for primes p < q in the range.
    ZPq,
}

const MAX_OVERPSEUDOPRIME: u64 = 10_000_000;
const MAX_OVERPSEUDOPRIME_SPAN: u64 = 1_000_000;
const MAX_EXPONENT: u64 = 4000;
const MAX_PQ_PRIME: u64 = 200;

#[derive(Debug, Args)]
pub(crate) struct ScanArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    base: u64,
    /// Parameter range `a..b`, inclusive.
    #[arg(long)]
    range: Span,
}

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Usage(format!("{what} is beyond the desk-scale limit")))
    }
}

fn optional_verdict(v: Option<&PrimoverVerdict>) -> Record {
    match v {
        Some(v) => verdict_fields(v),
        None => vec![
            ("class", Value::Missing),
            ("order", Value::Missing),
            ("witness", Value::Rows(Vec::new())),
            ("coset_identity", Value::Missing),
        ],
    }
}

fn member(family: Family, base: u64, x: u64) -> Result<Option<Record>> {
    Ok(match family {
        Family::Overpseudoprime => {
            if x < 4 || x.gcd(&base) != 1 || is_prime(&b(x)) {
                return Ok(None);
            }
            if classify(&b(x), &b(base))?.class != PrimoverClass::Overpseudoprime {
                return Ok(None);
            }
            let v = is_primover(&b(x), &b(base))?;
            let mut r = vec![("n", num(x)), ("base", num(base))];
            r.extend(verdict_fields(&v));
            Some(r)
        }
        Family::Wagstaff => {
            if x < 3 || !is_prime(&b(x)) {
                return Ok(None);
            }
            let (value, v) = wagstaff_verdict(&b(x))?;
            let mut r = vec![("p", num(x)), ("value", num(value))];
            r.extend(verdict_fields(&v));
            Some(r)
        }
        Family::Repunit => {
            if x < 2 {
                return Ok(None);
            }
            let (value, v) = repunit_verdict(x as u32, &b(base))?;
            let mut r = vec![
                ("n", num(x)),
                ("base", num(base)),
                ("n_is_prime", Value::Bool(is_prime(&b(x)))),
                ("value", num(value)),
            ];
            r.extend(verdict_fields(&v));
            Some(r)
        }
        Family::ZPq => unreachable!("pairs are scanned separately"),
    })
}

fn pq_record(p: u64, q: u64, base: u64) -> Result<Record> {
    let rep = z_pq_report(&b(p), &b(q), &b(base))?;
    let mut r = vec![
        ("p", num(p)),
        ("q", num(q)),
        ("base", num(base)),
        ("value", num(&rep.value)),
        ("zsigmondy", num(&rep.zsigmondy)),
        ("preconditions_hold", Value::Bool(rep.preconditions_hold)),
        ("identity_holds", Value::Bool(rep.identity_holds())),
    ];
    r.extend(optional_verdict(rep.verdict.as_ref()));
    Ok(r)
}

/// Family members in the range, in parameter order.
pub(crate) fn scan(family: Family, base: u64, range: Span, jobs: usize) -> Result<Vec<Record>> {
    check(base >= 2, "base below 2")?;
    match family {
        Family::Overpseudoprime => check(
            range.hi <= MAX_OVERPSEUDOPRIME && range.count() <= MAX_OVERPSEUDOPRIME_SPAN,
            "range",
        )?,
        Family::Wagstaff => {
            check(range.hi <= MAX_EXPONENT, "range")?;
            if base != 2 {
                return Err(Error::Usage("Wagstaff numbers are scanned in base 2 only".into()));
            }
        }
        Family::Repunit => check(range.hi <= MAX_EXPONENT, "range")?,
        Family::ZPq => check(range.hi <= MAX_PQ_PRIME, "range")?,
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| {
        if family == Family::ZPq {
            let primes: Vec<u64> = range.iter().filter(|&p| is_prime(&b(p)) && !base.is_multiple_of(p)).collect();
            let pairs: Vec<(u64, u64)> = primes
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| primes[i + 1..].iter().map(move |&q| (p, q)))
                .collect();
            return pairs.par_iter().map(|&(p, q)| pq_record(p, q, base)).collect();
        }
        let found: Vec<Option<Record>> = range
            .iter()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&x| member(family, base, x))
            .collect::<Result<_>>()?;
        Ok(found.into_iter().flatten().collect())
    })
}

pub(crate) fn run(args: ScanArgs, ctx: &Context, out: &mut dyn Write) -> std::result::Result<bool, Failure> {
    let records = scan(args.family, args.base, args.range, ctx.jobs)?;
    render(ctx.format, &records, out)?;
    Ok(true)
}
