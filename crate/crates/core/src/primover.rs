//! Primover classification and the closed-form primover families.
//!
//! `n` is primover base `k` when every divisor `d > 1` of `n` has the same
//! multiplicative order `O_d(k)`. Primes qualify trivially; composites that
//! qualify are overpseudoprimes.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, Factorization};
use crate::error::{domain, usage, Error, Result};
use crate::order_invariance::{cyclotomic_coset_count, mult_order, mult_order_naive};
use crate::primitive_index::BasePair;
use crate::zsigmondy::zsigmondy_minus;

/// The coset identity is only evaluated up to this `n`.
pub const COSET_LIMIT: u64 = 1_000_000;

/// Above this many divisors the all-divisor cross-check is skipped.
const CROSS_CHECK_DIVISORS: u64 = 64;

/// Values with more bits than this are classified without factoring.
pub const FACTOR_BITS: u64 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimoverClass {
    Prime,
    Overpseudoprime,
    OrdinaryComposite,
}

impl PrimoverClass {
    pub fn is_primover(self) -> bool {
        self != PrimoverClass::OrdinaryComposite
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PrimoverClass::Prime => "prime",
            PrimoverClass::Overpseudoprime => "overpseudoprime",
            PrimoverClass::OrdinaryComposite => "ordinary_composite",
        }
    }
}

impl fmt::Display for PrimoverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimoverVerdict {
    pub n: BigUint,
    pub base: BigUint,
    pub class: PrimoverClass,
    /// `O_n(base)`.
    pub order: BigUint,
    /// `(d, O_d(base))` pairs. A prime lists only itself; an overpseudoprime
    /// lists its prime and prime-power divisors and then itself (only itself
    /// when classified by [`primover_by_order`]); an ordinary composite lists
    /// itself and one divisor of different order.
    pub witness: Vec<(BigUint, BigUint)>,
    /// `n = r·O_n + 1` with `r` the number of cyclotomic cosets; `None` when
    /// `n` is above [`COSET_LIMIT`].
    pub coset_identity_holds: Option<bool>,
}

impl PrimoverVerdict {
    pub fn is_primover(&self) -> bool {
        self.class.is_primover()
    }
}

fn check_input(n: &BigUint, base: &BigUint) -> Result<()> {
    if *n < BigUint::from(2u32) {
        return usage(format!("n must be at least 2, got {n}"));
    }
    if *base < BigUint::from(2u32) {
        return usage(format!("base must be at least 2, got {base}"));
    }
    if !n.gcd(base).is_one() {
        return domain(format!("gcd({n}, {base}) must be 1"));
    }
    Ok(())
}

fn coset_identity(n: &BigUint, base: &BigUint, order: &BigUint) -> Result<Option<bool>> {
    if n.to_u64().is_none_or(|v| v > COSET_LIMIT) {
        return Ok(None);
    }
    let r = cyclotomic_coset_count(n, base)?;
    Ok(Some(*n == order * r + 1u32))
}

/// Classification by the divisor-order criterion, reduced to prime divisors:
/// `O_p | O_d | O_n` whenever `p | d | n`, so all divisors share one order
/// exactly when every prime divisor has order `O_n`.
pub fn is_primover(n: &BigUint, base: &BigUint) -> Result<PrimoverVerdict> {
    let verdict = classify(n, base)?;
    Ok(PrimoverVerdict {
        coset_identity_holds: coset_identity(n, base, &verdict.order)?,
        ..verdict
    })
}

/// [`is_primover`] without the coset identity, which costs a walk over all
/// residues.
pub fn classify(n: &BigUint, base: &BigUint) -> Result<PrimoverVerdict> {
    check_input(n, base)?;
    let f = factorize(n)?;
    let order = mult_order(n, base)?;
    let verdict = classify_factored(&f, base, &order)?;
    if f.divisor_count() <= CROSS_CHECK_DIVISORS {
        let by_divisors = class_over_divisors(&f, |d| mult_order(d, base))?;
        if by_divisors != verdict.class {
            return Err(Error::Mismatch(format!(
                "{n} base {base}: prime-divisor route says {}, all-divisor route says {by_divisors}",
                verdict.class
            )));
        }
    }
    Ok(verdict)
}

fn classify_factored(f: &Factorization, base: &BigUint, order: &BigUint) -> Result<PrimoverVerdict> {
    let n = f.value().clone();
    let verdict = |class, witness| PrimoverVerdict {
        n: n.clone(),
        base: base.clone(),
        class,
        order: order.clone(),
        witness,
        coset_identity_holds: None,
    };
    if f.is_prime() {
        return Ok(verdict(PrimoverClass::Prime, vec![(n.clone(), order.clone())]));
    }
    let mut witness = Vec::new();
    for (p, a) in f.factors() {
        let op = mult_order(p, base)?;
        if op != *order {
            return Ok(verdict(
                PrimoverClass::OrdinaryComposite,
                vec![(n.clone(), order.clone()), (p.clone(), op)],
            ));
        }
        witness.push((p.clone(), op));
        if *a > 1 {
            let q = p.pow(*a);
            let oq = mult_order(&q, base)?;
            witness.push((q, oq));
        }
    }
    witness.push((n.clone(), order.clone()));
    Ok(verdict(PrimoverClass::Overpseudoprime, witness))
}

fn class_over_divisors(
    f: &Factorization,
    mut order_of: impl FnMut(&BigUint) -> Result<BigUint>,
) -> Result<PrimoverClass> {
    if f.is_prime() {
        return Ok(PrimoverClass::Prime);
    }
    let mut orders = f.divisors().into_iter().skip(1).map(|d| order_of(&d));
    let first = orders.next().expect("composite has a divisor above 1")?;
    for o in orders {
        if o? != first {
            return Ok(PrimoverClass::OrdinaryComposite);
        }
    }
    Ok(PrimoverClass::Overpseudoprime)
}

/// The criterion applied literally: the order of every divisor `d > 1`,
/// each found by stepping through the powers of `base` modulo `d`.
pub fn primover_by_divisors(n: &BigUint, base: &BigUint) -> Result<PrimoverClass> {
    check_input(n, base)?;
    class_over_divisors(&factorize(n)?, |d| mult_order_naive(d, base))
}

/// Classification without factoring `n`, given its order `m = O_n(base)`.
///
/// Every prime divisor of `n` has order `m` exactly when
/// `gcd(n, base^(m/r) - 1) = 1` for each prime `r | m`. A nontrivial gcd is a
/// divisor of smaller order and becomes the counterexample witness.
pub fn primover_by_order(n: &BigUint, base: &BigUint, m: &BigUint) -> Result<PrimoverVerdict> {
    check_input(n, base)?;
    if m.is_zero() || !base.modpow(m, n).is_one() {
        return domain(format!("{base}^{m} is not 1 modulo {n}"));
    }
    let mut verdict = PrimoverVerdict {
        n: n.clone(),
        base: base.clone(),
        class: PrimoverClass::Overpseudoprime,
        order: m.clone(),
        witness: vec![(n.clone(), m.clone())],
        coset_identity_holds: None,
    };
    for r in factorize(m)?.primes() {
        let g = n.gcd(&(base.modpow(&(m / r), n) + n - 1u32));
        if !g.is_one() {
            verdict.class = PrimoverClass::OrdinaryComposite;
            if g == *n {
                return domain(format!("{m} is not the exact order of {base} modulo {n}"));
            }
            let og = order_dividing(&g, base, &(m / r))?;
            verdict.witness.push((g, og));
            return Ok(verdict);
        }
    }
    if is_prime(n) {
        verdict.class = PrimoverClass::Prime;
    }
    verdict.coset_identity_holds = coset_identity(n, base, m)?;
    Ok(verdict)
}

/// Least divisor `d` of `bound` with `base^d ≡ 1 (mod n)`, for an `n`
/// known to satisfy it at `bound`.
fn order_dividing(n: &BigUint, base: &BigUint, bound: &BigUint) -> Result<BigUint> {
    factorize(bound)?
        .divisors()
        .into_iter()
        .find(|d| base.modpow(d, n).is_one())
        .ok_or_else(|| Error::Mismatch(format!("{base}^{bound} is not 1 modulo {n}")))
}

fn family_verdict(value: &BigUint, base: &BigUint, order: &BigUint) -> Result<Option<PrimoverVerdict>> {
    if value.is_one() {
        return Ok(None);
    }
    classify_with_order(value, base, order).map(Some)
}

/// Factors small values and falls back to [`primover_by_order`] otherwise.
fn classify_with_order(value: &BigUint, base: &BigUint, order: &BigUint) -> Result<PrimoverVerdict> {
    if value.bits() <= FACTOR_BITS {
        is_primover(value, base)
    } else {
        primover_by_order(value, base, order)
    }
}

fn check_base(k: &BigUint) -> Result<()> {
    if *k < BigUint::from(2u32) {
        return usage(format!("base must be at least 2, got {k}"));
    }
    Ok(())
}

fn check_prime(p: &BigUint) -> Result<()> {
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    Ok(())
}

fn exponent(e: &BigUint) -> Result<u32> {
    match e.to_u32() {
        Some(v) if v <= 1 << 20 => Ok(v),
        _ => usage(format!("exponent {e} is too large")),
    }
}

/// `(k^n - 1)/(k - 1)`.
pub fn repunit(n: u32, k: &BigUint) -> Result<BigUint> {
    check_base(k)?;
    if n == 0 {
        return usage("n must be positive");
    }
    Ok((k.pow(n) - 1u32) / (k - 1u32))
}

/// The repunit and its verdict base `k`. Its order is exactly `n`: every
/// `k^d - 1` with `d < n` is smaller than the repunit.
pub fn repunit_verdict(n: u32, k: &BigUint) -> Result<(BigUint, PrimoverVerdict)> {
    let value = repunit(n, k)?;
    if value.is_one() {
        return domain("the repunit of length 1 is 1");
    }
    let verdict = classify_with_order(&value, k, &BigUint::from(n))?;
    Ok((value, verdict))
}

/// `(k-1)(k^{pq}-1) / ((k^p-1)(k^q-1))` for distinct primes with
/// `p != O_q(k)` and `q != O_p(k)`.
pub fn z_pq(p: &BigUint, q: &BigUint, k: &BigUint) -> Result<BigUint> {
    let report = z_pq_report(p, q, k)?;
    if !report.preconditions_hold {
        return domain(format!("{p} = O_{q}({k}) or {q} = O_{p}({k})"));
    }
    Ok(report.value)
}

/// A family value next to the Zsigmondy number it is claimed to equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub value: BigUint,
    pub zsigmondy: BigUint,
    pub preconditions_hold: bool,
    /// `None` when the value is 1.
    pub verdict: Option<PrimoverVerdict>,
}

impl FamilyReport {
    pub fn identity_holds(&self) -> bool {
        self.value == self.zsigmondy
    }
}

fn small_exponent(x: &BigUint) -> Result<u64> {
    match x.to_u64() {
        Some(v) if v <= crate::zsigmondy::MAX_EXPONENT => Ok(v),
        _ => usage(format!("{x} exceeds the exponent limit")),
    }
}

/// [`z_pq`] without rejecting the side conditions: reports the value, `𝒵(pq,k,1)`
/// and the verdict so each claim can be checked on its own.
pub fn z_pq_report(p: &BigUint, q: &BigUint, k: &BigUint) -> Result<FamilyReport> {
    check_prime(p)?;
    check_prime(q)?;
    check_base(k)?;
    if p == q {
        return domain("p and q must be distinct");
    }
    if (k % p).is_zero() || (k % q).is_zero() {
        return domain(format!("{k} must be coprime to {p} and {q}"));
    }
    let preconditions_hold = mult_order(q, k)? != *p && mult_order(p, k)? != *q;
    let (ep, eq) = (exponent(p)?, exponent(q)?);
    let one = || BigUint::one();
    let value = (k - one()) * (k.pow(ep * eq) - one()) / ((k.pow(ep) - one()) * (k.pow(eq) - one()));
    let pq = small_exponent(&(p * q))?;
    let zsigmondy = zsigmondy_minus(pq, &BasePair::new(k.clone(), 1u32)?)?.value;
    let verdict = family_verdict(&value, k, &(p * q))?;
    Ok(FamilyReport {
        value,
        zsigmondy,
        preconditions_hold,
        verdict,
    })
}

/// `(k-1)(k^{pO}-1) / (p(k^p-1)(k^O-1))` with `O = O_p(k)` prime.
pub fn z_p_op(p: &BigUint, k: &BigUint) -> Result<BigUint> {
    Ok(z_p_op_report(p, k)?.value)
}

pub fn z_p_op_report(p: &BigUint, k: &BigUint) -> Result<FamilyReport> {
    check_prime(p)?;
    check_base(k)?;
    if (k % p).is_zero() {
        return domain(format!("{p} divides {k}"));
    }
    let o = mult_order(p, k)?;
    if !is_prime(&o) {
        return domain(format!("O_{p}({k}) = {o} is not prime"));
    }
    let (ep, eo) = (exponent(p)?, exponent(&o)?);
    let one = || BigUint::one();
    let num = (k - one()) * (k.pow(ep * eo) - one());
    let den = p * (k.pow(ep) - one()) * (k.pow(eo) - one());
    let (value, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Mismatch(format!("{den} does not divide {num}")));
    }
    let po = small_exponent(&(p * &o))?;
    let zsigmondy = zsigmondy_minus(po, &BasePair::new(k.clone(), 1u32)?)?.value;
    let verdict = family_verdict(&value, k, &(p * &o))?;
    Ok(FamilyReport {
        value,
        zsigmondy,
        preconditions_hold: true,
        verdict,
    })
}

/// `(k^{n^a} - 1) / (k^{n^(a-1)} - 1)`.
pub fn z_prime_power(n: u32, a: u32, k: &BigUint) -> Result<BigUint> {
    check_base(k)?;
    if n < 2 || a == 0 {
        return usage("n >= 2 and a >= 1 are required");
    }
    let top = n
        .checked_pow(a)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::Usage(format!("{n}^{a} is too large an exponent")))?;
    Ok((k.pow(top) - 1u32) / (k.pow(top / n) - 1u32))
}

/// The prime-power quotient and its verdict. Its order is exactly `n^a`:
/// every `k^d - 1` with `d` a proper divisor of `n^a` is below the quotient.
pub fn z_prime_power_verdict(n: u32, a: u32, k: &BigUint) -> Result<(BigUint, PrimoverVerdict)> {
    let value = z_prime_power(n, a, k)?;
    if !value.gcd(k).is_one() {
        return domain(format!("{value} shares a factor with {k}"));
    }
    let verdict = classify_with_order(&value, k, &BigUint::from(n.pow(a)))?;
    Ok((value, verdict))
}

/// `(2^p + 1)/3` for an odd prime `p`.
pub fn wagstaff(p: &BigUint) -> Result<BigUint> {
    check_prime(p)?;
    if *p == BigUint::from(2u32) {
        return domain("p = 2 gives 5, which 3 does not divide");
    }
    Ok((BigUint::one() << exponent(p)? as usize) / 3u32 + 1u32)
}

/// The Wagstaff number and its verdict base 2. For `p >= 5` the order of 2
/// is exactly `2p`, since `2^p ≡ -1` modulo the number.
pub fn wagstaff_verdict(p: &BigUint) -> Result<(BigUint, PrimoverVerdict)> {
    let value = wagstaff(p)?;
    let verdict = classify_with_order(&value, &BigUint::from(2u32), &(p * 2u32))?;
    Ok((value, verdict))
}
