//! Homogenized cyclotomic values `Φₙ(k,h)` and Zsigmondy numbers.
//!
//! `𝒵(n,k,h)` is the product, with multiplicity, of the primes whose first
//! appearance in `k^u - h^u` is at `u = n`; `ζ(n,k,h)` is the same for
//! `k^u + h^u`. Both are computed twice: from their definition by stripping
//! every prime shared with an earlier term, and from `Φₙ` in closed form.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, is_prime};
use crate::error::{domain, usage, Error, Result};
use crate::primitive_index::{pidx_minus, BasePair, Method, Sequence};

/// Largest `n` accepted anywhere in this module.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZsigmondyValue {
    pub n: u64,
    pub pair: BasePair,
    /// `Φₙ(k,h)` for the minus sequence, `Φ₂ₙ(k,h)` for the plus sequence.
    pub phi_value: BigUint,
    /// The one prime dividing `phi_value` without being primitive, if any.
    pub exceptional_prime: Option<BigUint>,
    pub value: BigUint,
    pub sequence: Sequence,
    pub method: Method,
}

fn check_pair(pair: &BasePair) -> Result<()> {
    if pair.k() <= pair.h() {
        return domain(format!("k > h is required, got {pair}"));
    }
    Ok(())
}

fn check_exponent(n: u64) -> Result<()> {
    if n == 0 {
        return usage("n must be positive");
    }
    if n > MAX_EXPONENT {
        return usage(format!("n = {n} exceeds the limit {MAX_EXPONENT}"));
    }
    Ok(())
}

fn check_coprime(pair: &BasePair) -> Result<()> {
    if !pair.is_coprime() {
        return domain(format!("gcd(k, h) must be 1 for {pair}"));
    }
    Ok(())
}

fn term(pair: &BasePair, u: u64, plus: bool) -> BigUint {
    let (a, b) = (pair.k().pow(u as u32), pair.h().pow(u as u32));
    if plus {
        a + b
    } else {
        a - b
    }
}

fn divisors_u64(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(&BigUint::from(n))?
        .divisors()
        .into_iter()
        .map(|d| u64::try_from(d).expect("divisor of a u64"))
        .collect())
}

fn exact_div(a: &BigUint, b: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::Mismatch(format!("{what}: {b} does not divide {a}")));
    }
    Ok(q)
}

/// `Φₙ(k,h)` from `k^n - h^n = ∏_{d | n} Φ_d(k,h)`, dividing out the values
/// at the proper divisors.
pub fn homog_cyclotomic(n: u64, pair: &BasePair) -> Result<BigUint> {
    check_exponent(n)?;
    check_pair(pair)?;
    let divisors = divisors_u64(n)?;
    let mut table: HashMap<u64, BigUint> = HashMap::with_capacity(divisors.len());
    for &d in &divisors {
        let below = divisors
            .iter()
            .filter(|&&e| e < d && d % e == 0)
            .fold(BigUint::one(), |acc, e| acc * &table[e]);
        table.insert(d, exact_div(&term(pair, d, false), &below, "cyclotomic recursion")?);
    }
    Ok(table.remove(&n).expect("n divides itself"))
}

/// `Φₙ(k,h) = ∏_{d | n} (k^d - h^d)^μ(n/d)`.
pub fn homog_cyclotomic_mobius(n: u64, pair: &BasePair) -> Result<BigUint> {
    check_exponent(n)?;
    check_pair(pair)?;
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for d in divisors_u64(n)? {
        match factorize(&BigUint::from(n / d))?.mobius() {
            1 => num *= term(pair, d, false),
            -1 => den *= term(pair, d, false),
            _ => {}
        }
    }
    exact_div(&num, &den, "Möbius product")
}

/// Removes from `a` every prime it shares with `b`, with full multiplicity.
fn strip_common(mut a: BigUint, b: &BigUint) -> BigUint {
    loop {
        let g = a.gcd(b);
        if g.is_one() {
            return a;
        }
        a /= g;
    }
}

fn primitive_part(n: u64, pair: &BasePair, plus: bool) -> BigUint {
    (1..n).fold(term(pair, n, plus), |acc, y| strip_common(acc, &term(pair, y, plus)))
}

/// The prime `p` with `cofactor = p^e`, or `None` for 1 or several primes.
fn single_prime(cofactor: &BigUint) -> Result<Option<BigUint>> {
    if cofactor.is_one() {
        return Ok(None);
    }
    let f = factorize(cofactor)?;
    Ok(match f.factors() {
        [(p, _)] => Some(p.clone()),
        _ => None,
    })
}

/// `𝒵(n,k,h)` from the definition: `k^n - h^n` with every prime of every
/// earlier term `k^y - h^y`, `y < n`, removed.
pub fn zsigmondy_minus_direct(n: u64, pair: &BasePair) -> Result<ZsigmondyValue> {
    check_exponent(n)?;
    check_pair(pair)?;
    check_coprime(pair)?;
    let value = primitive_part(n, pair, false);
    let phi_value = homog_cyclotomic(n, pair)?;
    let exceptional_prime = single_prime(&exact_div(&phi_value, &value, "primitive part of Φ")?)?;
    Ok(ZsigmondyValue {
        n,
        pair: pair.clone(),
        phi_value,
        exceptional_prime,
        value,
        sequence: Sequence::Minus,
        method: Method::Oracle,
    })
}

/// The prime `p` with `n = p^z · P_p(k,h)`, `z >= 1`, if there is one.
/// `P_p` divides `p - 1`, so `p` can only be the largest prime of `n`.
fn theorem_prime(n: u64, pair: &BasePair) -> Result<Option<BigUint>> {
    let f = factorize(&BigUint::from(n))?;
    let Some((p, z)) = f.factors().last() else {
        return Ok(None);
    };
    if (pair.k() % p).is_zero() || (pair.h() % p).is_zero() {
        return Ok(None);
    }
    let rest = BigUint::from(n) / p.pow(*z);
    let index = pidx_minus(p, pair)?.index;
    Ok((index.value() == Some(&rest)).then(|| p.clone()))
}

/// `𝒵(n,k,h)` in closed form.
///
/// `n = 1`: `k - h`. `n = 2`: `k + h` without its factors of 2 when `k - h`
/// is even, `k + h` itself otherwise. `n >= 3`: `Φₙ(k,h)/p` when
/// `n = p^z · P_p(k,h)` for a prime `p`, and `Φₙ(k,h)` otherwise.
pub fn zsigmondy_minus(n: u64, pair: &BasePair) -> Result<ZsigmondyValue> {
    check_exponent(n)?;
    check_pair(pair)?;
    check_coprime(pair)?;
    let phi_value = homog_cyclotomic(n, pair)?;
    let (value, exceptional_prime) = match n {
        1 => (phi_value.clone(), None),
        2 if pair.diff_is_even() => {
            let odd = &phi_value >> pair.nu2_sum() as usize;
            (odd, Some(BigUint::from(2u32)))
        }
        2 => (phi_value.clone(), None),
        _ => match theorem_prime(n, pair)? {
            Some(p) => (exact_div(&phi_value, &p, "exceptional prime")?, Some(p)),
            None => (phi_value.clone(), None),
        },
    };
    Ok(ZsigmondyValue {
        n,
        pair: pair.clone(),
        phi_value,
        exceptional_prime,
        value,
        sequence: Sequence::Minus,
        method: Method::Formula,
    })
}

/// `ζ(n,k,h)` from the definition: `k^n + h^n` with every prime of every
/// earlier term `k^y + h^y` removed.
pub fn zsigmondy_plus_direct(n: u64, pair: &BasePair) -> Result<ZsigmondyValue> {
    check_exponent(n)?;
    check_pair(pair)?;
    check_coprime(pair)?;
    let value = primitive_part(n, pair, true);
    let phi_value = homog_cyclotomic(2 * n, pair)?;
    let cofactor = if n == 1 {
        BigUint::one()
    } else {
        exact_div(&phi_value, &value, "primitive part of Φ")?
    };
    Ok(ZsigmondyValue {
        n,
        pair: pair.clone(),
        phi_value,
        exceptional_prime: single_prime(&cofactor)?,
        value,
        sequence: Sequence::Plus,
        method: Method::Oracle,
    })
}

/// `ζ(n,k,h) = 𝒵(2n,k,h)` except for `n = 1` with `k + h` even, where
/// every prime of `k + h` is primitive and `ζ(1,k,h) = k + h`.
pub fn zsigmondy_plus(n: u64, pair: &BasePair) -> Result<ZsigmondyValue> {
    check_exponent(n)?;
    check_pair(pair)?;
    check_coprime(pair)?;
    if n == 1 && pair.sum_is_even() {
        return Ok(ZsigmondyValue {
            n,
            pair: pair.clone(),
            phi_value: homog_cyclotomic(2, pair)?,
            exceptional_prime: None,
            value: pair.sum(),
            sequence: Sequence::Plus,
            method: Method::Formula,
        });
    }
    let z = zsigmondy_minus(2 * n, pair)?;
    Ok(ZsigmondyValue {
        n,
        sequence: Sequence::Plus,
        ..z
    })
}

/// Whether `n = p^z · P_p(k,h)` for some `z >= 1`.
pub fn is_exceptional(n: u64, pair: &BasePair, p: &BigUint) -> Result<bool> {
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    check_exponent(n)?;
    Ok(theorem_prime(n, pair)?.as_ref() == Some(p))
}
