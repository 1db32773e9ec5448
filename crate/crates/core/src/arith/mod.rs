//! Arbitrary-precision integer utilities shared by every other module.

mod factor;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{usage, Result};

pub use factor::{is_prime, TRIAL_BOUND};

/// An integer `n >= 1` together with its prime factorization.
///
/// Primes are strictly increasing and the product of `p^e` over the
/// factors is `value`. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Builds a factorization from prime/exponent pairs. The pairs are
    /// sorted and merged; each base must be prime and each exponent positive.
    pub fn from_factors(pairs: impl IntoIterator<Item = (BigUint, u32)>) -> Result<Self> {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let mut raw: Vec<(BigUint, u32)> = pairs.into_iter().collect();
        raw.sort();
        for (p, e) in raw {
            if e == 0 {
                return usage(format!("exponent of {p} must be positive"));
            }
            if !is_prime(&p) {
                return usage(format!("{p} is not prime"));
            }
            match factors.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => factors.push((p, e)),
            }
        }
        let value = factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        Ok(Factorization { value, factors })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .map(|(_, e)| u64::from(*e) + 1)
            .product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::one()];
        for (p, e) in &self.factors {
            let len = out.len();
            let mut power = BigUint::one();
            for _ in 0..*e {
                power *= p;
                for i in 0..len {
                    let d = &out[i] * &power;
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }

    /// The Möbius function of `value`.
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|(_, e)| *e > 1) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n >= 1`. Deterministic: the same input always yields the same
/// factorization through the same code path.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return usage("cannot factor 0");
    }
    Ok(Factorization {
        value: n.clone(),
        factors: factor::prime_factors(n),
    })
}

pub fn mod_pow(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u32) {
        return usage(format!("modulus must be at least 2, got {modulus}"));
    }
    Ok(base.modpow(exp, modulus))
}

pub fn euler_phi(n: &BigUint) -> Result<BigUint> {
    Ok(phi_of(&factorize(n)?))
}

pub(crate) fn phi_of(f: &Factorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        acc * p.pow(e - 1) * (p - 1u32)
    })
}

/// Carmichael's function: the exponent of the unit group mod `n`.
pub fn carmichael_lambda(n: &BigUint) -> Result<BigUint> {
    Ok(lambda_of(&factorize(n)?))
}

pub(crate) fn lambda_of(f: &Factorization) -> BigUint {
    let two = BigUint::from(2u32);
    f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        let part = if *p == two {
            match e {
                1 => BigUint::one(),
                2 => two.clone(),
                _ => BigUint::one() << (*e as usize - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1u32)
        };
        acc.lcm(&part)
    })
}

/// Largest `e` with `p^e | x`.
pub fn padic_valuation(p: &BigUint, x: &BigUint) -> Result<u64> {
    if x.is_zero() {
        return usage("valuation of 0 is undefined");
    }
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    Ok(valuation(p, x))
}

/// Valuation without argument checks; `x` must be nonzero.
pub(crate) fn valuation(p: &BigUint, x: &BigUint) -> u64 {
    if p == &BigUint::from(2u32) {
        return x.trailing_zeros().unwrap_or(0);
    }
    let mut e = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}
