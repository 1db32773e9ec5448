//! Primitive indexes of a modulus `N` in the sequences `k^u - h^u` and
//! `k^u + h^u`.
//!
//! `P_N(k,h)` is the least `u >= 1` with `N | k^u - h^u`; `P^N(k,h)` is the
//! analogue for `k^u + h^u`. With `h = 1` the minus index is the
//! multiplicative order of `k` modulo `N`.
//!
//! Every closed form here has a scan twin (`*_oracle`) that walks the
//! definition directly, so the two can be compared case by case.

mod minus;
mod plus;
mod scan;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::valuation;
use crate::error::{usage, Result};

pub use minus::{
    divides_minus, gamma, pidx_minus, pidx_minus_oracle, pidx_minus_oracle_with,
    pidx_minus_prime_power,
};
pub use plus::{
    divides_plus, nu2_plus, pidx_plus, pidx_plus_oracle, pidx_plus_oracle_with,
    pidx_plus_prime_power,
};
pub use scan::{ScanConfig, MAX_LINEAR_SCAN};

/// The base pair `(k, h)` of a sequence `k^u ± h^u`, with `k != h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasePair {
    k: BigUint,
    h: BigUint,
    gcd: BigUint,
    nu2_diff: u64,
    nu2_sum: u64,
}

impl BasePair {
    pub fn new(k: impl Into<BigUint>, h: impl Into<BigUint>) -> Result<Self> {
        let (k, h) = (k.into(), h.into());
        if k.is_zero() || h.is_zero() {
            return usage("bases k and h must be positive");
        }
        if k == h {
            return usage(format!("k and h must differ (both are {k})"));
        }
        let diff = if k > h { &k - &h } else { &h - &k };
        let sum = &k + &h;
        Ok(BasePair {
            gcd: k.gcd(&h),
            nu2_diff: diff.trailing_zeros().unwrap_or(0),
            nu2_sum: sum.trailing_zeros().unwrap_or(0),
            k,
            h,
        })
    }

    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn gcd(&self) -> &BigUint {
        &self.gcd
    }

    /// `|k - h|`.
    pub fn diff(&self) -> BigUint {
        if self.k > self.h {
            &self.k - &self.h
        } else {
            &self.h - &self.k
        }
    }

    pub fn sum(&self) -> BigUint {
        &self.k + &self.h
    }

    /// `ν₂(k - h)`; zero when `k - h` is odd.
    pub fn nu2_diff(&self) -> u64 {
        self.nu2_diff
    }

    /// `ν₂(k + h)`; zero when `k + h` is odd.
    pub fn nu2_sum(&self) -> u64 {
        self.nu2_sum
    }

    pub fn diff_is_even(&self) -> bool {
        self.nu2_diff > 0
    }

    pub fn sum_is_even(&self) -> bool {
        self.nu2_sum > 0
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd.is_one()
    }

    /// `k - h` is twice an odd number, the case where powers of 2 lift
    /// late.
    pub fn is_two_special(&self) -> bool {
        self.nu2_diff == 1
    }

    pub(crate) fn coprime_to(&self, n: &BigUint) -> bool {
        self.k.gcd(n).is_one() && self.h.gcd(n).is_one()
    }
}

impl fmt::Display for BasePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Formula,
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sequence::Minus => "minus",
            Sequence::Plus => "plus",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Formula => "formula",
        })
    }
}

/// Outcome of a primitive-index computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Index {
    Found(BigUint),
    /// Proven not to exist: no term of the sequence is divisible.
    Absent,
    /// A scan ran to the given bound without a hit. Only produced by the
    /// oracles when the modulus shares a factor with `k` or `h`.
    NotFoundWithinBound(BigUint),
}

impl Index {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Index::Found(u) => Some(u),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Index::Found(_))
    }

    /// Formula/oracle comparison: `Absent` and an exhausted scan both mean
    /// "no index".
    pub fn agrees_with(&self, other: &Index) -> bool {
        self.value() == other.value()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Found(u) => write!(f, "{u}"),
            Index::Absent => f.write_str("absent"),
            Index::NotFoundWithinBound(b) => write!(f, "absent(bound={b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexResult {
    pub sequence: Sequence,
    pub modulus: BigUint,
    pub index: Index,
    pub method: Method,
}

impl IndexResult {
    pub(crate) fn new(sequence: Sequence, modulus: &BigUint, index: Index, method: Method) -> Self {
        IndexResult {
            sequence,
            modulus: modulus.clone(),
            index,
            method,
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.index.value()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaBranch {
    Generic,
    TwoSpecial,
}

impl fmt::Display for GammaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaBranch::Generic => "generic",
            GammaBranch::TwoSpecial => "two-special",
        })
    }
}

/// The lifting exponent `γ_p(k,h)`: how many factors of `p` the first
/// divisible term carries, after which each extra factor of `p` in the
/// modulus multiplies the index by `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaValue {
    pub p: BigUint,
    pub value: u64,
    pub branch: GammaBranch,
}

pub(crate) fn two() -> BigUint {
    BigUint::from(2u32)
}

pub(crate) fn check_modulus(n: &BigUint) -> Result<()> {
    if *n < two() {
        return usage(format!("modulus must be at least 2, got {n}"));
    }
    Ok(())
}

pub(crate) fn check_prime(p: &BigUint) -> Result<()> {
    if !crate::arith::is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    Ok(())
}

/// `ν_p(x^u - y^u)` for `x != y`, found by raising the modulus one power
/// of `p` at a time instead of expanding the powers.
pub(crate) fn lifted_valuation(p: &BigUint, x: &BigUint, y: &BigUint, u: &BigUint) -> u64 {
    let mut e = 0u64;
    let mut modulus = p.clone();
    loop {
        if x.modpow(u, &modulus) != y.modpow(u, &modulus) {
            return e;
        }
        e += 1;
        modulus *= p;
    }
}

/// `ν₂(k² - h²)` computed exactly.
pub(crate) fn nu2_of_square_diff(pair: &BasePair) -> u64 {
    let (k2, h2) = (pair.k() * pair.k(), pair.h() * pair.h());
    let d = if k2 > h2 { k2 - h2 } else { h2 - k2 };
    valuation(&two(), &d)
}
