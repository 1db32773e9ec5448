use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::minus::pidx_minus_prime_power;
use super::scan::{bound_u64, first_hit, ScanConfig};
use super::{check_modulus, check_prime, two, BasePair, Index, IndexResult, Method, Sequence};
use crate::arith::{carmichael_lambda, factorize};
use crate::error::{domain, usage, Result};

pub fn pidx_plus_oracle(n: &BigUint, pair: &BasePair) -> Result<IndexResult> {
    pidx_plus_oracle_with(n, pair, &ScanConfig::default())
}

/// Least `u` with `n | k^u + h^u`, by linear scan. The scan runs to
/// `2·λ(n)` when `n` is coprime to `kh`, past which no first hit can occur,
/// and to the configured limit otherwise.
pub fn pidx_plus_oracle_with(n: &BigUint, pair: &BasePair, config: &ScanConfig) -> Result<IndexResult> {
    check_modulus(n)?;
    let (k, h) = (pair.k(), pair.h());
    let index = if pair.coprime_to(n) {
        let bound = carmichael_lambda(n)? * 2u32;
        match first_hit(n, k, h, bound_u64(&bound)?, true) {
            Some(u) => Index::Found(BigUint::from(u)),
            None => Index::Absent,
        }
    } else {
        let limit = config.limit_for(n);
        match first_hit(n, k, h, bound_u64(&limit)?, true) {
            Some(u) => Index::Found(BigUint::from(u)),
            None => Index::NotFoundWithinBound(limit),
        }
    };
    Ok(IndexResult::new(Sequence::Plus, n, index, Method::Oracle))
}

/// `P^{p^a}(k,h)`.
///
/// Odd `p`: half of `P_{p^a}(k,h)` when that is even, absent when it is
/// odd. `p = 2`: every odd exponent gives `ν₂(k^u + h^u) = ν₂(k + h)` and
/// every even one gives 1, so the index is 1 when `a <= ν₂(k + h)` and
/// absent otherwise.
pub fn pidx_plus_prime_power(p: &BigUint, a: u32, pair: &BasePair) -> Result<IndexResult> {
    check_prime(p)?;
    if a == 0 {
        return usage("prime-power exponent must be positive");
    }
    if (pair.h() % p).is_zero() {
        return domain(format!("gcd({p}, h = {}) must be 1", pair.h()));
    }
    let modulus = p.pow(a);
    let index = if *p == two() {
        if pair.sum_is_even() && u64::from(a) <= pair.nu2_sum() {
            Index::Found(BigUint::one())
        } else {
            Index::Absent
        }
    } else {
        match pidx_minus_prime_power(p, a, pair)?.index {
            Index::Found(m) if m.is_even() => Index::Found(m >> 1usize),
            _ => Index::Absent,
        }
    };
    Ok(IndexResult::new(Sequence::Plus, &modulus, index, Method::Formula))
}

/// `P^N(k,h)` for `N = 2^a · M`, `M` odd.
///
/// The odd prime-power indexes must all carry the same power of 2; their
/// lcm is then the index of `M`. A factor `2^a` is admissible when
/// `k + h` is even and `a <= ν₂(k + h)` (odd index) or `a <= 1` (even
/// index).
pub fn pidx_plus(n: &BigUint, pair: &BasePair) -> Result<IndexResult> {
    check_modulus(n)?;
    if !n.gcd(pair.h()).is_one() {
        return domain(format!("gcd({n}, h = {}) must be 1", pair.h()));
    }
    let absent = || Ok(IndexResult::new(Sequence::Plus, n, Index::Absent, Method::Formula));
    let f = factorize(n)?;
    let mut two_exp = 0u32;
    let mut lcm = BigUint::one();
    let mut parity: Option<u64> = None;
    for (p, a) in f.factors() {
        if *p == two() {
            two_exp = *a;
            continue;
        }
        let Index::Found(e) = pidx_plus_prime_power(p, *a, pair)?.index else {
            return absent();
        };
        let v = e.trailing_zeros().unwrap_or(0);
        if parity.is_some_and(|w| w != v) {
            return absent();
        }
        parity = Some(v);
        lcm = lcm.lcm(&e);
    }
    if two_exp > 0 {
        let cap = if parity.unwrap_or(0) == 0 { pair.nu2_sum() } else { 1 };
        if !pair.sum_is_even() || u64::from(two_exp) > cap {
            return absent();
        }
    }
    Ok(IndexResult::new(Sequence::Plus, n, Index::Found(lcm), Method::Formula))
}

/// `n | k^u + h^u` decided through the index. For `n = 2` every term or
/// no term is even; otherwise `P^N(k,h)` must divide `u` with an odd
/// quotient.
pub fn divides_plus(n: &BigUint, pair: &BasePair, u: &BigUint) -> Result<bool> {
    if u.is_zero() {
        return usage("exponent u must be positive");
    }
    check_modulus(n)?;
    if *n == two() {
        if pair.h().is_even() {
            return domain("gcd(2, h) must be 1");
        }
        return Ok(pair.sum_is_even());
    }
    Ok(match pidx_plus(n, pair)?.index {
        Index::Found(p) => {
            let (q, r) = u.div_rem(&p);
            r.is_zero() && q.is_odd()
        }
        _ => false,
    })
}

/// `ν₂(k^n + h^n)`: 0 when `k + h` is odd, otherwise `ν₂(k + h)` for odd
/// `n` and 1 for even `n`.
pub fn nu2_plus(pair: &BasePair, n: u64) -> Result<u64> {
    if n == 0 {
        return usage("n must be positive");
    }
    Ok(if !pair.sum_is_even() {
        0
    } else if n % 2 == 1 {
        pair.nu2_sum()
    } else {
        1
    })
}
