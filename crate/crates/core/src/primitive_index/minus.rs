use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scan::{bound_u64, first_hit, ScanConfig};
use super::{
    check_modulus, check_prime, lifted_valuation, nu2_of_square_diff, two, BasePair, GammaBranch,
    GammaValue, Index, IndexResult, Method, Sequence,
};
use crate::arith::{carmichael_lambda, factorize};
use crate::error::{domain, usage, Result};

pub fn pidx_minus_oracle(n: &BigUint, pair: &BasePair) -> Result<IndexResult> {
    pidx_minus_oracle_with(n, pair, &ScanConfig::default())
}

/// Least `u` with `n | k^u - h^u`, by search.
///
/// When `n` is coprime to both bases the index divides `λ(n)`, so only the
/// divisors of `λ(n)` are tried, in increasing order (or every `u <= λ(n)`
/// with [`ScanConfig::full_linear`]). Otherwise `u` runs up to the
/// configured limit and an exhausted scan is reported as
/// [`Index::NotFoundWithinBound`].
pub fn pidx_minus_oracle_with(n: &BigUint, pair: &BasePair, config: &ScanConfig) -> Result<IndexResult> {
    check_modulus(n)?;
    let (k, h) = (pair.k(), pair.h());
    let index = if pair.coprime_to(n) {
        let lambda = carmichael_lambda(n)?;
        if config.full_linear {
            let bound = bound_u64(&lambda)?;
            match first_hit(n, k, h, bound, false) {
                Some(u) => Index::Found(BigUint::from(u)),
                None => Index::Absent,
            }
        } else {
            factorize(&lambda)?
                .divisors()
                .into_iter()
                .find(|d| k.modpow(d, n) == h.modpow(d, n))
                .map_or(Index::Absent, Index::Found)
        }
    } else {
        let limit = config.limit_for(n);
        match first_hit(n, k, h, bound_u64(&limit)?, false) {
            Some(u) => Index::Found(BigUint::from(u)),
            None => Index::NotFoundWithinBound(limit),
        }
    };
    Ok(IndexResult::new(Sequence::Minus, n, index, Method::Oracle))
}

/// `P_p(k,h)` for a prime `p` not dividing `h`. `None` when `p | k`, in
/// which case `p` divides no term.
pub(crate) fn prime_index(p: &BigUint, pair: &BasePair) -> Result<Option<BigUint>> {
    if (pair.k() % p).is_zero() {
        return Ok(None);
    }
    Ok(pidx_minus_oracle(p, pair)?.index.value().cloned())
}

fn require_coprime_to_h(n: &BigUint, pair: &BasePair) -> Result<()> {
    if !n.gcd(pair.h()).is_one() {
        return domain(format!("gcd({n}, h = {}) must be 1", pair.h()));
    }
    Ok(())
}

/// `γ_p(k,h)`.
///
/// Generic branch: `ν_p(k^u - h^u)` at `u = P_p(k,h)`, or 0 when `p`
/// divides no term. Two-special branch (`p = 2`, `k - h` twice an odd):
/// `ν₂(k² - h²)`.
pub fn gamma(p: &BigUint, pair: &BasePair) -> Result<GammaValue> {
    check_prime(p)?;
    require_coprime_to_h(p, pair)?;
    Ok(gamma_from_index(p, pair, prime_index(p, pair)?.as_ref()))
}

fn gamma_from_index(p: &BigUint, pair: &BasePair, base: Option<&BigUint>) -> GammaValue {
    if *p == two() && pair.is_two_special() {
        return GammaValue {
            p: p.clone(),
            value: nu2_of_square_diff(pair),
            branch: GammaBranch::TwoSpecial,
        };
    }
    let value = base.map_or(0, |u| lifted_valuation(p, pair.k(), pair.h(), u));
    GammaValue {
        p: p.clone(),
        value,
        branch: GammaBranch::Generic,
    }
}

/// `P_{p^a}(k,h) = p^max(0, a-γ) · P_p(k,h)`.
///
/// In the two-special branch `P_2 = 1` and `P_{2^a} = 2` for
/// `2 <= a <= γ`, so the lifting starts from 2 instead: `P_{2^a} =
/// 2^max(0, a-γ) · 2` for `a >= 2`.
pub fn pidx_minus_prime_power(p: &BigUint, a: u32, pair: &BasePair) -> Result<IndexResult> {
    check_prime(p)?;
    if a == 0 {
        return usage("prime-power exponent must be positive");
    }
    require_coprime_to_h(p, pair)?;
    let modulus = p.pow(a);
    let Some(base) = prime_index(p, pair)? else {
        return Ok(IndexResult::new(Sequence::Minus, &modulus, Index::Absent, Method::Formula));
    };
    let g = gamma_from_index(p, pair, Some(&base));
    let lift = (u64::from(a)).saturating_sub(g.value) as u32;
    let index = match g.branch {
        GammaBranch::TwoSpecial if a == 1 => base,
        GammaBranch::TwoSpecial => BigUint::from(2u32) << lift as usize,
        GammaBranch::Generic => p.pow(lift) * base,
    };
    Ok(IndexResult::new(Sequence::Minus, &modulus, Index::Found(index), Method::Formula))
}

/// `P_N(k,h)` as the lcm of the prime-power indexes of `N`.
pub fn pidx_minus(n: &BigUint, pair: &BasePair) -> Result<IndexResult> {
    check_modulus(n)?;
    require_coprime_to_h(n, pair)?;
    let mut acc = BigUint::one();
    for (p, a) in factorize(n)?.factors() {
        match pidx_minus_prime_power(p, *a, pair)?.index {
            Index::Found(u) => acc = acc.lcm(&u),
            _ => return Ok(IndexResult::new(Sequence::Minus, n, Index::Absent, Method::Formula)),
        }
    }
    Ok(IndexResult::new(Sequence::Minus, n, Index::Found(acc), Method::Formula))
}

/// `n | k^u - h^u` decided through the index: true iff `P_N(k,h) | u`.
pub fn divides_minus(n: &BigUint, pair: &BasePair, u: &BigUint) -> Result<bool> {
    if u.is_zero() {
        return usage("exponent u must be positive");
    }
    Ok(match pidx_minus(n, pair)?.index {
        Index::Found(p) => (u % p).is_zero(),
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn pair(k: u64, h: u64) -> BasePair {
        BasePair::new(k, h).unwrap()
    }

    fn idx(r: IndexResult) -> Option<u64> {
        r.index.value().map(|u| u.to_u64().unwrap())
    }

    /// Walks `u = 1, 2, ...` on exact integers; independent of every
    /// shortcut above.
    fn brute(n: u64, k: u64, h: u64, limit: u32) -> Option<u64> {
        (1..=limit).find_map(|u| {
            let (a, c) = (b(k).pow(u), b(h).pow(u));
            let d = if a > c { a - c } else { c - a };
            (d % n).is_zero().then_some(u as u64)
        })
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(idx(pidx_minus_oracle(&b(7), &pair(3, 2)).unwrap()), Some(6));
        assert_eq!(idx(pidx_minus_oracle(&b(5), &pair(2, 1)).unwrap()), Some(4));
        assert_eq!(idx(pidx_minus_oracle(&b(3), &pair(4, 1)).unwrap()), Some(1));
    }

    #[test]
    fn oracle_routes_agree_with_brute_force() {
        for n in 2..120u64 {
            for (k, h) in [(2, 1), (3, 2), (5, 3), (6, 1), (4, 6)] {
                let want = brute(n, k, h, 400);
                let fast = pidx_minus_oracle(&b(n), &pair(k, h)).unwrap();
                let slow = pidx_minus_oracle_with(&b(n), &pair(k, h), &ScanConfig::full_linear()).unwrap();
                assert_eq!(idx(fast.clone()), want, "n={n} k={k} h={h}");
                assert!(fast.index.agrees_with(&slow.index));
            }
        }
    }

    #[test]
    fn noncoprime_scan_reports_its_bound() {
        // 5 divides k but not h, so no term is divisible by 10
        let r = pidx_minus_oracle(&b(10), &pair(5, 3)).unwrap();
        assert_eq!(r.index, Index::NotFoundWithinBound(b(100)));
        let r = pidx_minus_oracle_with(&b(10), &pair(5, 3), &ScanConfig::with_limit(7u32)).unwrap();
        assert_eq!(r.index, Index::NotFoundWithinBound(b(7)));
        // 6 | 8^u - 2^u for u = 1
        assert_eq!(idx(pidx_minus_oracle(&b(6), &pair(8, 2)).unwrap()), Some(1));
    }

    #[test]
    fn gamma_examples() {
        let g = gamma(&b(5), &pair(2, 1)).unwrap();
        assert_eq!((g.value, g.branch), (1, GammaBranch::Generic));
        let g = gamma(&b(2), &pair(3, 1)).unwrap();
        assert_eq!((g.value, g.branch), (3, GammaBranch::TwoSpecial));
        let g = gamma(&b(3), &pair(2, 1)).unwrap();
        assert_eq!((g.value, g.branch), (1, GammaBranch::Generic));
        // 2 never divides 2^u - 1
        assert_eq!(gamma(&b(2), &pair(2, 1)).unwrap().value, 0);
        assert!(matches!(gamma(&b(3), &pair(2, 3)), Err(crate::Error::Domain(_))));
        assert!(matches!(gamma(&b(4), &pair(3, 1)), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn prime_power_examples() {
        let pp = |p, a, k, h| idx(pidx_minus_prime_power(&b(p), a, &pair(k, h)).unwrap());
        assert_eq!(pp(3, 2, 2, 1), Some(6));
        assert_eq!(pp(5, 1, 2, 1), Some(4));
        assert_eq!(pp(2, 4, 3, 1), Some(4));
        assert_eq!(pp(2, 3, 2, 1), None);
    }

    #[test]
    fn two_special_branch_against_brute_force() {
        // k - h = 2 * odd: 3-1, 5-3, 7-5, 9-7, 11-1, 13-3
        for (k, h) in [(3, 1), (5, 3), (7, 5), (9, 7), (11, 1), (13, 3), (21, 19)] {
            for a in 1..=9u32 {
                let n = 1u64 << a;
                let want = brute(n, k, h, 1200);
                assert_eq!(
                    idx(pidx_minus_prime_power(&b(2), a, &pair(k, h)).unwrap()),
                    want,
                    "k={k} h={h} a={a}"
                );
            }
        }
    }

    #[test]
    fn composite_examples() {
        let pm = |n, k, h| idx(pidx_minus(&b(n), &pair(k, h)).unwrap());
        assert_eq!(pm(15, 2, 1), Some(4));
        assert_eq!(pm(63, 2, 1), Some(6));
        assert_eq!(pm(9, 4, 1), Some(3));
        assert!(matches!(pidx_minus(&b(6), &pair(5, 3)), Err(crate::Error::Domain(_))));
        assert!(matches!(pidx_minus(&b(1), &pair(5, 3)), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn divides_minus_examples() {
        let dm = |n, k, h, u| divides_minus(&b(n), &pair(k, h), &b(u)).unwrap();
        assert!(dm(7, 2, 1, 9));
        assert!(!dm(7, 2, 1, 8));
        assert!(dm(5, 2, 1, 4));
    }
}
