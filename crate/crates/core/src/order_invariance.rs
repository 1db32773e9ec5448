//! Multiplicative orders through the prime-power reduction, base shifts
//! that leave orders and primitive indexes unchanged, and residue
//! coincidence counts.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, phi_of, Factorization};
use crate::error::{domain, usage, Error, Result};
use crate::primitive_index::{gamma, pidx_minus, BasePair, Index};

/// Moduli above this are rejected by the residue-walking routines.
pub const MAX_WALK: u64 = 100_000_000;

fn check_modulus(n: &BigUint) -> Result<()> {
    if *n < BigUint::from(2u32) {
        return usage(format!("modulus must be at least 2, got {n}"));
    }
    Ok(())
}

fn walk_size(n: &BigUint) -> Result<u64> {
    match n.to_u64() {
        Some(v) if v <= MAX_WALK => Ok(v),
        _ => usage(format!("{n} exceeds the residue-walk limit {MAX_WALK}")),
    }
}

/// `O_N(k)`, computed as `P_N(k, 1)`.
pub fn mult_order(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    check_modulus(n)?;
    if !n.gcd(k).is_one() {
        return domain(format!("gcd({n}, {k}) must be 1"));
    }
    if k.is_one() {
        return Ok(BigUint::one());
    }
    let r = pidx_minus(n, &BasePair::new(k.clone(), 1u32)?)?;
    r.index
        .value()
        .cloned()
        .ok_or_else(|| Error::Mismatch(format!("no order found for {k} mod {n}")))
}

/// `O_N(k)` by stepping through `k, k², k³, ...` modulo `N`.
pub fn mult_order_naive(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    check_modulus(n)?;
    if !n.gcd(k).is_one() {
        return domain(format!("gcd({n}, {k}) must be 1"));
    }
    let limit = walk_size(n)?;
    let kr = k % n;
    let mut x = kr.clone();
    for m in 1..=limit {
        if x.is_one() {
            return Ok(BigUint::from(m));
        }
        x = x * &kr % n;
    }
    Err(Error::Mismatch(format!("order of {k} mod {n} exceeds {n}")))
}

/// The shift period `Λ` of a base over a set of primes: any `N` built from
/// those primes has `O_N(k + Λ·m) = O_N(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPeriod {
    /// The primes, as the factorization of their product.
    pub modulus_class: Factorization,
    pub base: BigUint,
    pub value: BigUint,
}

/// `Λ = ∏ p^(γ_p(k)+1)` over the given primes, and 0 for `k = 1`.
pub fn lambda_period(primes: &[BigUint], k: &BigUint) -> Result<LambdaPeriod> {
    if primes.is_empty() {
        return usage("prime set must be nonempty");
    }
    if k.is_zero() {
        return usage("base must be positive");
    }
    let modulus_class = Factorization::from_factors(primes.iter().map(|p| (p.clone(), 1)))?;
    if modulus_class.factors().iter().any(|(_, e)| *e > 1) {
        return usage("prime set contains duplicates");
    }
    let value = if k.is_one() {
        BigUint::zero()
    } else {
        let pair = BasePair::new(k.clone(), 1u32)?;
        let mut acc = BigUint::one();
        for p in modulus_class.primes() {
            if (k % p).is_zero() {
                return domain(format!("{p} divides the base {k}; γ is undefined"));
            }
            let g = gamma(p, &pair)?;
            acc *= p.pow(g.value as u32 + 1);
        }
        acc
    };
    Ok(LambdaPeriod {
        modulus_class,
        base: k.clone(),
        value,
    })
}

/// Both sides of a shift identity, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftComparison {
    pub modulus: BigUint,
    pub original: (BigUint, BigUint),
    pub shifted: (BigUint, BigUint),
    pub before: Index,
    pub after: Index,
}

impl ShiftComparison {
    pub fn holds(&self) -> bool {
        self.before.agrees_with(&self.after)
    }
}

/// Compares `O_{p^a}(k)` with `O_{p^a}(k + p^(γ_p(k)+1)·m)`.
pub fn order_shift_compare(p: &BigUint, a: u32, k: &BigUint, m: &BigUint) -> Result<ShiftComparison> {
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    if a == 0 || m.is_zero() {
        return usage("a and m must be positive");
    }
    if (k % p).is_zero() {
        return domain(format!("gcd({p}, {k}) must be 1"));
    }
    if k.is_one() {
        return domain("γ_p(1) is undefined: every term of 1^u - 1 vanishes");
    }
    let g = gamma(p, &BasePair::new(k.clone(), 1u32)?)?;
    let shifted = k + p.pow(g.value as u32 + 1) * m;
    let modulus = p.pow(a);
    Ok(ShiftComparison {
        before: Index::Found(mult_order(&modulus, k)?),
        after: Index::Found(mult_order(&modulus, &shifted)?),
        original: (k.clone(), BigUint::one()),
        shifted: (shifted, BigUint::one()),
        modulus,
    })
}

pub fn order_shift_check(p: &BigUint, a: u32, k: &BigUint, m: &BigUint) -> Result<bool> {
    Ok(order_shift_compare(p, a, k, m)?.holds())
}

/// Compares `P_N(k,h)` with `P_N(k + Λ(k)·m, h + Λ(h)·m)`, both periods
/// taken over `primes`.
pub fn pidx_shift_compare(primes: &[BigUint], n: &BigUint, pair: &BasePair, m: &BigUint) -> Result<ShiftComparison> {
    check_modulus(n)?;
    if m.is_zero() {
        return usage("m must be positive");
    }
    let lk = lambda_period(primes, pair.k())?;
    let lh = lambda_period(primes, pair.h())?;
    for p in factorize(n)?.primes() {
        if lk.modulus_class.exponent_of(p) == 0 {
            return usage(format!("{n} has prime factor {p} outside the prime set"));
        }
    }
    let k2 = pair.k() + lk.value * m;
    let h2 = pair.h() + lh.value * m;
    let shifted = BasePair::new(k2.clone(), h2.clone())?;
    Ok(ShiftComparison {
        modulus: n.clone(),
        before: pidx_minus(n, pair)?.index,
        after: pidx_minus(n, &shifted)?.index,
        original: (pair.k().clone(), pair.h().clone()),
        shifted: (k2, h2),
    })
}

pub fn pidx_shift_check(primes: &[BigUint], n: &BigUint, pair: &BasePair, m: &BigUint) -> Result<bool> {
    Ok(pidx_shift_compare(primes, n, pair, m)?.holds())
}

fn require_unit_pair(n: &BigUint, pair: &BasePair) -> Result<()> {
    if !(n.gcd(pair.k()).is_one() && n.gcd(pair.h()).is_one()) {
        return domain(format!("{n} must be coprime to both bases of {pair}"));
    }
    Ok(())
}

/// `t = φ(n) / P_n(k,h)`: how often `k^u ≡ h^u (mod n)` for `0 <= u < φ(n)`.
pub fn coincidence_count(n: &BigUint, pair: &BasePair) -> Result<BigUint> {
    check_modulus(n)?;
    require_unit_pair(n, pair)?;
    let phi = phi_of(&factorize(n)?);
    match pidx_minus(n, pair)?.index {
        Index::Found(p) => Ok(phi / p),
        _ => domain(format!("P_{n}{pair} does not exist")),
    }
}

/// The same count, by walking `u = 0 .. φ(n) - 1`.
pub fn coincidence_count_direct(n: &BigUint, pair: &BasePair) -> Result<BigUint> {
    check_modulus(n)?;
    require_unit_pair(n, pair)?;
    let phi = phi_of(&factorize(n)?);
    let steps = walk_size(&phi)?;
    let (kr, hr) = (pair.k() % n, pair.h() % n);
    let one = BigUint::one() % n;
    let (mut x, mut y) = (one.clone(), one);
    let mut count = 0u64;
    for _ in 0..steps {
        if x == y {
            count += 1;
        }
        x = x * &kr % n;
        y = y * &hr % n;
    }
    Ok(BigUint::from(count))
}

/// Orders of the two cross products `k·h^(φ-P)` and `h·k^(φ-P)`, next to
/// `P_n(k,h)` and the order of `k·h⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossGenerator {
    pub modulus: BigUint,
    pub index: BigUint,
    /// `O_n(k · h^(φ(n) - P))`
    pub k_side_order: BigUint,
    /// `O_n(h · k^(φ(n) - P))`
    pub h_side_order: BigUint,
    /// `O_n(k · h^(φ(n) - 1))`, which equals `P` for every unit pair.
    pub ratio_order: BigUint,
}

impl CrossGenerator {
    /// Whether both cross products have order `P_n(k,h)`.
    pub fn cross_orders_match(&self) -> bool {
        self.k_side_order == self.index && self.h_side_order == self.index
    }
}

fn has_primitive_root(f: &Factorization) -> bool {
    let two = BigUint::from(2u32);
    match f.factors() {
        [(p, e)] if *p == two => *e <= 2,
        [(_, _)] => true,
        [(p, 1), (_, _)] if *p == two => true,
        _ => false,
    }
}

/// Cross-generator orders for a modulus with primitive roots and two
/// generators `k`, `h`.
pub fn cross_generator_order(n: &BigUint, pair: &BasePair) -> Result<CrossGenerator> {
    check_modulus(n)?;
    let f = factorize(n)?;
    if !has_primitive_root(&f) {
        return domain(format!("{n} has no primitive root"));
    }
    require_unit_pair(n, pair)?;
    let phi = phi_of(&f);
    for base in [pair.k(), pair.h()] {
        if mult_order(n, base)? != phi {
            return domain(format!("{base} does not generate the units mod {n}"));
        }
    }
    let index = match pidx_minus(n, pair)?.index {
        Index::Found(p) => p,
        _ => return domain(format!("P_{n}{pair} does not exist")),
    };
    let gap = &phi - &index;
    let k_side = pair.k() * pair.h().modpow(&gap, n) % n;
    let h_side = pair.h() * pair.k().modpow(&gap, n) % n;
    let ratio = pair.k() * pair.h().modpow(&(&phi - 1u32), n) % n;
    Ok(CrossGenerator {
        modulus: n.clone(),
        k_side_order: mult_order(n, &k_side)?,
        h_side_order: mult_order(n, &h_side)?,
        ratio_order: mult_order(n, &ratio)?,
        index,
    })
}

/// Number of orbits of `s ↦ k·s (mod n)` on `{1, ..., n-1}`.
pub fn cyclotomic_coset_count(n: &BigUint, k: &BigUint) -> Result<u64> {
    check_modulus(n)?;
    if !n.gcd(k).is_one() {
        return domain(format!("gcd({n}, {k}) must be 1"));
    }
    let size = walk_size(n)?;
    let kr = (k % n).to_u64().unwrap_or(0) as u128;
    let mut seen = vec![false; size as usize];
    let mut orbits = 0;
    for start in 1..size {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        let mut s = start;
        while !seen[s as usize] {
            seen[s as usize] = true;
            s = (s as u128 * kr % size as u128) as u64;
        }
    }
    Ok(orbits)
}

/// The same count from orders: `Σ φ(d) / O_d(k)` over divisors `d > 1`.
pub fn cyclotomic_coset_count_by_orders(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    check_modulus(n)?;
    if !n.gcd(k).is_one() {
        return domain(format!("gcd({n}, {k}) must be 1"));
    }
    let mut total = BigUint::zero();
    for d in factorize(n)?.divisors().into_iter().skip(1) {
        let phi = phi_of(&factorize(&d)?);
        total += phi / mult_order(&d, k)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn pair(k: u64, h: u64) -> BasePair {
        BasePair::new(k, h).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(&b(7), &b(2)).unwrap(), b(3));
        assert_eq!(mult_order(&b(9), &b(2)).unwrap(), b(6));
        assert_eq!(mult_order(&b(15), &b(2)).unwrap(), b(4));
        assert_eq!(mult_order(&b(15), &b(1)).unwrap(), b(1));
        assert_eq!(mult_order(&b(7), &b(8)).unwrap(), b(1));
        assert!(matches!(mult_order(&b(6), &b(2)), Err(Error::Domain(_))));
        assert_eq!(mult_order_naive(&b(9), &b(2)).unwrap(), b(6));
    }

    #[test]
    fn lambda_period_examples() {
        assert_eq!(lambda_period(&[b(5)], &b(2)).unwrap().value, b(25));
        assert_eq!(lambda_period(&[b(3), b(5)], &b(2)).unwrap().value, b(225));
        assert_eq!(lambda_period(&[b(5)], &b(1)).unwrap().value, b(0));
        assert!(matches!(lambda_period(&[b(4)], &b(3)), Err(Error::Usage(_))));
        assert!(matches!(lambda_period(&[b(2)], &b(4)), Err(Error::Domain(_))));
    }

    #[test]
    fn order_shift_examples() {
        assert!(order_shift_check(&b(5), 2, &b(2), &b(1)).unwrap());
        let c = order_shift_compare(&b(5), 2, &b(2), &b(1)).unwrap();
        assert_eq!(c.shifted.0, b(27));
        assert_eq!(c.before, Index::Found(b(20)));
        assert!(order_shift_check(&b(3), 2, &b(2), &b(1)).unwrap());
        assert_eq!(order_shift_compare(&b(3), 2, &b(2), &b(1)).unwrap().shifted.0, b(11));
        assert!(order_shift_check(&b(5), 1, &b(2), &b(3)).unwrap());
        assert_eq!(order_shift_compare(&b(5), 1, &b(2), &b(3)).unwrap().shifted.0, b(77));
    }

    #[test]
    fn pidx_shift_examples() {
        assert!(pidx_shift_check(&[b(5)], &b(25), &pair(3, 2), &b(1)).unwrap());
        let c = pidx_shift_compare(&[b(3)], &b(9), &pair(2, 1), &b(2)).unwrap();
        assert_eq!(c.shifted.1, b(1));
        assert!(c.holds());
        assert!(pidx_shift_check(&[b(5)], &b(5), &pair(2, 1), &b(1)).unwrap());
        assert!(matches!(
            pidx_shift_check(&[b(5)], &b(15), &pair(2, 1), &b(1)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn base_shift_fails_above_the_period_when_h_is_not_one() {
        // Λ_{2}(3) = 2^4, Λ_{2}(5) = 2^3; P_32(3,5) = 4 but P_32(19,13) = 2.
        let c = pidx_shift_compare(&[b(2)], &b(32), &pair(3, 5), &b(1)).unwrap();
        assert_eq!(c.shifted, (b(19), b(13)));
        assert_eq!(c.before, Index::Found(b(4)));
        assert_eq!(c.after, Index::Found(b(2)));
        assert!(!c.holds());
    }

    #[test]
    fn coincidence_examples() {
        assert_eq!(coincidence_count(&b(7), &pair(3, 2)).unwrap(), b(1));
        assert_eq!(coincidence_count(&b(5), &pair(2, 1)).unwrap(), b(1));
        assert_eq!(coincidence_count(&b(7), &pair(2, 1)).unwrap(), b(2));
        assert_eq!(coincidence_count_direct(&b(7), &pair(2, 1)).unwrap(), b(2));
        assert!(coincidence_count(&b(6), &pair(2, 1)).is_err());
    }

    #[test]
    fn cross_generator_examples() {
        let c = cross_generator_order(&b(7), &pair(3, 5)).unwrap();
        assert_eq!(c.index, b(3));
        assert!(c.cross_orders_match());
        // 3 ≡ 2^3 (mod 5): P_5(2,3) = 2 while 2·3^(4-2) ≡ 3 has order 4.
        let c = cross_generator_order(&b(5), &pair(2, 3)).unwrap();
        assert_eq!(c.index, b(2));
        assert_eq!(c.k_side_order, b(4));
        assert_eq!(c.h_side_order, b(4));
        assert!(!c.cross_orders_match());
        assert_eq!(c.ratio_order, c.index);
        assert!(BasePair::new(3u32, 3u32).is_err());
        assert!(matches!(cross_generator_order(&b(15), &pair(2, 7)), Err(Error::Domain(_))));
        assert!(matches!(cross_generator_order(&b(7), &pair(2, 3)), Err(Error::Domain(_))));
    }

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_coset_count(&b(7), &b(2)).unwrap(), 2);
        assert_eq!(cyclotomic_coset_count(&b(3), &b(2)).unwrap(), 1);
        assert_eq!(cyclotomic_coset_count(&b(2047), &b(2)).unwrap(), 186);
        assert_eq!(cyclotomic_coset_count_by_orders(&b(2047), &b(2)).unwrap(), b(186));
        assert!(cyclotomic_coset_count(&b(8), &b(2)).is_err());
    }
}
