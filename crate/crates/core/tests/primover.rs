//! Primover classification sweeps and the closed-form families.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use pindex::arith::is_prime;
use pindex::primitive_index::BasePair;
use pindex::primover::{
    is_primover, primover_by_divisors, repunit_verdict, wagstaff_verdict, z_p_op_report, z_pq_report,
    z_prime_power_verdict, PrimoverClass,
};
use pindex::order_invariance::mult_order;
use pindex::zsigmondy::zsigmondy_minus;

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn prime(n: u64) -> bool {
    is_prime(&b(n))
}

#[test]
fn primes_are_primover_with_the_coset_identity() {
    for p in (2..=10_000u64).filter(|&p| prime(p)) {
        for k in [2u64, 3, 10] {
            if k % p == 0 {
                continue;
            }
            let v = is_primover(&b(p), &b(k)).unwrap();
            assert_eq!(v.class, PrimoverClass::Prime);
            assert_eq!(v.coset_identity_holds, Some(true), "p={p} k={k}");
        }
    }
}

#[test]
fn both_routes_agree_on_composites() {
    let mut overpseudoprimes = Vec::new();
    for n in (9..=10_000u64).step_by(2).filter(|&n| !prime(n)) {
        let v = is_primover(&b(n), &b(2)).unwrap();
        assert_eq!(v.class, primover_by_divisors(&b(n), &b(2)).unwrap(), "n={n}");
        if v.class == PrimoverClass::Overpseudoprime {
            assert!(b(2).modpow(&b(n - 1), &b(n)).is_one(), "{n} fails the Fermat test");
            assert_eq!(v.coset_identity_holds, Some(true));
            overpseudoprimes.push(n);
        }
    }
    assert_eq!(overpseudoprimes, [2047, 3277, 4033, 8321]);
}

#[test]
fn repunits_are_primover_for_prime_lengths_not_dividing_the_base_minus_one() {
    let mut exceptions = Vec::new();
    for k in [2u64, 3, 5] {
        for n in 2..=13u32 {
            let (_, v) = repunit_verdict(n, &b(k)).unwrap();
            if v.is_primover() != prime(u64::from(n)) {
                exceptions.push((k, n));
                assert_eq!((k - 1) % u64::from(n), 0);
            }
        }
    }
    assert_eq!(exceptions, [(3, 2), (5, 2)]);
}

#[test]
fn prime_power_quotients_are_primover_iff_n_is_prime() {
    for n in 2..=10u32 {
        for a in 1..=3u32 {
            let (value, v) = z_prime_power_verdict(n, a, &b(2)).unwrap();
            assert!(value.is_odd());
            assert_eq!(v.is_primover(), prime(u64::from(n)), "n={n} a={a}");
        }
    }
}

#[test]
fn wagstaff_numbers_are_primover() {
    for p in (3..=31u64).filter(|&p| prime(p)) {
        let (_, v) = wagstaff_verdict(&b(p)).unwrap();
        assert!(v.is_primover(), "p={p}");
    }
}

#[test]
fn zsigmondy_numbers_are_primover() {
    let pair = BasePair::new(2u32, 1u32).unwrap();
    for n in 1..=30 {
        let z = zsigmondy_minus(n, &pair).unwrap().value;
        if z > BigUint::one() {
            assert!(is_primover(&z, &b(2)).unwrap().is_primover(), "n={n}");
        }
    }
}

#[test]
fn pq_quotient_identity_and_primover_fail_together() {
    let primes: Vec<u64> = (2..=13).filter(|&p| prime(p)).collect();
    let mut side_condition_failures = 0;
    for k in [2u64, 3, 5, 6] {
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                if k % p == 0 || k % q == 0 {
                    continue;
                }
                let r = z_pq_report(&b(p), &b(q), &b(k)).unwrap();
                assert_eq!(r.identity_holds(), r.preconditions_hold, "p={p} q={q} k={k}");
                let primover = r.verdict.as_ref().is_some_and(|v| v.is_primover());
                assert_eq!(primover, r.preconditions_hold, "p={p} q={q} k={k}");
                side_condition_failures += usize::from(!r.preconditions_hold);
            }
        }
    }
    assert!(side_condition_failures > 0);
}

#[test]
fn p_times_order_quotients_match_zsigmondy() {
    let mut checked = 0;
    for k in [2u64, 3, 5] {
        for p in (3..=60u64).filter(|&p| prime(p) && k % p != 0) {
            if !prime(mult_order(&b(p), &b(k)).unwrap().try_into().unwrap()) {
                continue;
            }
            let r = z_p_op_report(&b(p), &b(k)).unwrap();
            assert!(r.identity_holds(), "p={p} k={k}");
            assert!(r.verdict.as_ref().is_none_or(|v| v.is_primover()), "p={p} k={k}");
            checked += 1;
        }
    }
    assert!(checked >= 5);
}
