//! Sweeps of the primitive-index identities against direct divisibility.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use pindex::arith::carmichael_lambda;
use pindex::primitive_index::{
    divides_minus, divides_plus, pidx_minus, pidx_minus_oracle, pidx_plus, pidx_plus_oracle, BasePair,
};
use proptest::prelude::*;

const PAIRS: [(u64, u64); 6] = [(2, 1), (3, 1), (3, 2), (5, 2), (10, 3), (4, 1)];

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pair(k: u64, h: u64) -> BasePair {
    BasePair::new(k, h).unwrap()
}

fn minus_index(n: u64, k: u64, h: u64) -> Option<u64> {
    pidx_minus(&b(n), &pair(k, h)).unwrap().value().map(|u| u.to_u64().unwrap())
}

/// Residues of `k^u ∓ h^u` for `u = 1..=len`, computed by repeated
/// multiplication.
fn residues(n: u64, k: u64, h: u64, len: u64, plus: bool) -> Vec<bool> {
    let (n, k, h) = (n as u128, k as u128, h as u128);
    let (mut x, mut y) = (1u128, 1u128);
    (1..=len)
        .map(|_| {
            x = x * k % n;
            y = y * h % n;
            if plus {
                (x + y) % n == 0
            } else {
                x == y
            }
        })
        .collect()
}

fn coprime(n: u64, k: u64, h: u64) -> bool {
    n.gcd(&k) == 1 && n.gcd(&h) == 1
}

#[test]
fn divisibility_through_minus_index() {
    for &(k, h) in &PAIRS {
        for n in 2..=2000u64 {
            if !coprime(n, k, h) {
                continue;
            }
            let lam = carmichael_lambda(&b(n)).unwrap().to_u64().unwrap();
            let p = minus_index(n, k, h).expect("coprime modulus has an index");
            for (i, direct) in residues(n, k, h, 3 * lam, false).into_iter().enumerate() {
                let u = i as u64 + 1;
                assert_eq!(u.is_multiple_of(p), direct, "n={n} k={k} h={h} u={u}");
                if n <= 150 {
                    assert_eq!(divides_minus(&b(n), &pair(k, h), &b(u)).unwrap(), direct);
                }
            }
        }
    }
}

#[test]
fn minus_index_divides_order_lcm_and_lambda() {
    let order = |n: u64, x: u64| -> u64 {
        if x % n == 1 % n {
            return 1;
        }
        pidx_minus_oracle(&b(n), &pair(x, 1)).unwrap().value().unwrap().to_u64().unwrap()
    };
    for &(k, h) in &PAIRS {
        for n in 2..=2000u64 {
            if !coprime(n, k, h) {
                continue;
            }
            let p = minus_index(n, k, h).unwrap();
            let lam = carmichael_lambda(&b(n)).unwrap().to_u64().unwrap();
            assert_eq!(order(n, k).lcm(&order(n, h)) % p, 0, "n={n} k={k} h={h}");
            assert_eq!(lam % p, 0);
        }
    }
}

#[test]
fn divisibility_through_plus_index() {
    for &(k, h) in &PAIRS {
        for n in (2..=500u64).filter(|n| n.gcd(&h) == 1) {
            let index = pidx_plus(&b(n), &pair(k, h)).unwrap();
            let index = index.value().map(|u| u.to_u64().unwrap());
            for (i, direct) in residues(n, k, h, 100, true).into_iter().enumerate() {
                let u = i as u64 + 1;
                if n > 2 {
                    let via_index = index.is_some_and(|p| u.is_multiple_of(p) && (u / p) % 2 == 1);
                    assert_eq!(via_index, direct, "n={n} k={k} h={h} u={u}");
                }
                if n <= 120 {
                    assert_eq!(divides_plus(&b(n), &pair(k, h), &b(u)).unwrap(), direct, "n={n} k={k} h={h} u={u}");
                }
            }
        }
    }
}

#[test]
fn plus_index_is_half_the_minus_index_on_odd_prime_powers() {
    let odd_prime_powers: Vec<(u64, u64)> = (3..=1000u64)
        .filter_map(|q| {
            let f = pindex::arith::factorize(&b(q)).unwrap();
            (f.factors().len() == 1 && q % 2 == 1)
                .then(|| (f.factors()[0].0.to_u64().unwrap(), q))
        })
        .collect();
    let mut checked = 0;
    for &(k, h) in &PAIRS {
        for &(p, q) in &odd_prime_powers {
            if (k * h) % p == 0 {
                continue;
            }
            let minus = minus_index(q, k, h).unwrap();
            if minus % 2 == 1 {
                assert!(!pidx_plus_oracle(&b(q), &pair(k, h)).unwrap().index.is_found());
                continue;
            }
            let plus = pidx_plus_oracle(&b(q), &pair(k, h)).unwrap().value().unwrap().to_u64().unwrap();
            assert_eq!(2 * plus, minus, "q={q} k={k} h={h}");
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn index_is_monotone_under_divisibility() {
    for &(k, h) in &PAIRS {
        for n2 in 2..=2000u64 {
            if !coprime(n2, k, h) {
                continue;
            }
            let p2 = minus_index(n2, k, h).unwrap();
            for n1 in (2..n2).filter(|d| n2 % d == 0) {
                let p1 = minus_index(n1, k, h).unwrap();
                assert_eq!(p2 % p1, 0, "{n1} | {n2}, k={k} h={h}");
            }
        }
    }
}

proptest! {
    #[test]
    fn minus_formula_matches_oracle(n in 2u64..50_000, k in 1u64..60, h in 1u64..60) {
        prop_assume!(k != h && n.gcd(&h) == 1);
        let pr = pair(k, h);
        let formula = pidx_minus(&b(n), &pr).unwrap();
        let oracle = pidx_minus_oracle(&b(n), &pr).unwrap();
        prop_assert!(formula.index.agrees_with(&oracle.index), "n={} k={} h={}", n, k, h);
    }

    #[test]
    fn plus_formula_matches_oracle(n in 2u64..5_000, k in 1u64..40, h in 1u64..40) {
        prop_assume!(k != h && n.gcd(&h) == 1);
        let pr = pair(k, h);
        let formula = pidx_plus(&b(n), &pr).unwrap();
        let oracle = pidx_plus_oracle(&b(n), &pr).unwrap();
        prop_assert!(formula.index.agrees_with(&oracle.index), "n={} k={} h={}", n, k, h);
    }
}
