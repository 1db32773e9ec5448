//! Closed-form primover families: repunits, Wagstaff numbers and
//! Zsigmondy quotients.

use num_bigint::BigUint;
use pindex::primover::{repunit_verdict, wagstaff_verdict, z_p_op_report, z_pq_report, z_prime_power_verdict};

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn main() -> pindex::Result<()> {
    for p in [5u64, 29, 31, 101] {
        let (w, v) = wagstaff_verdict(&b(p))?;
        println!("Wagstaff({p}) = {w}: {} of order {}", v.class, v.order);
    }
    for n in [11u32, 12, 19, 23] {
        let (r, v) = repunit_verdict(n, &b(10))?;
        println!("R_{n} = {r}: {}", v.class);
    }
    let (z, v) = z_prime_power_verdict(3, 3, &b(2))?;
    println!("(2^27 - 1)/(2^9 - 1) = {z}: {}", v.class);

    for (p, q) in [(3u64, 5u64), (3, 7), (5, 7)] {
        let r = z_pq_report(&b(p), &b(q), &b(2))?;
        println!(
            "pq={p}*{q}: value {} Z {} identity {} class {}",
            r.value,
            r.zsigmondy,
            r.identity_holds(),
            r.verdict.map_or("-".to_string(), |v| v.class.to_string())
        );
    }
    // O_7(2) = 3 is prime.
    let r = z_p_op_report(&b(7), &b(2))?;
    println!("p=7 with its order: value {} Z {}", r.value, r.zsigmondy);
    Ok(())
}
