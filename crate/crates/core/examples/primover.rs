//! Prime / overpseudoprime / ordinary composite classification.

use num_bigint::BigUint;
use pindex::primover::{is_primover, primover_by_divisors};

fn main() -> pindex::Result<()> {
    let base = BigUint::from(2u32);
    for n in [127u32, 341, 561, 2047, 3277] {
        let n = BigUint::from(n);
        let v = is_primover(&n, &base)?;
        let witness: Vec<String> = v.witness.iter().map(|(d, o)| format!("O_{d}={o}")).collect();
        println!(
            "{n}: {} (all divisors: {}) order {} [{}]",
            v.class,
            primover_by_divisors(&n, &base)?,
            v.order,
            witness.join(" ")
        );
    }
    Ok(())
}
