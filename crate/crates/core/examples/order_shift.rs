//! Orders, the Λ shift period, and what survives a base shift.

use num_bigint::BigUint;
use pindex::order_invariance::{lambda_period, mult_order, order_shift_compare, pidx_shift_compare};
use pindex::primitive_index::BasePair;

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn main() -> pindex::Result<()> {
    println!("O_1000(3) = {}", mult_order(&b(1000), &b(3))?);

    let lambda = lambda_period(&[b(2), b(3)], &b(5))?;
    println!("Lambda over {{2,3}} for k=5: {}", lambda.value);

    let c = order_shift_compare(&b(7), 2, &b(3), &b(2))?;
    println!(
        "order mod 49: k={} -> {}, k={} -> {} (holds: {})",
        c.original.0,
        c.before,
        c.shifted.0,
        c.after,
        c.holds()
    );

    // Both bases moving breaks the index at higher prime powers.
    let c = pidx_shift_compare(&[b(2)], &b(32), &BasePair::new(3u32, 5u32)?, &b(1))?;
    println!(
        "P_32{:?} = {}, P_32{:?} = {} (holds: {})",
        c.original,
        c.before,
        c.shifted,
        c.after,
        c.holds()
    );
    Ok(())
}
