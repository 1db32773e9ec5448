//! Residue coincidences, cross-generators and cyclotomic cosets.

use num_bigint::BigUint;
use pindex::order_invariance::{
    coincidence_count, coincidence_count_direct, cross_generator_order, cyclotomic_coset_count,
    cyclotomic_coset_count_by_orders,
};
use pindex::primitive_index::BasePair;

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn main() -> pindex::Result<()> {
    let pair = BasePair::new(3u32, 2u32)?;
    for n in [7u64, 25, 77] {
        let (f, d) = (coincidence_count(&b(n), &pair)?, coincidence_count_direct(&b(n), &pair)?);
        println!("n={n}: u <= phi(n) with 3^u = 2^u: {f} (direct {d})");
    }

    let g = cross_generator_order(&b(5), &BasePair::new(3u32, 2u32)?)?;
    println!(
        "n=5 (3,2): index {}, order of k/h {}, cross orders {} and {} (match: {})",
        g.index,
        g.ratio_order,
        g.k_side_order,
        g.h_side_order,
        g.cross_orders_match()
    );

    for p in [7u64, 31, 127, 73] {
        let r = cyclotomic_coset_count(&b(p), &b(2))?;
        println!("p={p}: {r} cosets of 2 (by orders: {})", cyclotomic_coset_count_by_orders(&b(p), &b(2))?);
    }
    Ok(())
}
