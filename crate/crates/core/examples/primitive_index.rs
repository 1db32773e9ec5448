//! Minus and plus primitive indexes: closed form, oracle and γ.

use num_bigint::BigUint;
use pindex::primitive_index::{gamma, nu2_plus, pidx_minus, pidx_minus_oracle, pidx_plus, pidx_plus_oracle, BasePair};

fn main() -> pindex::Result<()> {
    let pair = BasePair::new(2u32, 1u32)?;
    for n in [63u32, 341, 1023] {
        let n = BigUint::from(n);
        let (f, o) = (pidx_minus(&n, &pair)?, pidx_minus_oracle(&n, &pair)?);
        println!("P_{n}(2,1) = {} (scan: {})", f.index, o.index);
    }
    for n in [5u32, 7, 15, 41] {
        let n = BigUint::from(n);
        let (f, o) = (pidx_plus(&n, &pair)?, pidx_plus_oracle(&n, &pair)?);
        println!("P^{n}(2,1) = {} (scan: {})", f.index, o.index);
    }
    let g = gamma(&BigUint::from(2u32), &BasePair::new(3u32, 1u32)?)?;
    println!("gamma_2(3,1) = {} via {:?}", g.value, g.branch);
    println!("nu2(3^3 + 1) = {}", nu2_plus(&BasePair::new(3u32, 1u32)?, 3)?);
    Ok(())
}
