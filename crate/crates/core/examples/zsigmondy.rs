//! Zsigmondy numbers of k^n - h^n and k^n + h^n.

use pindex::primitive_index::BasePair;
use pindex::zsigmondy::{homog_cyclotomic, zsigmondy_minus, zsigmondy_minus_direct, zsigmondy_plus};

fn main() -> pindex::Result<()> {
    let pair = BasePair::new(2u32, 1u32)?;
    for n in 1..=12 {
        let z = zsigmondy_minus(n, &pair)?;
        let direct = zsigmondy_minus_direct(n, &pair)?;
        let exceptional = z.exceptional_prime.map_or("none".to_string(), |p| p.to_string());
        println!(
            "n={n:2} Phi={:5} exceptional={exceptional:4} Z={} (stripped: {})",
            z.phi_value, z.value, direct.value
        );
    }
    println!("Phi_20(2,1) = {}", homog_cyclotomic(20, &pair)?);
    let pair = BasePair::new(5u32, 3u32)?;
    for n in 1..=6 {
        println!("zeta({n}, 5, 3) = {}", zsigmondy_plus(n, &pair)?.value);
    }
    Ok(())
}
