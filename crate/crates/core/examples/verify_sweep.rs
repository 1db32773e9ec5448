//! Formula-against-oracle sweeps through the library API.

use pindex::cli::{verify, Target, VerifyRequest};
use pindex::primitive_index::ScanConfig;

fn main() -> pindex::Result<()> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    for target in [Target::PidxMinus, Target::PidxPlus, Target::Zsigmondy, Target::Theorem5] {
        let r = verify(&VerifyRequest::new(target), jobs, &ScanConfig::default())?;
        println!(
            "{}: {} cases, {} excluded, {} mismatches in {:.2}s",
            r.command,
            r.total_cases,
            r.excluded,
            r.mismatches.len(),
            r.elapsed
        );
        for m in r.mismatches.iter().take(3) {
            println!("  {} formula={} oracle={}", m.input, m.formula, m.oracle);
        }
    }
    Ok(())
}
