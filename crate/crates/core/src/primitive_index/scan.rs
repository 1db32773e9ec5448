use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{usage, Result};

/// Hard ceiling on any linear scan, whatever the configured limit.
pub const MAX_LINEAR_SCAN: u64 = 1_000_000_000;

/// Controls the scan oracles.
///
/// `limit` bounds the scan when the modulus shares a factor with `k` or
/// `h` (no a priori bound exists there); it defaults to `10 * N`.
/// `full_linear` makes the coprime minus oracle walk every exponent up to
/// `λ(N)` instead of only the divisors of `λ(N)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanConfig {
    pub limit: Option<BigUint>,
    pub full_linear: bool,
}

impl ScanConfig {
    pub fn with_limit(limit: impl Into<BigUint>) -> Self {
        ScanConfig {
            limit: Some(limit.into()),
            full_linear: false,
        }
    }

    pub fn full_linear() -> Self {
        ScanConfig {
            limit: None,
            full_linear: true,
        }
    }

    pub(crate) fn limit_for(&self, n: &BigUint) -> BigUint {
        self.limit.clone().unwrap_or_else(|| n * 10u32)
    }
}

pub(crate) fn bound_u64(bound: &BigUint) -> Result<u64> {
    match bound.to_u64() {
        Some(b) if b <= MAX_LINEAR_SCAN => Ok(b),
        _ => usage(format!(
            "scan bound {bound} exceeds the linear-scan ceiling {MAX_LINEAR_SCAN}"
        )),
    }
}

/// First `u` in `1..=bound` with `n | k^u - h^u` (or `k^u + h^u` when
/// `plus`), stepping the residues one multiplication at a time.
pub(crate) fn first_hit(n: &BigUint, k: &BigUint, h: &BigUint, bound: u64, plus: bool) -> Option<u64> {
    if let Some(m) = n.to_u64() {
        let m128 = m as u128;
        let kr = (k % n).to_u64().unwrap_or(0) as u128;
        let hr = (h % n).to_u64().unwrap_or(0) as u128;
        let (mut x, mut y) = (1u128 % m128, 1u128 % m128);
        for u in 1..=bound {
            x = x * kr % m128;
            y = y * hr % m128;
            let hit = if plus { (x + y) % m128 == 0 } else { x == y };
            if hit {
                return Some(u);
            }
        }
        return None;
    }
    let kr = k % n;
    let hr = h % n;
    let mut x = BigUint::from(1u32);
    let mut y = BigUint::from(1u32);
    for u in 1..=bound {
        x = x * &kr % n;
        y = y * &hr % n;
        let hit = if plus {
            ((&x + &y) % n).is_zero()
        } else {
            x == y
        };
        if hit {
            return Some(u);
        }
    }
    None
}
