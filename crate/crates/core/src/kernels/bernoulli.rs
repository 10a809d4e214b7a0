use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{MemfError, Result};

/// Largest `r` accepted by [`bernoulli_number`] (returns `B_{2r}`).
pub const MAX_BERNOULLI_INDEX: u32 = 64;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_0..B_{2 * MAX} from sum_{k=0}^{n} C(n+1, k) B_k = 0, exact in rationals.
        let top = 2 * MAX_BERNOULLI_INDEX as usize;
        let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
        b.push(BigRational::from_integer(BigInt::from(1)));
        for n in 1..=top {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::from(1); // C(n+1, 0)
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc += BigRational::from_integer(binom.clone()) * bk;
                }
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            // binom is now C(n+1, n)
            b.push(-acc / BigRational::from_integer(binom));
        }
        b.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    })
}

/// Returns the Bernoulli number `B_{2r}` for `1 <= r <= 64`.
pub fn bernoulli_number(r: u32) -> Result<f64> {
    if r == 0 || r > MAX_BERNOULLI_INDEX {
        return Err(MemfError::OrderOutOfRange {
            what: "Bernoulli",
            order: r,
            max: MAX_BERNOULLI_INDEX,
        });
    }
    Ok(table()[2 * r as usize])
}

/// All Bernoulli numbers `B_k` (including `B_1 = -1/2`) for `k <= 128`.
pub(crate) fn bernoulli_any(k: usize) -> f64 {
    table()[k]
}
