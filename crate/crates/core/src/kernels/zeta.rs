use std::f64::consts::TAU;
use std::sync::OnceLock;

use crate::error::{MemfError, Result};

/// `T_{s,p} = 2 (2 pi)^{-s} sum_{k>p} k^{-s}`, the weight of the Fourier modes
/// dropped by a cut of order `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCoefficient {
    pub s: u32,
    pub p: u32,
    pub value: f64,
}

/// Direct summation stops at the first multiple of this block past `p + BLOCK`;
/// the rest of the tail is closed with an Euler-Maclaurin integral correction.
const BLOCK: u64 = 10_000;

const TABLE_MAX_S: u32 = 130;
const TABLE_MAX_P: u32 = 64;

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `sum_{k >= n} k^{-s}` for `n` large compared with `s`.
fn integral_tail(s: u32, n: u64) -> f64 {
    let nf = n as f64;
    let sf = s as f64;
    let base = nf.powi(-(s as i32));
    // B_2/2!, B_4/4!, B_6/6! times rising factorials of s.
    let c1 = sf / 12.0;
    let c2 = -sf * (sf + 1.0) * (sf + 2.0) / 720.0;
    let c3 = sf * (sf + 1.0) * (sf + 2.0) * (sf + 3.0) * (sf + 4.0) / 30_240.0;
    let inv2 = 1.0 / (nf * nf);
    base * (nf / (sf - 1.0) + 0.5 + (c1 + (c2 + c3 * inv2) * inv2) / nf)
}

fn tail_sum_direct(s: u32, p: u32) -> f64 {
    let p = p as u64;
    let block_end = (p / BLOCK + 2) * BLOCK;
    // Beyond k_small the remaining tail is below 1e-20 of the first term.
    let sf = s as f64;
    let log_end = (sf * ((p + 1) as f64).ln() + 20.0 * std::f64::consts::LN_10 - (sf - 1.0).ln())
        / (sf - 1.0);
    let k_small = if log_end < 40.0 {
        (log_end.exp().ceil() as u64).max(p + 2 + s as u64)
    } else {
        u64::MAX
    };
    let end = block_end.min(k_small);

    let mut acc = Neumaier::default();
    acc.add(integral_tail(s, end + 1));
    for k in (p + 1..=end).rev() {
        acc.add((k as f64).powi(-(s as i32)));
    }
    acc.total()
}

fn table() -> &'static Vec<Vec<f64>> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (2..=TABLE_MAX_S)
            .map(|s| (0..=TABLE_MAX_P).map(|p| tail_sum_direct(s, p)).collect())
            .collect()
    })
}

/// `sum_{k > p} k^{-s}`, summed from the tail side.
pub fn tail_sum(s: u32, p: u32) -> Result<f64> {
    if s < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "zeta tail needs s >= 2, got s = {s}"
        )));
    }
    if s <= TABLE_MAX_S && p <= TABLE_MAX_P {
        Ok(table()[(s - 2) as usize][p as usize])
    } else {
        Ok(tail_sum_direct(s, p))
    }
}

/// Riemann zeta at an integer argument `s >= 2`.
pub fn zeta(s: u32) -> Result<f64> {
    tail_sum(s, 0)
}

/// Returns `T_{s,p}`.
pub fn zeta_tail(s: u32, p: u32) -> Result<TailCoefficient> {
    let sum = tail_sum(s, p)?;
    Ok(TailCoefficient {
        s,
        p,
        value: 2.0 * sum / TAU.powi(s as i32),
    })
}

/// Shorthand for `zeta_tail(s, p)?.value`.
pub fn tail(s: u32, p: u32) -> Result<f64> {
    zeta_tail(s, p).map(|t| t.value)
}
