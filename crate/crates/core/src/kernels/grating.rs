use std::f64::consts::PI;

use super::bernoulli::{bernoulli_any, MAX_BERNOULLI_INDEX};
use crate::error::{MemfError, Result};

/// The truncated Dirichlet kernel `sin((2p+1) pi x) / sin(pi x)`.
///
/// Equal to `sum_{k=-p}^{p} exp(i 2 pi k x)`; takes the value `2p + 1` at
/// integer `x`.
pub fn grating_kernel(p: u32, x: f64) -> f64 {
    // Reduce to t in [-1/2, 1/2]; the kernel has period 1.
    let t = x - x.round();
    let s = (PI * t).sin();
    if s.abs() < 1e-4 {
        let mut acc = 1.0;
        for k in (1..=p).rev() {
            acc += 2.0 * (2.0 * PI * k as f64 * t).cos();
        }
        return acc;
    }
    ((2 * p + 1) as f64 * PI * t).sin() / s
}

/// Periodic Bernoulli polynomial `P_n(x) = B_n(x - floor(x))`, `1 <= n <= 128`.
///
/// `P_1` is taken to be 0 at the integers (the value of its Fourier series).
pub fn periodic_bernoulli(n: u32, x: f64) -> Result<f64> {
    let max = 2 * MAX_BERNOULLI_INDEX;
    if n == 0 || n > max {
        return Err(MemfError::OrderOutOfRange {
            what: "periodic Bernoulli",
            order: n,
            max,
        });
    }
    let t = x - x.floor();
    if n == 1 && t == 0.0 {
        return Ok(0.0);
    }
    // B_n(t) = sum_k C(n, k) B_k t^{n-k}, Horner in t.
    let n = n as usize;
    let mut binom = 1.0;
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        coeffs.push(binom * bernoulli_any(k));
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    // coeffs[k] multiplies t^{n-k}
    let mut acc = 0.0;
    for c in coeffs {
        acc = acc * t + c;
    }
    Ok(acc)
}
