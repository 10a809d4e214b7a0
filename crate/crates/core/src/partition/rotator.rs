use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_positive, checked_big_g, PartitionResult};
use crate::error::{MemfError, Result};
use crate::kernels::{hermite_gaussian, scaled_erfc_complex, tail};
use crate::memf1d::CutParams;

/// `Z'_m = sum_{l=0}^{m-1} (2l+1) e^{-Bc l(l+1)}`.
pub fn rotator_head(bc: f64, m: u32) -> f64 {
    (0..m)
        .map(|l| {
            let l = l as f64;
            (2.0 * l + 1.0) * (-bc * l * (l + 1.0)).exp()
        })
        .sum()
}

/// Grating part of the rotator cut at the half-integer point `x`.
pub fn rotator_t(bc: f64, p: u32, x: f64) -> Result<f64> {
    check_positive("Bc", bc)?;
    let sb = bc.sqrt();
    let shift = -bc * (x * x - 0.25);
    let lead = (2 * p + 1) as f64 / bc * shift.exp();
    let mut acc = 0.0;
    for k in (1..=p).rev() {
        let v = PI * k as f64 / sb;
        // Im(e^{-v^2} erf(z)) = -Im(e^{-v^2} erfc(z))
        let im_erf = -scaled_erfc_complex(Complex64::new(sb * x, -v), -(v * v))?.im;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * k as f64 * im_erf;
    }
    Ok(lead + 2.0 * (PI / bc).powf(1.5) * (0.25 * bc).exp() * acc)
}

/// Derivative corrections and endpoint term of the rotator cut.
pub fn rotator_u(bc: f64, n: u32, p: u32, x: f64) -> Result<f64> {
    check_positive("Bc", bc)?;
    let y = bc.sqrt() * x;
    let lift = (0.25 * bc).exp();
    let mut acc = x * hermite_gaussian(0, y)?;
    for r in 1..=n / 2 {
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * tail(2 * r, p)? * bc.powi(r as i32 - 1) * hermite_gaussian(2 * r, y)?;
    }
    Ok(acc * lift)
}

/// `T_{n,p} [(n+3)/2] 2 G_n e^{-Bc(m(m+1)/2 - 1/8)} Bc^{n/2 - 1}`.
pub fn rotator_bound_h(bc: f64, m: u32, n: u32, p: u32) -> Result<f64> {
    check_positive("Bc", bc)?;
    if n < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "bound needs n > 1, got {n}"
        )));
    }
    let g = checked_big_g(n)?;
    let mf = m as f64;
    let pieces = ((n + 3) / 2) as f64;
    Ok(tail(n, p)?
        * pieces
        * 2.0
        * g
        * (-bc * (0.5 * mf * (mf + 1.0) - 0.125)).exp()
        * bc.powf(0.5 * n as f64 - 1.0))
}

/// `Z = Z'_m + T_p(m + 1/2) + U_np(m + 1/2)`.
pub fn rotator_partition(bc: f64, cut: CutParams) -> Result<PartitionResult> {
    check_positive("Bc", bc)?;
    let head = rotator_head(bc, cut.m);
    let x = cut.m as f64 + 0.5;
    let w = rotator_t(bc, cut.p, x)? + rotator_u(bc, cut.n, cut.p, x)?;
    let bound_h = if cut.n >= 2 {
        Some(rotator_bound_h(bc, cut.m, cut.n, cut.p)?)
    } else {
        None
    };
    Ok(PartitionResult {
        value: head + w,
        head,
        w_terms: w,
        bound_a: None,
        bound_h,
        cut,
    })
}
