use std::f64::consts::PI;

use super::well1d::{well1d_head, well1d_w};
use super::{check_positive, checked_big_g, PartitionResult};
use crate::error::{MemfError, Result};
use crate::kernels::{erfc_real, tail};
use crate::memf1d::CutParams;

/// `pi/(4xy) [erfc(x) erfc(nu y) + erfc(y) erfc(nu x) - erfc(nu x) erfc(nu y)]`.
pub fn xi(x: f64, y: f64, nu: f64) -> f64 {
    let (ex, ey) = (erfc_real(x), erfc_real(y));
    let (enx, eny) = (erfc_real(nu * x), erfc_real(nu * y));
    PI / (4.0 * x * y) * (ex * eny + ey * enx - enx * eny)
}

/// `sqrt(pi)/(2x) [erfc(x) e^{-(nu y)^2} + erfc(nu x) e^{-y^2} - erfc(nu x) e^{-(nu y)^2}]`.
pub fn eta(x: f64, y: f64, nu: f64) -> f64 {
    let (ex, enx) = (erfc_real(x), erfc_real(nu * x));
    let (gy, gny) = ((-y * y).exp(), (-(nu * y) * (nu * y)).exp());
    PI.sqrt() / (2.0 * x) * (ex * gny + enx * gy - enx * gny)
}

/// Envelope bound on the remainder of the 2D square-well cut.
pub fn well2d_bound_h(b: f64, m: u32, n: u32, p: u32) -> Result<f64> {
    check_positive("B", b)?;
    if n < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "bound needs n > 1, got {n}"
        )));
    }
    let g = checked_big_g(n)?;
    let t = tail(n, p)?;
    let nu = (m + 1) as f64;
    let (h, s) = ((0.5 * b).sqrt(), b.sqrt());
    let bn2 = b.powf(0.5 * n as f64);
    let mut side = 0.0;
    for r in 1..=n / 2 {
        side += tail(2 * r, p)? * b.powf(r as f64 - 0.5) * checked_big_g(2 * r - 1)?;
    }
    let eta_hh = eta(h, h, nu);
    let inner = 2.0 * (2 * p + 1) as f64 * xi(h, s, nu)
        + eta(h, s, nu)
        + 2.0 * side * eta_hh
        + t * bn2 * g * xi(h, h, nu);
    Ok(t * bn2 * g * inner)
}

/// `Z = Z_m^2 + W_np(m+1) (2 W_np(1) - W_np(m+1))`.
pub fn well2d_partition(b: f64, m: u32, n: u32, p: u32) -> Result<PartitionResult> {
    check_positive("B", b)?;
    let cut = CutParams::new(m, n, p)?;
    let zm = well1d_head(b, m);
    let w1 = well1d_w(b, n, p, 1.0)?;
    let wm = if m == 0 {
        w1
    } else {
        well1d_w(b, n, p, (m + 1) as f64)?
    };
    let head = zm * zm;
    let w_terms = wm * (2.0 * w1 - wm);
    let bound_h = if n >= 2 {
        Some(well2d_bound_h(b, m, n, p)?)
    } else {
        None
    };
    Ok(PartitionResult {
        value: head + w_terms,
        head,
        w_terms,
        bound_a: None,
        bound_h,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_is_symmetric() {
        for (x, y, nu) in [(0.7, 1.3, 1.0), (0.2, 2.0, 3.0)] {
            assert!((xi(x, y, nu) - xi(y, x, nu)).abs() < 1e-15);
        }
    }

    #[test]
    fn xi_at_nu_one() {
        let h = 0.5f64.sqrt();
        let want = PI / (4.0 * h) * erfc_real(h) * erfc_real(1.0);
        assert!((xi(h, 1.0, 1.0) - want).abs() < 1e-15);
    }

    #[test]
    fn eta_limits() {
        let (x, y): (f64, f64) = (0.6, 0.9);
        let at_one = PI.sqrt() / (2.0 * x) * erfc_real(x) * (-y * y).exp();
        assert!((eta(x, y, 1.0) - at_one).abs() < 1e-15);
        // the boundary recedes as nu grows
        assert!(eta(x, y, 40.0) < 1e-250);
    }

    #[test]
    fn value_minus_head_is_w_product() {
        for m in 0..4 {
            let r = well2d_partition(0.7, m, 5, 2).unwrap();
            let w1 = well1d_w(0.7, 5, 2, 1.0).unwrap();
            let wm = well1d_w(0.7, 5, 2, (m + 1) as f64).unwrap();
            assert!((r.value - well1d_head(0.7, m).powi(2) - wm * (2.0 * w1 - wm)).abs() < 1e-15);
        }
    }
}
