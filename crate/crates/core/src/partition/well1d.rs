use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_positive, checked_big_g, PartitionResult};
use crate::error::{MemfError, Result};
use crate::kernels::{gamma_half, hermite_gaussian, scaled_erfc_complex, tail};
use crate::memf1d::CutParams;

/// `Z_m = sum_{l=1}^{m} e^{-B l^2}`.
pub fn well1d_head(b: f64, m: u32) -> f64 {
    (1..=m).map(|l| (-b * (l as f64).powi(2)).exp()).sum()
}

/// `T_p(x)` with every `k` from `-p` to `p` kept separately; the imaginary
/// part is the pairing residue.
pub fn well1d_t_complex(b: f64, p: u32, x: f64) -> Result<Complex64> {
    check_positive("B", b)?;
    let sb = b.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -(p as i64)..=(p as i64) {
        let v = PI * k as f64 / sb;
        acc += scaled_erfc_complex(Complex64::new(sb * x, -v), -(v * v))?;
    }
    Ok(0.5 * (PI / b).sqrt() * acc)
}

/// `T_p(x) = int_x^inf a_p(t) e^{-B t^2} dt`, summing the `k` and `-k` modes as
/// twice their real part.
pub fn well1d_t(b: f64, p: u32, x: f64) -> Result<f64> {
    check_positive("B", b)?;
    let sb = b.sqrt();
    let mut acc = 0.0;
    for k in (0..=p).rev() {
        let v = PI * k as f64 / sb;
        let term = scaled_erfc_complex(Complex64::new(sb * x, -v), -(v * v))?.re;
        acc += if k == 0 { term } else { 2.0 * term };
    }
    Ok(0.5 * (PI / b).sqrt() * acc)
}

/// `U_np(x) = e^{-Bx^2}/2 + sum_r (-1)^{r+1} T_{2r,p} B^{r-1/2} H_{2r-1}(sqrt(B) x) e^{-Bx^2}`.
pub fn well1d_u(b: f64, n: u32, p: u32, x: f64) -> Result<f64> {
    check_positive("B", b)?;
    let y = b.sqrt() * x;
    let mut acc = 0.5 * hermite_gaussian(0, y)?;
    for r in 1..=n / 2 {
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * tail(2 * r, p)? * b.powf(r as f64 - 0.5) * hermite_gaussian(2 * r - 1, y)?;
    }
    Ok(acc)
}

/// `W_np(x) = T_p(x) + U_np(x)`.
pub fn well1d_w(b: f64, n: u32, p: u32, x: f64) -> Result<f64> {
    Ok(well1d_t(b, p, x)? + well1d_u(b, n, p, x)?)
}

/// `T_{n,p} (floor(n/2) + 1) 2^n Gamma(n/2) / sqrt(pi) * B^{(n-1)/2}`.
pub fn well1d_bound_a(b: f64, n: u32, p: u32) -> Result<f64> {
    check_positive("B", b)?;
    if n < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "bound needs n > 1, got {n}"
        )));
    }
    let pieces = (n / 2 + 1) as f64;
    Ok(
        tail(n, p)? * pieces * 2f64.powi(n as i32) * gamma_half(n) / PI.sqrt()
            * b.powf(0.5 * (n as f64 - 1.0)),
    )
}

/// `T_{n,p} 2 (floor(n/2) + 1) G_{n-1} e^{-B(m+1)^2/2} B^{(n-1)/2}`.
pub fn well1d_bound_h(b: f64, m: u32, n: u32, p: u32) -> Result<f64> {
    check_positive("B", b)?;
    if n < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "bound needs n > 1, got {n}"
        )));
    }
    let g = checked_big_g(n - 1)?;
    let x = (m + 1) as f64;
    let pieces = (n / 2 + 1) as f64;
    Ok(tail(n, p)? * 2.0 * pieces * g * (-0.5 * b * x * x).exp() * b.powf(0.5 * (n as f64 - 1.0)))
}

/// `Z = Z_m + W_np(m+1)` with `R^A` and, where the envelope is verified, `R^H`.
pub fn well1d_partition(b: f64, cut: CutParams) -> Result<PartitionResult> {
    check_positive("B", b)?;
    let head = well1d_head(b, cut.m);
    let w = well1d_w(b, cut.n, cut.p, (cut.m + 1) as f64)?;
    let (bound_a, bound_h) = if cut.n >= 2 {
        (
            Some(well1d_bound_a(b, cut.n, cut.p)?),
            well1d_bound_h(b, cut.m, cut.n, cut.p).ok(),
        )
    } else {
        (None, None)
    };
    Ok(PartitionResult {
        value: head + w,
        head,
        w_terms: w,
        bound_a,
        bound_h,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::erfc_real;

    #[test]
    fn head_values() {
        assert_eq!(well1d_head(1.0, 0), 0.0);
        let want = (-1.0f64).exp() + (-4.0f64).exp();
        assert!((well1d_head(1.0, 2) - want).abs() < 1e-16);
        assert_eq!(well1d_head(10.0, 1), (-10.0f64).exp());
    }

    #[test]
    fn t_at_p0_is_erfc() {
        let want = 0.5 * PI.sqrt() * erfc_real(1.0);
        assert!((well1d_t(1.0, 0, 1.0).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn t_pairs_are_conjugate() {
        for (b, p, x) in [(1.0, 3, 1.0), (0.05, 4, 2.0), (7.0, 2, 0.5)] {
            let c = well1d_t_complex(b, p, x).unwrap();
            assert!(c.im.abs() < 1e-14, "{c}");
            assert!((c.re - well1d_t(b, p, x).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn u_small_cases() {
        let e = (-1.0f64).exp();
        assert!((well1d_u(1.0, 1, 0, 1.0).unwrap() - 0.5 * e).abs() < 1e-16);
        assert_eq!(
            well1d_u(1.0, 2, 1, 1.0).unwrap(),
            well1d_u(1.0, 3, 1, 1.0).unwrap()
        );
        assert!((well1d_u(1.0, 3, 0, 1.0).unwrap() - e * (0.5 + 1.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn bound_a_scales_with_b() {
        let one = well1d_bound_a(1.0, 3, 0).unwrap();
        let four = well1d_bound_a(4.0, 3, 0).unwrap();
        assert!((four - 4.0 * one).abs() < 1e-15);
        assert!(well1d_bound_a(1.0, 1, 0).is_err());
    }

    #[test]
    fn bound_h_needs_checked_degree() {
        assert!(well1d_bound_h(1.0, 0, 21, 0).is_ok());
        assert!(matches!(
            well1d_bound_h(1.0, 0, 22, 0),
            Err(MemfError::ConjectureRange { n: 21, .. })
        ));
    }
}
