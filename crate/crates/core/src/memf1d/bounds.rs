use super::sum::integrate_panels;
use super::{endpoint_difference, require, BoundKind, BoundReport, SmoothFunction1D};
use crate::error::{MemfError, Result};
use crate::kernels::tail;

const SEMI_INFINITE: &str = "semi-infinite range: bound applied as the b -> inf limit";

fn check_order(n: u32) -> Result<()> {
    if n < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "remainder bounds need n >= 2, got n = {n}"
        )));
    }
    Ok(())
}

fn sample_points(lo: f64, hi: f64) -> Vec<f64> {
    if hi.is_finite() {
        (0..=128)
            .map(|i| lo + (hi - lo) * i as f64 / 128.0)
            .collect()
    } else {
        (0..=160)
            .map(|j| lo + 2f64.powf(j as f64 / 4.0) - 1.0)
            .collect()
    }
}

/// Samples `f^{(order)}` on `[lo, hi]` and checks it never turns back by
/// more than rounding.
fn spot_check_monotone<F: SmoothFunction1D + ?Sized>(
    f: &F,
    order: u32,
    lo: f64,
    hi: f64,
) -> Result<bool> {
    let mut values = Vec::new();
    for x in sample_points(lo, hi) {
        values.push(require(f, order, x)?);
    }
    values.push(require(f, order, hi)?);
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    let rising = values[values.len() - 1] >= values[0];
    Ok(values.windows(2).all(|w| {
        if rising {
            w[1] >= w[0] - tol
        } else {
            w[1] <= w[0] + tol
        }
    }))
}

fn nodes(a_prime: f64, b: f64, partition: &[f64]) -> Result<Vec<f64>> {
    let mut pts = Vec::with_capacity(partition.len() + 2);
    pts.push(a_prime);
    for &x in partition {
        let last = *pts.last().unwrap_or(&a_prime);
        if !(x > last && x < b) {
            return Err(MemfError::InvalidPartition(format!(
                "breakpoint {x} is not strictly inside ({last}, {b})"
            )));
        }
        pts.push(x);
    }
    pts.push(b);
    Ok(pts)
}

fn pieces_monotone<F: SmoothFunction1D + ?Sized>(f: &F, order: u32, pts: &[f64]) -> Result<bool> {
    for w in pts.windows(2) {
        if !spot_check_monotone(f, order, w[0], w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R^A = T_{n,p} int_{a'}^{b} |f^{(n)}|`.
///
/// The integral comes from the function's closed form if it has one, else
/// from the total variation of `f^{(n-1)}` over its monotone pieces, else from
/// quadrature with the error estimate added.
pub fn bound_a<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
) -> Result<BoundReport> {
    check_order(n)?;
    require(f, n, a_prime)?;
    let t = tail(n, p)?;
    let mut report;
    if a_prime == b {
        report = BoundReport::new(BoundKind::A, 0.0);
    } else if let Some(integral) = f.abs_derivative_integral(n, a_prime, b) {
        report = BoundReport::new(BoundKind::A, t * integral)
            .assuming("closed-form integral of |f^(n)|");
    } else {
        let variation = match f.monotone_partition(n - 1, a_prime, b) {
            Some(parts) => {
                let pts = nodes(a_prime, b, &parts)?;
                if pieces_monotone(f, n - 1, &pts)? {
                    let mut vals = Vec::with_capacity(pts.len());
                    for &x in &pts {
                        vals.push(require(f, n - 1, x)?);
                    }
                    Some(vals.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>())
                } else {
                    None
                }
            }
            None => None,
        };
        report = match variation {
            Some(v) => BoundReport::new(BoundKind::A, t * v)
                .assuming("f^(n-1) monotone between supplied breakpoints (spot-checked)"),
            None => {
                let (value, error) = integrate_panels(
                    |x| f.derivative(n, x).unwrap_or(f64::NAN).abs(),
                    a_prime,
                    b,
                    1.0,
                    |x| f.tail_integral_bound(n, x),
                )?;
                BoundReport::new(BoundKind::A, t * (value + error))
                    .assuming("quadrature of |f^(n)| with its error estimate added")
            }
        };
    }
    if b.is_infinite() {
        report = report.assuming(SEMI_INFINITE);
    }
    Ok(report)
}

fn monotone_endpoint_bound<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
    assume_monotone: bool,
    kind: BoundKind,
) -> Result<BoundReport> {
    check_order(n)?;
    let established = assume_monotone
        || match f.monotone_partition(n, a_prime, b) {
            Some(parts) if parts.is_empty() => spot_check_monotone(f, n, a_prime, b)?,
            _ => false,
        };
    if !established {
        return Err(MemfError::MonotonicityNotEstablished { order: n });
    }
    let factor = if kind == BoundKind::B { 2.0 } else { 1.0 };
    let value = factor * tail(n + 1, p)? * endpoint_difference(f, n, a_prime, b)?.abs();
    let mut report = BoundReport::new(kind, value).assuming(if assume_monotone {
        "f^(n) monotone on [a', b] (caller-asserted)"
    } else {
        "f^(n) monotone on [a', b]"
    });
    if b.is_infinite() {
        report = report.assuming(SEMI_INFINITE);
    }
    Ok(report)
}

/// `R^B = 2 T_{n+1,p} |M_n(a', b)|` for odd `n` with `f^{(n)}` monotone.
pub fn bound_b<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
    assume_monotone: bool,
) -> Result<BoundReport> {
    if n.is_multiple_of(2) {
        return Err(MemfError::InvalidArgument(format!(
            "bound B needs odd n, got {n}"
        )));
    }
    monotone_endpoint_bound(f, a_prime, b, n, p, assume_monotone, BoundKind::B)
}

/// `R^C = T_{n+1,p} |M_n(a', b)|` for even `n` with `f^{(n)}` monotone.
pub fn bound_c<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
    assume_monotone: bool,
) -> Result<BoundReport> {
    if n % 2 == 1 {
        return Err(MemfError::InvalidArgument(format!(
            "bound C needs even n, got {n}"
        )));
    }
    monotone_endpoint_bound(f, a_prime, b, n, p, assume_monotone, BoundKind::C)
}

/// `T_{n,p} l_{n-1} (max f^{(n-1)} - min f^{(n-1)})` for a partition of
/// `[a', b]` into `l_{n-1}` pieces on which `f^{(n-1)}` is monotone.
pub fn bound_piecewise<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
    partition: &[f64],
) -> Result<BoundReport> {
    check_order(n)?;
    let pts = nodes(a_prime, b, partition)?;
    for w in pts.windows(2) {
        if !spot_check_monotone(f, n - 1, w[0], w[1])? {
            return Err(MemfError::InvalidPartition(format!(
                "f^({}) is not monotone on [{}, {}]",
                n - 1,
                w[0],
                w[1]
            )));
        }
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in &pts {
        let v = require(f, n - 1, x)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let pieces = (pts.len() - 1) as f64;
    let mut report = BoundReport::new(BoundKind::PiecewiseA, tail(n, p)? * pieces * (hi - lo))
        .assuming(format!(
            "f^(n-1) monotone on each of {pieces} pieces (spot-checked)"
        ));
    if b.is_infinite() {
        report = report.assuming(SEMI_INFINITE);
    }
    Ok(report)
}

/// Every bound whose preconditions can be established for `f` on `[a', b]`.
pub fn attach_bounds<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
) -> Vec<BoundReport> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    if let Ok(r) = bound_a(f, a_prime, b, n, p) {
        out.push(r);
    }
    let endpoint = if n % 2 == 1 {
        bound_b(f, a_prime, b, n, p, false)
    } else {
        bound_c(f, a_prime, b, n, p, false)
    };
    if let Ok(r) = endpoint {
        out.push(r);
    }
    if let Some(parts) = f.monotone_partition(n - 1, a_prime, b) {
        if let Ok(r) = bound_piecewise(f, a_prime, b, n, p, &parts) {
            out.push(r);
        }
    }
    out
}
