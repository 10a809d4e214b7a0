use std::cell::Cell;

use rayon::prelude::*;

use super::{require2, trace_boundary, GridRegion, SmoothFunction2D};
use crate::error::{MemfError, Result};
use crate::kernels::tail;
use crate::memf1d::{BoundKind, BoundReport};
use crate::quad::{integrate, QuadConfig};

// |.| of a derivative has kinks at its zeros; a looser target keeps the
// adaptive splitting bounded, and the error estimate is added to the value.
const ABS_CFG: QuadConfig = QuadConfig {
    abs_tol: 1e-300,
    rel_tol: 1e-9,
    max_subdivisions: 4000,
};

type Partial = (u32, u32);

/// Upper estimate of `int_lo^{lo+1} g`.
fn upper<G: Fn(f64) -> f64>(g: G, lo: f64) -> Result<f64> {
    let r = integrate(g, lo, lo + 1.0, &ABS_CFG).into_result()?;
    Ok(r.value + r.error)
}

fn abs_sum<F: SmoothFunction2D + ?Sized>(f: &F, terms: &[Partial], x: f64, y: f64) -> f64 {
    terms
        .iter()
        .map(|&(mu, nu)| f.partial(mu, nu, x, y).unwrap_or(f64::NAN).abs())
        .sum()
}

/// `sum over squares of int int sum_terms |f_{mu,nu}|`.
fn area_integral<F: SmoothFunction2D + ?Sized>(
    f: &F,
    region: &GridRegion,
    terms: &[Partial],
) -> Result<f64> {
    let squares: Vec<(i64, i64)> = region.squares().collect();
    let parts: Vec<Result<f64>> = squares
        .par_iter()
        .map(|&(i, j)| {
            let failure = Cell::new(None);
            let inner = |x: f64| match upper(|y| abs_sum(f, terms, x, y), j as f64) {
                Ok(v) => v,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            };
            let r = upper(inner, i as f64);
            match failure.take() {
                Some(e) => Err(e),
                None => r,
            }
        })
        .collect();
    parts.into_iter().sum()
}

/// `sum over boundary edges of one orientation of int sum_terms |f_{mu,nu}|` along the edge.
fn edge_integral<F: SmoothFunction2D + ?Sized>(
    f: &F,
    region: &GridRegion,
    horizontal: bool,
    terms: &[Partial],
) -> Result<f64> {
    if terms.is_empty() {
        return Ok(0.0);
    }
    let edges: Vec<_> = trace_boundary(region)
        .edges()
        .filter(|e| e.dir.is_horizontal() == horizontal)
        .copied()
        .collect();
    let parts: Vec<Result<f64>> = edges
        .par_iter()
        .map(|e| {
            let (i, j) = e.low();
            let (fi, fj) = (i as f64, j as f64);
            if horizontal {
                upper(|x| abs_sum(f, terms, x, fj), fi)
            } else {
                upper(|y| abs_sum(f, terms, fi, y), fj)
            }
        })
        .collect();
    parts.into_iter().sum()
}

fn check(f: &(impl SmoothFunction2D + ?Sized), region: &GridRegion, n: u32, n2: u32) -> Result<()> {
    if n < 2 || n2 < 2 {
        return Err(MemfError::InvalidArgument(format!(
            "2D remainder bounds need n, n' >= 2, got ({n}, {n2})"
        )));
    }
    if let Some((i, j)) = region.squares().next() {
        let (x, y) = (i as f64, j as f64);
        for (mu, nu) in [(n, 0), (0, n2), (n, n2), (n, n2 - 1), (n - 1, n2)] {
            require2(f, mu, nu, x, y)?;
        }
    }
    Ok(())
}

/// `R^A_{np,n'p'}`:
/// `T_{n,p} ((2p'+1) II|f_{n,0}| + 1/2 O|f_{n,0} dx|)`
/// `+ T_{n',p'} ((2p+1) II|f_{0,n'}| + 1/2 O|f_{0,n'} dy|)`
/// `+ T_{n,p} sum_{r<=n'/2} T_{2r,p'} O|f_{n,2r-1} dx|`
/// `+ T_{n',p'} sum_{r<=n/2} T_{2r,p} O|f_{2r-1,n'} dy|`
/// `+ T_{n,p} T_{n',p'} II|f_{n,n'}|`,
/// with `II` over the region and `O|. dx|`, `O|. dy|` over its horizontal and
/// vertical boundary edges.
pub fn remainder_bound_2d<F: SmoothFunction2D + ?Sized>(
    f: &F,
    region: &GridRegion,
    n: u32,
    p: u32,
    n2: u32,
    p2: u32,
) -> Result<BoundReport> {
    check(f, region, n, n2)?;
    let (t, t2) = (tail(n, p)?, tail(n2, p2)?);
    let w = |p: u32| (2 * p + 1) as f64;

    let mut value = t
        * (w(p2) * area_integral(f, region, &[(n, 0)])?
            + 0.5 * edge_integral(f, region, true, &[(n, 0)])?);
    value += t2
        * (w(p) * area_integral(f, region, &[(0, n2)])?
            + 0.5 * edge_integral(f, region, false, &[(0, n2)])?);
    for r in 1..=n2 / 2 {
        value += t * tail(2 * r, p2)? * edge_integral(f, region, true, &[(n, 2 * r - 1)])?;
    }
    for r in 1..=n / 2 {
        value += t2 * tail(2 * r, p)? * edge_integral(f, region, false, &[(2 * r - 1, n2)])?;
    }
    value += t * t2 * area_integral(f, region, &[(n, n2)])?;
    Ok(BoundReport::new(BoundKind::A, value)
        .assuming("area and edge integrals by quadrature with error estimates added"))
}

/// `R^A_{np,np}` with the x and y terms merged:
/// `T_{n,p} ((2p+1) II(|f_{n,0}| + |f_{0,n}|) + 1/2 O(|f_{0,n} dy| + |f_{n,0} dx|))`
/// `+ T_{n,p} sum_{r<=n/2} T_{2r,p} O(|f_{n,2r-1} dx| + |f_{2r-1,n} dy|)`
/// `+ T_{n,p}^2 II|f_{n,n}|`.
pub fn remainder_bound_2d_symmetric<F: SmoothFunction2D + ?Sized>(
    f: &F,
    region: &GridRegion,
    n: u32,
    p: u32,
) -> Result<BoundReport> {
    check(f, region, n, n)?;
    let t = tail(n, p)?;
    let w = (2 * p + 1) as f64;
    let mut value = w * area_integral(f, region, &[(n, 0), (0, n)])?
        + 0.5
            * (edge_integral(f, region, false, &[(0, n)])?
                + edge_integral(f, region, true, &[(n, 0)])?);
    for r in 1..=n / 2 {
        let c = tail(2 * r, p)?;
        value += c
            * (edge_integral(f, region, true, &[(n, 2 * r - 1)])?
                + edge_integral(f, region, false, &[(2 * r - 1, n)])?);
    }
    value = t * value + t * t * area_integral(f, region, &[(n, n)])?;
    Ok(BoundReport::new(BoundKind::A, value)
        .assuming("symmetric orders n' = n, p' = p")
        .assuming("area and edge integrals by quadrature with error estimates added"))
}
