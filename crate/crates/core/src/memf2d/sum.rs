use std::cell::Cell;

use rayon::prelude::*;

use super::bounds::remainder_bound_2d;
use super::{
    operator_big_b, operator_big_b_both, require2, trace_boundary, Axis, BoundaryPath, CutParams2D,
    GridRegion, SmoothFunction2D, SummationEstimate2D,
};
use crate::error::{MemfError, Result};
use crate::kernels::grating_kernel;
use crate::memf1d::{grating_integral, operator_b};
use crate::quad::{integrate_breakpoints, QuadConfig};

fn panels(lo: f64, width: f64) -> Vec<f64> {
    let count = (1.0 / width).round() as usize;
    (0..=count).map(|k| lo + k as f64 / count as f64).collect()
}

/// `int_lo^{lo+1} a_p(t) g(t) dt` on panels of width `1/(2p+1)`.
fn kernel_integral<G: Fn(f64) -> f64>(g: G, p: u32, lo: f64) -> Result<f64> {
    let pts = panels(lo, 1.0 / (2 * p + 1) as f64);
    Ok(integrate_breakpoints(
        |t| grating_kernel(p, t) * g(t),
        &pts,
        &QuadConfig::default(),
    )
    .into_result()?
    .value)
}

struct Parts {
    area: f64,
    line: f64,
    vertex: f64,
}

fn tensor_parts(
    g: &dyn crate::memf1d::SmoothFunction1D,
    h: &dyn crate::memf1d::SmoothFunction1D,
    region: &GridRegion,
    path: &BoundaryPath,
    cut: &CutParams2D,
) -> Result<Parts> {
    let gx = |i: i64| grating_integral(g, i as f64, (i + 1) as f64, cut.p);
    let hy = |j: i64| grating_integral(h, j as f64, (j + 1) as f64, cut.p2);
    let bg = |i: i64| operator_b(g, cut.n, cut.p, i as f64);
    let bh = |j: i64| operator_b(h, cut.n2, cut.p2, j as f64);

    let mut area = 0.0;
    for (i, j) in region.squares() {
        area += gx(i)? * hy(j)?;
    }
    let mut line = 0.0;
    for e in path.edges() {
        let (i, j) = e.low();
        line += e.line_sign()
            * if e.dir.is_horizontal() {
                gx(i)? * bh(j)?
            } else {
                hy(j)? * bg(i)?
            };
    }
    let mut vertex = 0.0;
    for c in path.corners() {
        vertex += c.sign as f64 * bg(c.i)? * bh(c.j)?;
    }
    Ok(Parts { area, line, vertex })
}

fn general_parts<F: SmoothFunction2D + ?Sized>(
    f: &F,
    region: &GridRegion,
    path: &BoundaryPath,
    cut: &CutParams2D,
) -> Result<Parts> {
    let squares: Vec<(i64, i64)> = region.squares().collect();
    let per_square: Vec<Result<f64>> = squares
        .par_iter()
        .map(|&(i, j)| {
            let failure = Cell::new(None);
            let inner = |x: f64| match kernel_integral(|y| f.value(x, y), cut.p2, j as f64) {
                Ok(v) => grating_kernel(cut.p, x) * v,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            };
            let pts = panels(i as f64, 1.0 / (2 * cut.p + 1) as f64);
            let r = integrate_breakpoints(inner, &pts, &QuadConfig::default());
            match failure.take() {
                Some(e) => Err(e),
                None => Ok(r.into_result()?.value),
            }
        })
        .collect();
    let mut area = 0.0;
    for v in per_square {
        area += v?;
    }

    let edges: Vec<_> = path.edges().copied().collect();
    let per_edge: Vec<Result<f64>> = edges
        .par_iter()
        .map(|e| {
            let (i, j) = e.low();
            let (fi, fj) = (i as f64, j as f64);
            let failure = Cell::new(None);
            let guard = |r: Result<f64>| {
                r.unwrap_or_else(|err| {
                    failure.set(Some(err));
                    f64::NAN
                })
            };
            let v = if e.dir.is_horizontal() {
                kernel_integral(
                    |x| guard(operator_big_b(f, Axis::Y, cut.n2, cut.p2, x, fj)),
                    cut.p,
                    fi,
                )
            } else {
                kernel_integral(
                    |y| guard(operator_big_b(f, Axis::X, cut.n, cut.p, fi, y)),
                    cut.p2,
                    fj,
                )
            };
            match failure.take() {
                Some(err) => Err(err),
                None => Ok(e.line_sign() * v?),
            }
        })
        .collect();
    let mut line = 0.0;
    for v in per_edge {
        line += v?;
    }

    let mut vertex = 0.0;
    for c in path.corners() {
        vertex += c.sign as f64 * operator_big_b_both(f, cut, c.i as f64, c.j as f64)?;
    }
    Ok(Parts { area, line, vertex })
}

/// Cut of `sum_{(i,j) in P} f(i, j)`: the pairs in `cut.explicit_set` are
/// summed directly and the rest are replaced by area, line and vertex terms
/// over the union of their unit squares.
pub fn memf_sum_region<F: SmoothFunction2D + ?Sized>(
    f: &F,
    pairs: &GridRegion,
    cut: &CutParams2D,
) -> Result<SummationEstimate2D> {
    if let Some(&(i, j)) = cut
        .explicit_set
        .iter()
        .find(|&&(i, j)| !pairs.contains(i, j))
    {
        return Err(MemfError::InvalidArgument(format!(
            "explicit pair ({i}, {j}) is not in the summation set"
        )));
    }
    let head: f64 = cut
        .explicit_set
        .iter()
        .map(|&(i, j)| require2(f, 0, 0, i as f64, j as f64))
        .sum::<Result<f64>>()?;
    let region: GridRegion = pairs
        .squares()
        .filter(|s| !cut.explicit_set.contains(s))
        .collect();
    if region.is_empty() {
        return Ok(SummationEstimate2D {
            total: head,
            head,
            area: 0.0,
            line: 0.0,
            vertex: 0.0,
            bounds: Vec::new(),
        });
    }
    let path = trace_boundary(&region);
    let parts = match f.factors() {
        Some((g, h)) => tensor_parts(g, h, &region, &path, cut)?,
        None => general_parts(f, &region, &path, cut)?,
    };
    let mut bounds = Vec::new();
    if cut.n >= 2 && cut.n2 >= 2 {
        bounds.push(remainder_bound_2d(
            f, &region, cut.n, cut.p, cut.n2, cut.p2,
        )?);
    }
    Ok(SummationEstimate2D {
        total: head + parts.area + parts.line + parts.vertex,
        head,
        area: parts.area,
        line: parts.line,
        vertex: parts.vertex,
        bounds,
    })
}

/// Cut of `sum_{i=a}^{b-1} sum_{j=c}^{d-1} f(i, j)`.
pub fn memf_sum_rectangle<F: SmoothFunction2D + ?Sized>(
    f: &F,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    cut: &CutParams2D,
) -> Result<SummationEstimate2D> {
    if b <= a || d <= c {
        return Err(MemfError::EmptyRange);
    }
    memf_sum_region(f, &GridRegion::rectangle(a, b, c, d), cut)
}
