//! Two-dimensional modified Euler-Maclaurin summation over unions of unit squares.
//!
//! A sum over the lattice points of a region splits into an area term (the
//! double grating integral), line terms along the oriented boundary, signed
//! vertex terms at the corners, and a remainder with an explicit bound.

mod bounds;
mod region;
mod sum;

use std::collections::BTreeSet;

use crate::error::{MemfError, Result};
use crate::kernels::tail;
use crate::memf1d::{BoundReport, SmoothFunction1D};

pub use bounds::{remainder_bound_2d, remainder_bound_2d_symmetric};
pub use region::{trace_boundary, BoundaryLoop, BoundaryPath, Corner, Direction, Edge, GridRegion};
pub use sum::{memf_sum_rectangle, memf_sum_region};

/// A real function of two variables with caller-supplied partial derivatives.
pub trait SmoothFunction2D: Sync {
    /// `f_{mu,nu}(x, y)`, or `None` if that partial is not available.
    fn partial(&self, mu: u32, nu: u32, x: f64, y: f64) -> Option<f64>;

    fn value(&self, x: f64, y: f64) -> f64 {
        self.partial(0, 0, x, y).unwrap_or(f64::NAN)
    }

    /// `Some((g, h))` when `f(x, y) = g(x) h(y)`; enables the tensor-product path.
    fn factors(&self) -> Option<(&dyn SmoothFunction1D, &dyn SmoothFunction1D)> {
        None
    }
}

impl<T: SmoothFunction2D + ?Sized> SmoothFunction2D for &T {
    fn partial(&self, mu: u32, nu: u32, x: f64, y: f64) -> Option<f64> {
        (**self).partial(mu, nu, x, y)
    }
    fn value(&self, x: f64, y: f64) -> f64 {
        (**self).value(x, y)
    }
    fn factors(&self) -> Option<(&dyn SmoothFunction1D, &dyn SmoothFunction1D)> {
        (**self).factors()
    }
}

pub(crate) fn require2<F: SmoothFunction2D + ?Sized>(
    f: &F,
    mu: u32,
    nu: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    f.partial(mu, nu, x, y)
        .ok_or(MemfError::MissingDerivative { order: mu + nu })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Orders `(n, p)` along x, `(n2, p2)` along y, and the pairs summed directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutParams2D {
    pub n: u32,
    pub p: u32,
    pub n2: u32,
    pub p2: u32,
    pub explicit_set: BTreeSet<(i64, i64)>,
}

impl CutParams2D {
    pub fn new(n: u32, p: u32, n2: u32, p2: u32) -> Result<Self> {
        if n == 0 || n2 == 0 {
            return Err(MemfError::InvalidArgument(
                "cut orders n, n' must be >= 1".into(),
            ));
        }
        Ok(Self {
            n,
            p,
            n2,
            p2,
            explicit_set: BTreeSet::new(),
        })
    }

    pub fn symmetric(n: u32, p: u32) -> Result<Self> {
        Self::new(n, p, n, p)
    }

    pub fn with_explicit<I: IntoIterator<Item = (i64, i64)>>(mut self, pairs: I) -> Self {
        self.explicit_set.extend(pairs);
        self
    }

    fn orders(&self, axis: Axis) -> (u32, u32) {
        match axis {
            Axis::X => (self.n, self.p),
            Axis::Y => (self.n2, self.p2),
        }
    }
}

/// `(-1)^{r+1} T_{2r,p}` for `r = 1..=floor(n/2)`.
pub(crate) fn b_coefficients(n: u32, p: u32) -> Result<Vec<f64>> {
    (1..=n / 2)
        .map(|r| {
            let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
            Ok(sign * tail(2 * r, p)?)
        })
        .collect()
}

fn along(axis: Axis, k: u32, other: u32) -> (u32, u32) {
    match axis {
        Axis::X => (k, other),
        Axis::Y => (other, k),
    }
}

fn b_with_offset<F: SmoothFunction2D + ?Sized>(
    f: &F,
    axis: Axis,
    n: u32,
    p: u32,
    offset: u32,
    other: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    let (mu, nu) = along(axis, offset, other);
    let mut acc = -0.5 * require2(f, mu, nu, x, y)?;
    for (r, c) in b_coefficients(n, p)?.into_iter().enumerate() {
        let (mu, nu) = along(axis, 2 * r as u32 + 1 + offset, other);
        acc += c * require2(f, mu, nu, x, y)?;
    }
    Ok(acc)
}

/// `(B_{n,p} f)(x, y) = -f/2 + sum_r (-1)^{r+1} T_{2r,p} d^{2r-1} f` along `axis`.
pub fn operator_big_b<F: SmoothFunction2D + ?Sized>(
    f: &F,
    axis: Axis,
    n: u32,
    p: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    b_with_offset(f, axis, n, p, 0, 0, x, y)
}

/// `d(B_{n,p} f)` along `axis`.
pub fn operator_small_b<F: SmoothFunction2D + ?Sized>(
    f: &F,
    axis: Axis,
    n: u32,
    p: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    b_with_offset(f, axis, n, p, 1, 0, x, y)
}

/// `T_{n,p} |d^n f|` along `axis`, the pointwise envelope of the remainder operator.
pub fn operator_c_envelope<F: SmoothFunction2D + ?Sized>(
    f: &F,
    axis: Axis,
    n: u32,
    p: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    let (mu, nu) = along(axis, n, 0);
    Ok(tail(n, p)? * require2(f, mu, nu, x, y)?.abs())
}

/// `(B^x_{n,p} B^y_{n',p'} f)(x, y)`.
pub fn operator_big_b_both<F: SmoothFunction2D + ?Sized>(
    f: &F,
    cut: &CutParams2D,
    x: f64,
    y: f64,
) -> Result<f64> {
    let (n, p) = cut.orders(Axis::X);
    let (n2, p2) = cut.orders(Axis::Y);
    let cy = b_coefficients(n2, p2)?;
    let mut acc = -0.5 * b_with_offset(f, Axis::X, n, p, 0, 0, x, y)?;
    for (s, c) in cy.into_iter().enumerate() {
        acc += c * b_with_offset(f, Axis::X, n, p, 0, 2 * s as u32 + 1, x, y)?;
    }
    Ok(acc)
}

/// A 2D cut value with its itemized decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SummationEstimate2D {
    pub total: f64,
    pub head: f64,
    pub area: f64,
    pub line: f64,
    pub vertex: f64,
    pub bounds: Vec<BoundReport>,
}

impl SummationEstimate2D {
    pub fn best_bound(&self) -> Option<&BoundReport> {
        self.bounds
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
    }
}
