//! One-dimensional modified Euler-Maclaurin summation.
//!
//! An `m-n-p` cut of `sum_{i=a}^{b} f(i)` keeps `m` terms explicitly, applies
//! derivative corrections up to order `n - 1`, and keeps the Fourier modes
//! `|k| <= p` of the remainder through the grating kernel.

mod bounds;
mod sum;

use num_complex::Complex64;

use crate::error::{MemfError, Result};

pub use bounds::{attach_bounds, bound_a, bound_b, bound_c, bound_piecewise};
pub use sum::{
    classical_euler_maclaurin, endpoint_difference, grating_integral, memf_sum_finite,
    memf_sum_half_open, memf_sum_infinite, operator_b,
};

/// A real function with caller-supplied derivatives.
///
/// Only [`derivative`](SmoothFunction1D::derivative) is required. The optional
/// hooks let an implementation provide closed forms; everything falls back to
/// quadrature when they return `None`.
pub trait SmoothFunction1D: Sync {
    /// `f^{(order)}(x)`, or `None` if that order is not available.
    fn derivative(&self, order: u32, x: f64) -> Option<f64>;

    fn value(&self, x: f64) -> f64 {
        self.derivative(0, x).unwrap_or(f64::NAN)
    }

    /// `int_a^b f(x) e^{i 2 pi k x} dx`; `b` may be `+inf`.
    fn fourier_integral(&self, _k: i64, _a: f64, _b: f64) -> Option<Complex64> {
        None
    }

    /// Interior points of `(a, b)` where `f^{(order)}` changes monotonicity,
    /// ascending. An empty list means monotone on the whole interval.
    fn monotone_partition(&self, _order: u32, _a: f64, _b: f64) -> Option<Vec<f64>> {
        None
    }

    /// Upper bound on `int_a^b |f^{(order)}(x)| dx`.
    fn abs_derivative_integral(&self, _order: u32, _a: f64, _b: f64) -> Option<f64> {
        None
    }

    /// Upper bound on `int_x^inf |f^{(order)}(t)| dt`, used to truncate
    /// semi-infinite quadrature.
    fn tail_integral_bound(&self, _order: u32, _x: f64) -> Option<f64> {
        None
    }

    /// Whether `f` and its derivatives vanish at `+inf`.
    fn decays_at_infinity(&self) -> bool {
        false
    }

    /// `lim_{x -> inf} f^{(order)}(x)`; only consulted for semi-infinite sums.
    fn limit_at_infinity(&self, _order: u32) -> f64 {
        0.0
    }
}

impl<T: SmoothFunction1D + ?Sized> SmoothFunction1D for &T {
    fn derivative(&self, order: u32, x: f64) -> Option<f64> {
        (**self).derivative(order, x)
    }
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn fourier_integral(&self, k: i64, a: f64, b: f64) -> Option<Complex64> {
        (**self).fourier_integral(k, a, b)
    }
    fn monotone_partition(&self, order: u32, a: f64, b: f64) -> Option<Vec<f64>> {
        (**self).monotone_partition(order, a, b)
    }
    fn abs_derivative_integral(&self, order: u32, a: f64, b: f64) -> Option<f64> {
        (**self).abs_derivative_integral(order, a, b)
    }
    fn tail_integral_bound(&self, order: u32, x: f64) -> Option<f64> {
        (**self).tail_integral_bound(order, x)
    }
    fn decays_at_infinity(&self) -> bool {
        (**self).decays_at_infinity()
    }
    fn limit_at_infinity(&self, order: u32) -> f64 {
        (**self).limit_at_infinity(order)
    }
}

pub(crate) fn require<F: SmoothFunction1D + ?Sized>(f: &F, order: u32, x: f64) -> Result<f64> {
    if x == f64::INFINITY {
        return Ok(f.limit_at_infinity(order));
    }
    f.derivative(order, x)
        .ok_or(MemfError::MissingDerivative { order })
}

/// The `(m, n, p)` triple selecting a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutParams {
    /// Terms summed explicitly.
    pub m: u32,
    /// Derivative order; corrections use orders below `n`.
    pub n: u32,
    /// Fourier modes kept.
    pub p: u32,
}

impl CutParams {
    pub fn new(m: u32, n: u32, p: u32) -> Result<Self> {
        if n == 0 {
            return Err(MemfError::InvalidArgument(
                "cut order n must be >= 1".into(),
            ));
        }
        Ok(Self { m, n, p })
    }

    /// `floor(n / 2)`, the number of derivative corrections.
    pub fn n_half(&self) -> u32 {
        self.n / 2
    }
}

/// Which remainder estimate a [`BoundReport`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    A,
    B,
    C,
    PiecewiseA,
    HConjecture,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::A => "A",
            BoundKind::B => "B",
            BoundKind::C => "C",
            BoundKind::PiecewiseA => "piecewise_A",
            BoundKind::HConjecture => "H_conjecture",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub assumptions: Vec<String>,
}

impl BoundReport {
    pub fn new(kind: BoundKind, value: f64) -> Self {
        Self {
            kind,
            value,
            assumptions: Vec::new(),
        }
    }

    pub fn assuming(mut self, assumption: impl Into<String>) -> Self {
        self.assumptions.push(assumption.into());
        self
    }

    pub fn conjecture_based(&self) -> bool {
        self.kind == BoundKind::HConjecture
    }
}

/// A cut value with its itemized decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SummationEstimate {
    pub total: f64,
    pub head: f64,
    pub grating_term: f64,
    pub endpoint_term: f64,
    pub correction_term: f64,
    pub bounds: Vec<BoundReport>,
}

impl SummationEstimate {
    pub(crate) fn assemble(
        head: f64,
        grating_term: f64,
        endpoint_term: f64,
        correction_term: f64,
    ) -> Self {
        Self {
            total: head + grating_term + endpoint_term + correction_term,
            head,
            grating_term,
            endpoint_term,
            correction_term,
            bounds: Vec::new(),
        }
    }

    /// Smallest attached bound.
    pub fn best_bound(&self) -> Option<&BoundReport> {
        self.bounds
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
    }
}
