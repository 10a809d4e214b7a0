//! Closed-form cuts and remainder bounds for three partition functions:
//! the 1D infinite square well, the quantum rotator and the 2D square well.

mod conjecture;
mod rotator;
mod well1d;
mod well2d;

use crate::memf1d::CutParams;

pub use conjecture::{
    checked_big_g, conjecture_report, verified_envelope_max, ConjectureReport, ENVELOPE_CHECK_MAX,
    ENVELOPE_CHECK_STEP,
};
pub use rotator::{rotator_bound_h, rotator_head, rotator_partition, rotator_t, rotator_u};
pub use well1d::{
    well1d_bound_a, well1d_bound_h, well1d_head, well1d_partition, well1d_t, well1d_t_complex,
    well1d_u, well1d_w,
};
pub use well2d::{eta, well2d_bound_h, well2d_partition, xi};

/// Cut value of a partition function with its closed-form bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub value: f64,
    /// Terms summed explicitly.
    pub head: f64,
    /// Everything the cut adds to the head.
    pub w_terms: f64,
    pub bound_a: Option<f64>,
    /// Envelope-based bound; present only for degrees the envelope scan covered.
    pub bound_h: Option<f64>,
    pub cut: CutParams,
}

impl PartitionResult {
    pub fn min_bound(&self) -> Option<f64> {
        match (self.bound_a, self.bound_h) {
            (Some(a), Some(h)) => Some(a.min(h)),
            (a, h) => a.or(h),
        }
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> crate::Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(crate::MemfError::InvalidArgument(format!(
            "{name} must be positive, got {v}"
        )))
    }
}
