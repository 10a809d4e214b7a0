use std::sync::OnceLock;

use crate::error::{MemfError, Result};
use crate::kernels::{big_g, check_envelope, envelope, EnvelopeCheck, MAX_HERMITE_DEGREE};

/// Degrees scanned before any envelope-based bound is issued.
pub const ENVELOPE_CHECK_MAX: u32 = 20;
pub const ENVELOPE_CHECK_STEP: f64 = 1e-3;

/// Per-degree scan of the Hermite envelope inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub n_max: u32,
    pub grid_step: f64,
    pub checks: Vec<EnvelopeCheck>,
}

impl ConjectureReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    /// Largest `N` such that every degree `1..=N` passed.
    pub fn holds_through(&self) -> u32 {
        self.checks
            .iter()
            .take_while(|c| c.holds())
            .map(|c| c.n)
            .last()
            .unwrap_or(0)
    }
}

/// Scans `x = 0, step, ...` up to `x_n + 10` for every `n` in `1..=n_max`.
pub fn conjecture_report(n_max: u32, grid_step: f64) -> Result<ConjectureReport> {
    if n_max > MAX_HERMITE_DEGREE {
        return Err(MemfError::OrderOutOfRange {
            what: "envelope check",
            order: n_max,
            max: MAX_HERMITE_DEGREE,
        });
    }
    if !(grid_step > 0.0) {
        return Err(MemfError::InvalidArgument(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let mut checks = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let x_max = envelope(n)?.x_n + 10.0;
        checks.push(check_envelope(n, grid_step, x_max)?);
    }
    Ok(ConjectureReport {
        n_max,
        grid_step,
        checks,
    })
}

/// Degrees for which the envelope has been verified in this process.
pub fn verified_envelope_max() -> u32 {
    static VERIFIED: OnceLock<u32> = OnceLock::new();
    *VERIFIED.get_or_init(|| {
        conjecture_report(ENVELOPE_CHECK_MAX, ENVELOPE_CHECK_STEP)
            .map(|r| r.holds_through())
            .unwrap_or(0)
    })
}

/// `G_n`, refused for degrees the envelope scan has not covered.
pub fn checked_big_g(n: u32) -> Result<f64> {
    let checked_max = verified_envelope_max();
    if n == 0 || n > checked_max {
        return Err(MemfError::ConjectureRange { n, checked_max });
    }
    Ok(big_g(n))
}
