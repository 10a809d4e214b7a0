//! Bound-validity sweeps: partition-function cuts against direct sums.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{MemfError, Result};
use crate::memf1d::CutParams;
use crate::oracle::{direct_sum_1d_infinite, direct_sum_2d};
use crate::partition::{
    rotator_head, rotator_partition, rotator_u, well1d_partition, well1d_u, well1d_w,
    well2d_partition, PartitionResult,
};

/// Multiple of `eps * scale` allowed on top of the bound for floating-point
/// error in the cut and the oracle. `scale` is the sum of the magnitudes of
/// the assembled pieces.
pub const ROUNDING_ALLOWANCE: f64 = 32.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    Well1D,
    Rotator,
    Well2D,
}

impl System {
    pub fn name(&self) -> &'static str {
        match self {
            System::Well1D => "well1d",
            System::Rotator => "rotator",
            System::Well2D => "well2d",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = MemfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "well1d" => Ok(System::Well1D),
            "rotator" => Ok(System::Rotator),
            "well2d" => Ok(System::Well2D),
            other => Err(MemfError::InvalidArgument(format!(
                "unknown system '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub b: Vec<f64>,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub p: Vec<u32>,
}

impl SweepGrid {
    /// `B = 2^k` for `k = -6..=4` with the default orders for `system`.
    pub fn standard(system: System) -> Self {
        let b = (-6..=4).map(|k| 2f64.powi(k)).collect();
        match system {
            System::Well1D | System::Rotator => Self {
                b,
                m: (0..=3).collect(),
                n: (2..=9).collect(),
                p: (0..=4).collect(),
            },
            System::Well2D => Self {
                b,
                m: (0..=2).collect(),
                n: vec![3, 5, 7],
                p: (0..=3).collect(),
            },
        }
    }

    fn points(&self) -> Vec<(f64, u32, u32, u32)> {
        let mut out = Vec::new();
        for &b in &self.b {
            for &m in &self.m {
                for &n in &self.n {
                    for &p in &self.p {
                        out.push((b, m, n, p));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Flip the sign of the derivative corrections (harness self-test).
    pub flip_correction_sign: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub system: System,
    pub b: f64,
    pub m: u32,
    pub n: u32,
    pub p: u32,
    pub value: f64,
    pub oracle: f64,
    pub error: f64,
    pub bound_a: Option<f64>,
    pub bound_h: Option<f64>,
    pub allowance: f64,
    pub valid: bool,
}

impl SweepRow {
    pub fn min_bound(&self) -> Option<f64> {
        match (self.bound_a, self.bound_h) {
            (Some(a), Some(h)) => Some(a.min(h)),
            (a, h) => a.or(h),
        }
    }
}

fn gaussian_oracle(b: f64) -> Result<(f64, i64)> {
    let f = |l: i64| (-b * (l as f64).powi(2)).exp();
    let c = direct_sum_1d_infinite(f, 1, f)?;
    Ok((c.value, c.terms_used as i64))
}

/// Direct-sum reference value of the partition function.
pub fn oracle_value(system: System, b: f64) -> Result<f64> {
    match system {
        System::Well1D => Ok(gaussian_oracle(b)?.0),
        System::Rotator => {
            let f = |l: i64| (2 * l + 1) as f64 * (-b * (l * (l + 1)) as f64).exp();
            Ok(direct_sum_1d_infinite(f, 0, f)?.value)
        }
        System::Well2D => {
            let (_, len) = gaussian_oracle(b)?;
            let pairs = (1..=len + 1).flat_map(|i| (1..=len + 1).map(move |j| (i, j)));
            Ok(direct_sum_2d(
                |i, j| (-b * ((i * i + j * j) as f64)).exp(),
                pairs,
            ))
        }
    }
}

/// The cut with the correction sum `U - e^{-Bx^2}/2` negated.
fn faulty_well1d_w_shift(b: f64, n: u32, p: u32, x: f64) -> Result<f64> {
    let u = well1d_u(b, n, p, x)?;
    let half = 0.5 * (-b * x * x).exp();
    Ok(-2.0 * (u - half))
}

fn evaluate(
    system: System,
    b: f64,
    m: u32,
    n: u32,
    p: u32,
    opts: SweepOptions,
) -> Result<(PartitionResult, f64)> {
    let cut = CutParams::new(m, n, p)?;
    Ok(match system {
        System::Well1D => {
            let mut r = well1d_partition(b, cut)?;
            if opts.flip_correction_sign {
                r.value += faulty_well1d_w_shift(b, n, p, (m + 1) as f64)?;
            }
            let scale = r.head.abs() + r.w_terms.abs();
            (r, scale)
        }
        System::Rotator => {
            let mut r = rotator_partition(b, cut)?;
            if opts.flip_correction_sign {
                let x = m as f64 + 0.5;
                let u = rotator_u(b, n, p, x)?;
                let lead = rotator_u(b, 1, p, x)?;
                r.value -= 2.0 * (u - lead);
            }
            let scale = rotator_head(b, m).abs() + r.w_terms.abs();
            (r, scale)
        }
        System::Well2D => {
            let mut r = well2d_partition(b, m, n, p)?;
            if opts.flip_correction_sign {
                let w = |x: f64| {
                    Ok::<f64, MemfError>(well1d_w(b, n, p, x)? + faulty_well1d_w_shift(b, n, p, x)?)
                };
                let (w1, wm) = (w(1.0)?, w((m + 1) as f64)?);
                r.value = r.head + wm * (2.0 * w1 - wm);
            }
            let scale = r.head.abs() + r.w_terms.abs();
            (r, scale)
        }
    })
}

/// Evaluates every grid point in parallel and returns rows in grid order.
pub fn run_sweep(system: System, grid: &SweepGrid, opts: SweepOptions) -> Result<Vec<SweepRow>> {
    let oracles: HashMap<u64, f64> = grid
        .b
        .par_iter()
        .map(|&b| Ok((b.to_bits(), oracle_value(system, b)?)))
        .collect::<Result<_>>()?;
    grid.points()
        .into_par_iter()
        .map(|(b, m, n, p)| {
            let oracle = oracles[&b.to_bits()];
            let (r, scale) = evaluate(system, b, m, n, p, opts)?;
            let error = (r.value - oracle).abs();
            let allowance = ROUNDING_ALLOWANCE * f64::EPSILON * (scale + oracle.abs());
            let valid = match r.min_bound() {
                Some(bound) => error <= bound + allowance,
                None => false,
            };
            Ok(SweepRow {
                system,
                b,
                m,
                n,
                p,
                value: r.value,
                oracle,
                error,
                bound_a: r.bound_a,
                bound_h: r.bound_h,
                allowance,
                valid,
            })
        })
        .collect()
}
