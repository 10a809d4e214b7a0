//! Globally adaptive Gauss-Kronrod (G7/K15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{MemfError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-14,
            max_subdivisions: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    pub fn into_result(self) -> Result<QuadResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(MemfError::AccuracyFailure {
                estimate: self.value,
                error: self.error,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl Panel {
    fn excess(&self) -> f64 {
        (self.error - self.floor).max(0.0)
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.excess()
            .total_cmp(&other.excess())
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * res_abs;
        if floor > scaled {
            scaled = floor;
        }
    }
    scaled
}

/// Single 15-point Kronrod panel with embedded 7-point Gauss error estimate.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let (v, e, _) = gk15_with_floor(f, lo, hi);
    (v, e)
}

/// As [`gk15`], also returning the roundoff floor of the error estimate.
fn gk15_with_floor<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let h = half.abs();
    (
        res_k * half,
        rescale_error(err, res_abs * h, res_asc * h),
        100.0 * f64::EPSILON * res_abs * h,
    )
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &QuadConfig) -> QuadResult {
    integrate_breakpoints(f, &[lo, hi], cfg)
}

/// Integrates `f` over `[points[0], points.last()]`, starting from the panels
/// delimited by `points` (which must be non-decreasing).
pub fn integrate_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    cfg: &QuadConfig,
) -> QuadResult {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let mut total_excess = 0.0;
    let mut total = 0.0;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, error, floor) = gk15_with_floor(&f, w[0], w[1]);
        evaluations += 15;
        let panel = Panel {
            lo: w[0],
            hi: w[1],
            value,
            error,
            floor,
        };
        total += value;
        total_excess += panel.excess();
        heap.push(panel);
    }

    let mut subdivisions = 0;
    let mut converged = false;
    loop {
        // Error sitting at the roundoff floor cannot be reduced by splitting.
        if total_excess <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            converged = true;
            break;
        }
        if subdivisions >= cfg.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else {
            converged = true;
            break;
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel cannot be split further in floating point.
            heap.push(worst);
            break;
        }
        let (v1, e1, r1) = gk15_with_floor(&f, worst.lo, mid);
        let (v2, e2, r2) = gk15_with_floor(&f, mid, worst.hi);
        evaluations += 30;
        subdivisions += 1;
        let left = Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
            floor: r1,
        };
        let right = Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
            floor: r2,
        };
        total += v1 + v2 - worst.value;
        total_excess += left.excess() + right.excess() - worst.excess();
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in a fixed spatial order so results do not depend on heap history.
    let mut panels = heap.into_vec();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum();
    QuadResult {
        value,
        error,
        evaluations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_through_degree_22() {
        for deg in 0..=22 {
            let (v, _) = gk15(&|x: f64| x.powi(deg), 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((v - exact).abs() < 2e-16, "degree {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn gauss_weights_integrate_degree_13() {
        let f = |x: f64| x.powi(12);
        let mut g = f(0.0) * WG[3];
        for j in (1..7).step_by(2) {
            g += WG[j / 2] * (f(XGK[j]) + f(-XGK[j]));
        }
        assert!((g - 2.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_kink() {
        let r = integrate(|x: f64| x.abs(), -1.0, 2.0, &QuadConfig::default());
        assert!(r.converged);
        assert!((r.value - 2.5).abs() < 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 0.0,
            max_subdivisions: 3,
        };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &cfg);
        assert!(!r.converged);
        assert!(matches!(
            r.into_result(),
            Err(MemfError::AccuracyFailure { .. })
        ));
    }
}
