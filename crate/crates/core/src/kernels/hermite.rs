use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::error::{MemfError, Result};

/// Default largest degree accepted by [`hermite_gaussian`].
pub const MAX_HERMITE_DEGREE: u32 = 40;

// 2^600: rescaling threshold for the magnitude-tracked recurrence.
const SCALE_EXP: i32 = 600;

/// `exp(-x^2)` with the square split so the argument carries no rounding error.
pub fn exp_neg_sq(x: f64) -> f64 {
    let x = x.abs();
    if x > 27.3 {
        return 0.0;
    }
    let hi = (x * 4096.0).round() / 4096.0;
    let d = (x - hi) * (x + hi);
    (-hi * hi).exp() * (-d).exp()
}

/// `H_n(x) exp(-x^2)` for physicists' Hermite polynomials, `n <= 40`.
///
/// The three-term recurrence runs on a mantissa with a separate power-of-two
/// exponent, so `H_n(x)` never overflows even where the Gaussian-weighted
/// product is representable.
pub fn hermite_gaussian(n: u32, x: f64) -> Result<f64> {
    hermite_gaussian_with_max(n, x, MAX_HERMITE_DEGREE)
}

pub fn hermite_gaussian_with_max(n: u32, x: f64, max: u32) -> Result<f64> {
    if n > max {
        return Err(MemfError::OrderOutOfRange {
            what: "Hermite",
            order: n,
            max,
        });
    }
    let (mantissa, exp2) = hermite_scaled(n, x);
    if mantissa == 0.0 {
        return Ok(0.0);
    }
    if exp2 == 0 {
        let w = exp_neg_sq(x);
        if w > 0.0 {
            return Ok(mantissa * w);
        }
    }
    let log_mag = mantissa.abs().ln() + exp2 as f64 * LN_2 - x * x;
    Ok(mantissa.signum() * log_mag.exp())
}

/// Returns `(m, e)` with `H_n(x) = m * 2^e`.
fn hermite_scaled(n: u32, x: f64) -> (f64, i32) {
    if n == 0 {
        return (1.0, 0);
    }
    let big = 2f64.powi(SCALE_EXP);
    let small = 2f64.powi(-SCALE_EXP);
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    let mut exp2 = 0;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.abs() > big {
            cur *= small;
            prev *= small;
            exp2 += SCALE_EXP;
        }
    }
    (cur, exp2)
}

/// Unweighted `H_n(x)`; may overflow for very large `|x|`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let (m, e) = hermite_scaled(n, x);
    m * 2f64.powi(e)
}

fn find_zeros(n: u32) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let reach = (2.0 * n as f64 + 1.0).sqrt() + 0.5;
    let step = 0.004;
    let count = (2.0 * reach / step).ceil() as i64;
    let mut zeros = Vec::with_capacity(n as usize);
    let mut prev_x = -reach;
    let mut prev_v = hermite(n, prev_x);
    for i in 1..=count {
        let x = -reach + i as f64 * step;
        let v = hermite(n, x);
        if v == 0.0 {
            zeros.push(x);
        } else if prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
            let (mut lo, mut hi) = (prev_x, x);
            let lo_positive = prev_v > 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let vm = hermite(n, mid);
                if vm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (vm > 0.0) == lo_positive {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    zeros
}

/// Ascending real zeros of `H_n`, `n <= 41`.
pub fn hermite_zeros(n: u32) -> Result<&'static [f64]> {
    static ZEROS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let max = MAX_HERMITE_DEGREE + 1;
    if n > max {
        return Err(MemfError::OrderOutOfRange {
            what: "Hermite zero",
            order: n,
            max,
        });
    }
    let table = ZEROS.get_or_init(|| (0..=max).map(find_zeros).collect());
    Ok(&table[n as usize])
}

/// `Gamma(m / 2)` for integer `m >= 1`, by exact half-integer recursion.
pub fn gamma_half(m: u32) -> f64 {
    assert!(m >= 1, "Gamma(m/2) needs m >= 1");
    let (mut acc, mut arg) = if m.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    let target = m as f64 / 2.0;
    while arg < target {
        acc *= arg;
        arg += 1.0;
    }
    acc
}

/// Unconditional bound `|H_n(x) e^{-x^2}| <= 2^n Gamma((n+1)/2) / sqrt(pi)`.
pub fn hermite_gaussian_sup(n: u32) -> f64 {
    2f64.powi(n as i32) * gamma_half(n + 1) / PI.sqrt()
}

/// Turning point, peak value and global constant of the Hermite envelope
/// `|H_n(x) e^{-x^2}| <= (2^n Gamma((n+1)/2) / sqrt(pi)) g_n(min(x, x_n)) e^{-x^2/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteEnvelope {
    pub n: u32,
    pub x_n: f64,
    pub g_peak: f64,
    pub big_g: f64,
}

/// `g_n(x) = (1 - x^2 / (2n+1))^{-1/2}`.
pub fn envelope_g(n: u32, x: f64) -> f64 {
    (1.0 - x * x / (2.0 * n as f64 + 1.0)).powf(-0.5)
}

pub fn envelope(n: u32) -> Result<HermiteEnvelope> {
    if n == 0 {
        return Err(MemfError::InvalidArgument(
            "Hermite envelope needs n >= 1".into(),
        ));
    }
    let two_n1 = 2.0 * n as f64 + 1.0;
    let x_n = two_n1.sqrt() * (1.0 - PI / (2.0 * two_n1));
    let g_peak = envelope_g(n, x_n);
    let big_g =
        2f64.powi(n as i32 + 1) * two_n1 * gamma_half(n + 1) / (PI * (4.0 * two_n1 - PI).sqrt());
    Ok(HermiteEnvelope {
        n,
        x_n,
        g_peak,
        big_g,
    })
}

/// `G_n`; for `n = 0` the envelope degenerates to `e^{-x^2/2}` and `G_0 = 1`.
pub fn big_g(n: u32) -> f64 {
    if n == 0 {
        1.0
    } else {
        envelope(n).map(|e| e.big_g).unwrap_or(f64::NAN)
    }
}

/// Outcome of scanning the envelope inequality for one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeCheck {
    pub n: u32,
    /// `1 - max |H_n e^{-x^2}| / envelope` over the grid.
    pub min_margin: f64,
    pub worst_x: f64,
    pub violations: usize,
    pub points: usize,
}

impl EnvelopeCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

// Equality holds at x = 0 for even n, so allow for rounding there.
const ENVELOPE_SLACK: f64 = 1e-12;

/// Scans `x = 0, step, 2 step, ...` up to `x_max` and compares
/// `|H_n(x) e^{-x^2}|` against `scale * envelope`.
pub fn check_envelope_scaled(n: u32, step: f64, x_max: f64, scale: f64) -> Result<EnvelopeCheck> {
    let env = envelope(n)?;
    let prefactor = hermite_gaussian_sup(n) * scale;
    let points = (x_max / step).floor() as usize + 1;
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut worst_x = 0.0;
    let mut violations = 0;
    for i in 0..points {
        let x = i as f64 * step;
        let value = hermite_gaussian(n, x)?.abs();
        let bound = prefactor * envelope_g(n, x.min(env.x_n)) * (-0.5 * x * x).exp();
        let ratio = value / bound;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_x = x;
        }
        if ratio > 1.0 + ENVELOPE_SLACK {
            violations += 1;
        }
    }
    Ok(EnvelopeCheck {
        n,
        min_margin: 1.0 - worst_ratio,
        worst_x,
        violations,
        points,
    })
}

pub fn check_envelope(n: u32, step: f64, x_max: f64) -> Result<EnvelopeCheck> {
    check_envelope_scaled(n, step, x_max, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert!((hermite_gaussian(0, 2.0).unwrap() - (-4.0f64).exp()).abs() < 1e-18);
        assert!((hermite_gaussian(1, 1.0).unwrap() - 2.0 * (-1.0f64).exp()).abs() < 1e-16);
        // H_3 = 8x^3 - 12x
        let x: f64 = 0.7;
        let h3 = (8.0 * x.powi(3) - 12.0 * x) * (-x * x).exp();
        assert!((hermite_gaussian(3, x).unwrap() - h3).abs() < 1e-15);
    }

    #[test]
    fn degree_limit() {
        assert!(hermite_gaussian(40, 1.0).is_ok());
        assert!(matches!(
            hermite_gaussian(41, 1.0),
            Err(MemfError::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn no_overflow_for_large_arguments() {
        let v = hermite_gaussian(40, 40.0).unwrap();
        assert!(v.is_finite());
        assert_eq!(v, 0.0);
        let (m, e) = hermite_scaled(40, 1e20);
        assert!(m.is_finite() && e > 0);
        let v = hermite_gaussian(40, 26.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn zeros_are_roots() {
        for n in 1..=41 {
            let z = hermite_zeros(n).unwrap();
            assert_eq!(z.len(), n as usize, "degree {n}");
            for &x in z {
                // relative to the local derivative scale
                let d = 2.0 * n as f64 * hermite(n - 1, x);
                assert!(
                    hermite(n, x).abs() <= 1e-9 * d.abs().max(1.0),
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn gamma_half_values() {
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(3) - 0.5 * PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(10), 24.0);
    }

    #[test]
    fn envelope_closed_forms_agree() {
        for n in 1..=30 {
            let e = envelope(n).unwrap();
            let direct = hermite_gaussian_sup(n) * e.g_peak;
            assert!(((direct - e.big_g) / direct).abs() < 1e-13);
        }
        let e2 = envelope(2).unwrap();
        assert!((e2.x_n - 1.534).abs() < 5e-4);
        assert!((e2.g_peak - 1.374).abs() < 5e-4);
        assert!((e2.big_g - 2.748).abs() < 1e-3);
    }

    #[test]
    fn corrupted_envelope_is_detected() {
        let ok = check_envelope(4, 1e-2, 12.0).unwrap();
        assert!(ok.holds());
        let bad = check_envelope_scaled(4, 1e-2, 12.0, 0.5).unwrap();
        assert!(!bad.holds());
        assert!(bad.min_margin < 0.0);
    }
}
