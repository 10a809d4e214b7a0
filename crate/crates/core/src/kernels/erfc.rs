use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::hermite::exp_neg_sq;
use crate::error::{MemfError, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_560_772_6;

// Below this point 1 - erf(x) loses too little to matter.
const SERIES_LIMIT: f64 = 1.5;

/// Complementary error function for real arguments.
///
/// Power series for `erf` on `|x| < 1.5`, Laplace continued fraction beyond.
pub fn erfc_real(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc_real(-x);
    }
    if x < SERIES_LIMIT {
        1.0 - erf_series(x)
    } else {
        exp_neg_sq(x) * FRAC_1_SQRT_PI / erfc_fraction(x)
    }
}

pub fn erf_real(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        erf_series(x)
    } else {
        1.0 - erfc_real(x)
    }
}

/// `erf(x) = 2x e^{-x^2} / sqrt(pi) * sum (2x^2)^n / (2n+1)!!`; all terms positive.
fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * x * exp_neg_sq(x) * sum
}

/// `x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))` by the modified Lentz method.
fn erfc_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..20_000 {
        let a = 0.5 * j as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    f
}

const WEIDEMAN_N: usize = 40;

struct Weideman {
    l: f64,
    coeffs: Vec<f64>,
}

fn weideman() -> &'static Weideman {
    static W: OnceLock<Weideman> = OnceLock::new();
    W.get_or_init(|| {
        let n = WEIDEMAN_N;
        let m = 2 * n;
        let l = (n as f64 / std::f64::consts::SQRT_2).sqrt();
        // samples of e^{-t^2}(L^2 + t^2) at t = L tan(theta/2), theta = k pi / M
        let samples: Vec<(f64, f64)> = (1 - m as i64..m as i64)
            .map(|k| {
                let theta = k as f64 * PI / m as f64;
                let t = l * (0.5 * theta).tan();
                (theta, (-t * t).exp() * (l * l + t * t))
            })
            .collect();
        let coeffs = (1..=n)
            .map(|j| {
                samples
                    .iter()
                    .map(|&(theta, v)| v * (j as f64 * theta).cos())
                    .sum::<f64>()
                    / (2 * m) as f64
            })
            .collect();
        Weideman { l, coeffs }
    })
}

fn w_weideman(z: Complex64) -> Complex64 {
    let wd = weideman();
    let i = Complex64::i();
    let denom = wd.l - i * z;
    let zz = (wd.l + i * z) / denom;
    let mut poly = Complex64::new(0.0, 0.0);
    for &c in wd.coeffs.iter().rev() {
        poly = poly * zz + c;
    }
    2.0 * poly / (denom * denom) + FRAC_1_SQRT_PI / denom
}

fn w_continued_fraction(z: Complex64, depth: usize) -> Complex64 {
    let mut r = Complex64::new(0.0, 0.0);
    for k in (1..=depth).rev() {
        r = (0.5 * k as f64) / (z - r);
    }
    Complex64::new(0.0, FRAC_1_SQRT_PI) / (z - r)
}

/// Faddeeva function `w(z) = e^{-z^2} erfc(-iz)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        // w(z) = 2 e^{-z^2} - w(-z)
        let e = (-z * z).exp();
        return 2.0 * e - faddeeva(-z);
    }
    let rho2 = (z.re / 6.3).powi(2) + (z.im / 4.4).powi(2);
    if rho2 >= 1.0 {
        let rho = rho2.sqrt();
        let depth = (3.0 + 1442.0 / (26.0 * rho + 77.0)).ceil() as usize;
        w_continued_fraction(z, depth)
    } else {
        w_weideman(z)
    }
}

/// `e^{log_prefactor} * erfc(z)`, evaluated as `e^{log_prefactor - z^2} w(iz)`
/// so that neither factor has to be representable on its own.
pub fn scaled_erfc_complex(z: Complex64, log_prefactor: f64) -> Result<Complex64> {
    if z.re < 0.0 {
        let reflected = scaled_erfc_complex(-z, log_prefactor)?;
        let two = 2.0 * log_prefactor.exp();
        let out = Complex64::new(two, 0.0) - reflected;
        return finite(out);
    }
    let w = faddeeva(Complex64::new(-z.im, z.re));
    let (u, v) = (z.re, z.im);
    // Re(L - z^2) = (L + v^2) - u^2 with u^2 split exactly.
    let hi = (u * 4096.0).round() / 4096.0;
    let d = (u - hi) * (u + hi);
    let re_exp = ((log_prefactor + v * v) - hi * hi) - d;
    let im_exp = -2.0 * u * v;
    let phase = Complex64::new(im_exp.cos(), im_exp.sin());
    let out = if re_exp > -700.0 && re_exp < 700.0 {
        re_exp.exp() * phase * w
    } else {
        let mag = w.norm();
        if mag == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let arg = w.arg();
            let scale = (re_exp + mag.ln()).exp();
            scale * phase * Complex64::new(arg.cos(), arg.sin())
        }
    };
    finite(out)
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(MemfError::NonFinite)
    }
}
