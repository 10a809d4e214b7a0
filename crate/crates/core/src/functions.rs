//! Built-in function families with exact derivatives.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{MemfError, Result};
use crate::kernels::{hermite_gaussian, hermite_zeros, scaled_erfc_complex, MAX_HERMITE_DEGREE};
use crate::memf1d::SmoothFunction1D;
use crate::memf2d::SmoothFunction2D;

/// `f(x) = exp(-B x^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    b: f64,
    sqrt_b: f64,
    closed_form: bool,
}

impl Gaussian {
    pub fn new(b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(MemfError::InvalidArgument(format!(
                "Gaussian needs B > 0, got {b}"
            )));
        }
        Ok(Self {
            b,
            sqrt_b: b.sqrt(),
            closed_form: true,
        })
    }

    /// Drops the erfc Fourier integrals and Hermite-zero partitions, so every
    /// integral goes through quadrature.
    pub fn without_closed_form(mut self) -> Self {
        self.closed_form = false;
        self
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `e^{-pi^2 k^2 / B} erfc(sqrt(B) x - i pi k / sqrt(B))`, zero at `+inf`.
    fn shifted_erfc(&self, k: i64, x: f64) -> Result<Complex64> {
        if x == f64::INFINITY {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v = PI * k as f64 / self.sqrt_b;
        scaled_erfc_complex(Complex64::new(self.sqrt_b * x, -v), -(v * v))
    }
}

impl SmoothFunction1D for Gaussian {
    fn derivative(&self, order: u32, x: f64) -> Option<f64> {
        if order > MAX_HERMITE_DEGREE {
            return None;
        }
        let h = hermite_gaussian(order, self.sqrt_b * x).ok()?;
        let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
        Some(sign * self.b.powf(0.5 * order as f64) * h)
    }

    fn fourier_integral(&self, k: i64, a: f64, b: f64) -> Option<Complex64> {
        if !self.closed_form || a == f64::NEG_INFINITY {
            return None;
        }
        let lower = self.shifted_erfc(k, a).ok()?;
        let upper = self.shifted_erfc(k, b).ok()?;
        Some(0.5 * (PI / self.b).sqrt() * (lower - upper))
    }

    fn monotone_partition(&self, order: u32, a: f64, b: f64) -> Option<Vec<f64>> {
        if !self.closed_form {
            return None;
        }
        let zeros = hermite_zeros(order + 1).ok()?;
        Some(
            zeros
                .iter()
                .map(|z| z / self.sqrt_b)
                .filter(|&x| x > a && x < b)
                .collect(),
        )
    }

    fn tail_integral_bound(&self, order: u32, x: f64) -> Option<f64> {
        if x <= 0.0 {
            return None;
        }
        if order == 0 {
            return Some((-self.b * x * x).exp() / (2.0 * self.b * x));
        }
        // beyond the last sign change, int_x^inf |f^(n)| = |f^(n-1)(x)|
        let zeros = hermite_zeros(order).ok()?;
        let last = zeros.last().copied().unwrap_or(0.0) / self.sqrt_b;
        if x > last {
            self.derivative(order - 1, x).map(f64::abs)
        } else {
            None
        }
    }

    fn decays_at_infinity(&self) -> bool {
        true
    }
}

/// `f(x) = (1 + x^2)^{-s}` with `s > 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalDecay {
    s: f64,
}

impl RationalDecay {
    pub const MAX_ORDER: u32 = 40;

    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.5 && s.is_finite()) {
            return Err(MemfError::InvalidArgument(format!(
                "rational decay needs s > 1/2, got {s}"
            )));
        }
        Ok(Self { s })
    }
}

impl SmoothFunction1D for RationalDecay {
    fn derivative(&self, order: u32, x: f64) -> Option<f64> {
        if order > Self::MAX_ORDER {
            return None;
        }
        // (1+x^2) f^(k+1) = -2(s+k) x f^(k) - k(k-1+2s) f^(k-1)
        let u = 1.0 + x * x;
        let mut prev = 0.0;
        let mut cur = u.powf(-self.s);
        for k in 0..order {
            let kf = k as f64;
            let next = (-2.0 * (self.s + kf) * x * cur - kf * (kf - 1.0 + 2.0 * self.s) * prev) / u;
            prev = cur;
            cur = next;
        }
        Some(cur)
    }

    fn tail_integral_bound(&self, order: u32, x: f64) -> Option<f64> {
        if order == 0 && x > 0.0 {
            return Some(x.powf(1.0 - 2.0 * self.s) / (2.0 * self.s - 1.0));
        }
        if x < 4.0 {
            return None;
        }
        // Cauchy estimate on the circle |z - t| = t/2, where |1 + z^2| >= 3t^2/16.
        let nu = order as f64;
        let fact: f64 = (1..=order).map(|k| k as f64).product();
        let expo = nu + 2.0 * self.s - 1.0;
        Some(fact * 2f64.powi(order as i32) * (16.0f64 / 3.0).powf(self.s) * x.powf(-expo) / expo)
    }

    fn decays_at_infinity(&self) -> bool {
        true
    }
}

/// `f(x) = exp(-alpha x) cos(omega x)` with `alpha > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpCos {
    lambda: Complex64,
}

impl ExpCos {
    pub fn new(alpha: f64, omega: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && omega.is_finite()) {
            return Err(MemfError::InvalidArgument(format!(
                "exp-cos needs alpha > 0 and finite omega, got ({alpha}, {omega})"
            )));
        }
        Ok(Self {
            lambda: Complex64::new(-alpha, omega),
        })
    }

    fn exp_integral(mu: Complex64, a: f64, b: f64) -> Complex64 {
        let upper = if b.is_finite() {
            (mu * b).exp()
        } else {
            Complex64::new(0.0, 0.0)
        };
        (upper - (mu * a).exp()) / mu
    }
}

impl SmoothFunction1D for ExpCos {
    fn derivative(&self, order: u32, x: f64) -> Option<f64> {
        Some((self.lambda.powu(order) * (self.lambda * x).exp()).re)
    }

    fn fourier_integral(&self, k: i64, a: f64, b: f64) -> Option<Complex64> {
        if !a.is_finite() {
            return None;
        }
        let shift = Complex64::new(0.0, TAU * k as f64);
        let conj = self.lambda.conj();
        Some(
            0.5 * (Self::exp_integral(self.lambda + shift, a, b)
                + Self::exp_integral(conj + shift, a, b)),
        )
    }

    fn tail_integral_bound(&self, order: u32, x: f64) -> Option<f64> {
        let alpha = -self.lambda.re;
        Some(self.lambda.norm().powi(order as i32) * (-alpha * x).exp() / alpha)
    }

    fn decays_at_infinity(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    c: f64,
}

impl Constant {
    pub fn new(c: f64) -> Self {
        Self { c }
    }
}

impl SmoothFunction1D for Constant {
    fn derivative(&self, order: u32, _x: f64) -> Option<f64> {
        Some(if order == 0 { self.c } else { 0.0 })
    }

    fn fourier_integral(&self, k: i64, a: f64, b: f64) -> Option<Complex64> {
        if !(a.is_finite() && b.is_finite()) {
            return None;
        }
        if k == 0 {
            return Some(Complex64::new(self.c * (b - a), 0.0));
        }
        let w = TAU * k as f64;
        let diff = Complex64::new(0.0, w * b).exp() - Complex64::new(0.0, w * a).exp();
        Some(self.c * diff / Complex64::new(0.0, w))
    }

    fn monotone_partition(&self, _order: u32, _a: f64, _b: f64) -> Option<Vec<f64>> {
        Some(Vec::new())
    }

    fn abs_derivative_integral(&self, order: u32, a: f64, b: f64) -> Option<f64> {
        if order == 0 {
            Some(self.c.abs() * (b - a))
        } else {
            Some(0.0)
        }
    }
}

/// `sum_i c_i x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl SmoothFunction1D for Polynomial {
    fn derivative(&self, order: u32, x: f64) -> Option<f64> {
        let order = order as usize;
        let mut acc = 0.0;
        for i in (order..self.coeffs.len()).rev() {
            let falling: f64 = (i - order + 1..=i).map(|j| j as f64).product();
            acc = acc * x + falling * self.coeffs[i];
        }
        Some(acc)
    }

    fn monotone_partition(&self, order: u32, _a: f64, _b: f64) -> Option<Vec<f64>> {
        // a polynomial of degree <= 1 is monotone
        if order as usize + 1 >= self.degree() {
            Some(Vec::new())
        } else {
            None
        }
    }

    fn abs_derivative_integral(&self, order: u32, _a: f64, _b: f64) -> Option<f64> {
        if order as usize > self.degree() {
            Some(0.0)
        } else {
            None
        }
    }
}

/// `f(x, y) = g(x) h(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Separable2D<G, H> {
    g: G,
    h: H,
    factored: bool,
}

impl<G: SmoothFunction1D, H: SmoothFunction1D> Separable2D<G, H> {
    pub fn new(g: G, h: H) -> Self {
        Self {
            g,
            h,
            factored: true,
        }
    }

    /// Hides the factorization so sums take the general quadrature path.
    pub fn without_factorization(&self) -> Self
    where
        G: Clone,
        H: Clone,
    {
        Self {
            g: self.g.clone(),
            h: self.h.clone(),
            factored: false,
        }
    }
}

impl<G: SmoothFunction1D, H: SmoothFunction1D> SmoothFunction2D for Separable2D<G, H> {
    fn partial(&self, mu: u32, nu: u32, x: f64, y: f64) -> Option<f64> {
        Some(self.g.derivative(mu, x)? * self.h.derivative(nu, y)?)
    }

    fn factors(&self) -> Option<(&dyn SmoothFunction1D, &dyn SmoothFunction1D)> {
        self.factored.then_some((
            &self.g as &dyn SmoothFunction1D,
            &self.h as &dyn SmoothFunction1D,
        ))
    }
}

/// `f(x, y) = g(x + c y)`, constant along lines of slope `-1/c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ridge2D<G> {
    g: G,
    c: f64,
}

impl<G: SmoothFunction1D> Ridge2D<G> {
    pub fn new(g: G, c: f64) -> Self {
        Self { g, c }
    }
}

impl<G: SmoothFunction1D> SmoothFunction2D for Ridge2D<G> {
    fn partial(&self, mu: u32, nu: u32, x: f64, y: f64) -> Option<f64> {
        Some(self.c.powi(nu as i32) * self.g.derivative(mu + nu, x + self.c * y)?)
    }
}
