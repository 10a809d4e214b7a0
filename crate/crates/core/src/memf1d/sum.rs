use std::f64::consts::TAU;

use super::{attach_bounds, require, CutParams, SmoothFunction1D, SummationEstimate};
use crate::error::{MemfError, Result};
use crate::kernels::{bernoulli_number, tail};
use crate::quad::{integrate_breakpoints, QuadConfig};

// Semi-infinite quadrature stops once the tail is below this fraction of the total.
const TAIL_FRACTION: f64 = 1e-16;
const MAX_SPAN: f64 = 1_048_576.0;

fn panel_points(lo: f64, hi: f64, width: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut j = (lo / width).floor() + 1.0;
    loop {
        let x = j * width;
        if x >= hi {
            break;
        }
        if x > lo {
            pts.push(x);
        }
        j += 1.0;
    }
    pts.push(hi);
    pts
}

/// Integrates `g` over `[lo, hi]` (`hi` may be `+inf`) on panels of at most
/// `width`, truncating an infinite range with `tail(x) >= int_x^inf |g|`.
/// Returns the value and an error estimate including the dropped tail.
pub(crate) fn integrate_panels<G, T>(
    g: G,
    lo: f64,
    hi: f64,
    width: f64,
    tail: T,
) -> Result<(f64, f64)>
where
    G: Fn(f64) -> f64,
    T: Fn(f64) -> Option<f64>,
{
    let cfg = QuadConfig::default();
    if hi.is_finite() {
        let r = integrate_breakpoints(&g, &panel_points(lo, hi, width), &cfg).into_result()?;
        return Ok((r.value, r.error));
    }
    let mut total = 0.0;
    let mut error = 0.0;
    let mut start = lo;
    let mut len = 1.0;
    loop {
        let end = start + len;
        let r = integrate_breakpoints(&g, &panel_points(start, end, width), &cfg).into_result()?;
        total += r.value;
        error += r.error;
        if let Some(rest) = tail(end) {
            if rest <= TAIL_FRACTION * total.abs() || rest < 1e-300 {
                return Ok((total, error + rest));
            }
        }
        if end - lo > MAX_SPAN {
            return Err(MemfError::NotDecaying);
        }
        start = end;
        len *= 2.0;
    }
}

/// `M_nu(a', b) = f^{(nu)}(a') - f^{(nu)}(b)`; `b = +inf` uses the declared limit.
pub fn endpoint_difference<F: SmoothFunction1D + ?Sized>(
    f: &F,
    nu: u32,
    a_prime: f64,
    b: f64,
) -> Result<f64> {
    if a_prime == b {
        return Ok(0.0);
    }
    Ok(require(f, nu, a_prime)? - require(f, nu, b)?)
}

/// `int_{a'}^{b} f(x) sin((2p+1) pi x) / sin(pi x) dx`, evaluated mode by mode
/// as `sum_{|k| <= p} int f(x) e^{i 2 pi k x} dx`.
pub fn grating_integral<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    p: u32,
) -> Result<f64> {
    if b == a_prime {
        return Ok(0.0);
    }
    if !(b > a_prime) {
        return Err(MemfError::InvalidArgument(format!(
            "grating integral needs b > a', got [{a_prime}, {b}]"
        )));
    }
    let mut total = 0.0;
    for k in 0..=p {
        total += fourier_mode(f, k, a_prime, b)?;
    }
    Ok(total)
}

/// Real contribution of the `k` and `-k` modes together.
fn fourier_mode<F: SmoothFunction1D + ?Sized>(f: &F, k: u32, a: f64, b: f64) -> Result<f64> {
    let weight = if k == 0 { 1.0 } else { 2.0 };
    if let Some(c) = f.fourier_integral(k as i64, a, b) {
        return Ok(weight * c.re);
    }
    let freq = TAU * k as f64;
    let width = if k == 0 { 1.0 } else { 0.5 / k as f64 };
    let (value, _) = integrate_panels(
        |x| f.value(x) * (freq * x).cos(),
        a,
        b,
        width,
        |x| {
            if k == 0 {
                return f.tail_integral_bound(0, x);
            }
            // Integration by parts: |int_x^inf f cos(wt)| <= (|f(x)| + int_x^inf |f'|) / w.
            let by_parts = f
                .tail_integral_bound(1, x)
                .map(|d| (f.value(x).abs() + d) / freq);
            match (by_parts, f.tail_integral_bound(0, x)) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        },
    )?;
    Ok(weight * value)
}

fn correction<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a_prime: f64,
    b: f64,
    n: u32,
    p: u32,
) -> Result<f64> {
    let mut acc = 0.0;
    for r in 1..=n / 2 {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * tail(2 * r, p)? * endpoint_difference(f, 2 * r - 1, a_prime, b)?;
    }
    Ok(acc)
}

fn head_sum<F: SmoothFunction1D + ?Sized>(f: &F, from: i64, to_exclusive: i64) -> f64 {
    (from..to_exclusive).map(|i| f.value(i as f64)).sum()
}

/// The `m-n-p` cut of `sum_{i=a}^{b} f(i)` with all applicable bounds attached.
pub fn memf_sum_finite<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a: i64,
    b: i64,
    cut: CutParams,
) -> Result<SummationEstimate> {
    if b <= a {
        return Err(MemfError::EmptyRange);
    }
    if cut.m as i64 > b - a {
        return Err(MemfError::InvalidArgument(format!(
            "m = {} exceeds b - a = {}",
            cut.m,
            b - a
        )));
    }
    let ap = a + cut.m as i64;
    let (apf, bf) = (ap as f64, b as f64);
    let head = head_sum(f, a, ap);
    let grating = grating_integral(f, apf, bf, cut.p)?;
    let endpoint = 0.5 * (require(f, 0, apf)? + require(f, 0, bf)?);
    let corr = correction(f, apf, bf, cut.n, cut.p)?;
    let mut est = SummationEstimate::assemble(head, grating, endpoint, corr);
    est.bounds = attach_bounds(f, apf, bf, cut.n, cut.p);
    Ok(est)
}

/// The `m-n-p` cut of `sum_{i=a}^{inf} f(i)` for a decaying `f`.
pub fn memf_sum_infinite<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a: i64,
    cut: CutParams,
) -> Result<SummationEstimate> {
    if !f.decays_at_infinity() {
        return Err(MemfError::NotDecaying);
    }
    let ap = a + cut.m as i64;
    let apf = ap as f64;
    let inf = f64::INFINITY;
    let head = head_sum(f, a, ap);
    let grating = grating_integral(f, apf, inf, cut.p)?;
    let endpoint = 0.5 * (require(f, 0, apf)? + f.limit_at_infinity(0));
    let corr = correction(f, apf, inf, cut.n, cut.p)?;
    let mut est = SummationEstimate::assemble(head, grating, endpoint, corr);
    est.bounds = attach_bounds(f, apf, inf, cut.n, cut.p);
    Ok(est)
}

/// `(B_{n,p} f)(x) = -f(x)/2 + sum_{r=1}^{floor(n/2)} (-1)^{r+1} T_{2r,p} f^{(2r-1)}(x)`.
pub fn operator_b<F: SmoothFunction1D + ?Sized>(f: &F, n: u32, p: u32, x: f64) -> Result<f64> {
    let mut acc = -0.5 * require(f, 0, x)?;
    for r in 1..=n / 2 {
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * tail(2 * r, p)? * require(f, 2 * r - 1, x)?;
    }
    Ok(acc)
}

/// Half-open cut of `sum_{i=a}^{b-1} f(i)`:
/// `int_a^b a_p f + (B f)(b) - (B f)(a)`.
pub fn memf_sum_half_open<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a: i64,
    b: i64,
    n: u32,
    p: u32,
) -> Result<SummationEstimate> {
    if b <= a {
        return Err(MemfError::EmptyRange);
    }
    let (af, bf) = (a as f64, b as f64);
    let grating = grating_integral(f, af, bf, p)?;
    let endpoint = 0.5 * (require(f, 0, af)? - require(f, 0, bf)?);
    let corr = correction(f, af, bf, n, p)?;
    let mut est = SummationEstimate::assemble(0.0, grating, endpoint, corr);
    est.bounds = attach_bounds(f, af, bf, n, p);
    Ok(est)
}

/// Classical Euler-Maclaurin with `B_{2r} / (2r)!` coefficients and a plain
/// quadrature of `f`; shares no code with the cut beyond derivative access.
pub fn classical_euler_maclaurin<F: SmoothFunction1D + ?Sized>(
    f: &F,
    a: i64,
    b: i64,
    n: u32,
) -> Result<SummationEstimate> {
    if b <= a {
        return Err(MemfError::EmptyRange);
    }
    let (af, bf) = (a as f64, b as f64);
    let pts: Vec<f64> = (a..=b).map(|i| i as f64).collect();
    let integral = integrate_breakpoints(|x| f.value(x), &pts, &QuadConfig::default())
        .into_result()?
        .value;
    let endpoint = 0.5 * (require(f, 0, af)? + require(f, 0, bf)?);
    let mut corr = 0.0;
    let mut factorial = 1.0;
    for r in 1..=n / 2 {
        factorial *= (2 * r - 1) as f64 * (2 * r) as f64;
        let coeff = bernoulli_number(r)? / factorial;
        corr += coeff * (require(f, 2 * r - 1, bf)? - require(f, 2 * r - 1, af)?);
    }
    let mut est = SummationEstimate::assemble(0.0, integral, endpoint, corr);
    if n >= 2 {
        est.bounds = super::bound_a(f, af, bf, n, 0).into_iter().collect();
    }
    Ok(est)
}
