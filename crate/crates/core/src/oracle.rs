//! Brute-force reference computations for validating the cuts and their bounds.
//!
//! Nothing here calls into the kernels or the summation modules.

use crate::error::{MemfError, Result};

const MAX_TERMS: i64 = 50_000_000;

/// A truncated infinite sum with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationCertificate {
    pub terms_used: u64,
    pub tail_bound: f64,
    pub value: f64,
}

/// Sums in ascending order of magnitude.
pub fn sum_ascending(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    terms.into_iter().sum()
}

/// `sum_{i=a}^{b} f(i)` term by term.
pub fn direct_sum_1d<F: Fn(i64) -> f64>(f: F, a: i64, b: i64) -> Result<f64> {
    if b < a {
        return Err(MemfError::EmptyRange);
    }
    Ok(sum_ascending((a..=b).map(f).collect()))
}

/// `sum_{i >= a} f(i)`, truncated once the tail bound drops below `1e-17` of the
/// running value.
///
/// `majorant` must dominate `|f|` and be log-concave and decreasing past the
/// truncation point, so that `M(l) / (1 - M(l+1)/M(l))` bounds the tail from `l`.
/// Every summed term is checked against it.
pub fn direct_sum_1d_infinite<F, M>(f: F, a: i64, majorant: M) -> Result<TruncationCertificate>
where
    F: Fn(i64) -> f64,
    M: Fn(i64) -> f64,
{
    let mut terms = Vec::new();
    let mut running = 0.0f64;
    let mut l = a;
    loop {
        let t = f(l);
        let bound = majorant(l);
        if !t.is_finite() || t.abs() > bound * (1.0 + 1e-12) {
            return Err(MemfError::MajorantViolated { index: l });
        }
        terms.push(t);
        running += t;
        l += 1;
        let (m0, m1) = (majorant(l), majorant(l + 1));
        let q = if m0 > 0.0 { m1 / m0 } else { 0.0 };
        if q < 1.0 {
            let tail = if m0 > 0.0 { m0 / (1.0 - q) } else { 0.0 };
            if m0 < 1e-18 * running.abs() && tail < 1e-17 * running.abs() {
                let value = sum_ascending(terms);
                return Ok(TruncationCertificate {
                    terms_used: (l - a) as u64,
                    tail_bound: tail,
                    value,
                });
            }
        }
        if l - a > MAX_TERMS {
            return Err(MemfError::NotDecaying);
        }
    }
}

/// `sum_{(i,j) in pairs} f(i, j)` term by term.
pub fn direct_sum_2d<F, I>(f: F, pairs: I) -> f64
where
    F: Fn(i64, i64) -> f64,
    I: IntoIterator<Item = (i64, i64)>,
{
    sum_ascending(pairs.into_iter().map(|(i, j)| f(i, j)).collect())
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule: `panels` equal panels of `order` points.
pub fn composite_gauss_legendre<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut parts = Vec::with_capacity(panels);
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        let s: f64 = x
            .iter()
            .zip(&w)
            .map(|(&t, &wt)| wt * f(mid + 0.5 * h * t))
            .sum();
        parts.push(0.5 * h * s);
    }
    parts.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_sum() {
        assert_eq!(direct_sum_1d(|i| (i * i) as f64, 0, 10).unwrap(), 385.0);
        assert_eq!(
            direct_sum_1d(|i| i as f64, 3, 2),
            Err(MemfError::EmptyRange)
        );
    }

    #[test]
    fn gaussian_tail() {
        let f = |l: i64| (-((l * l) as f64)).exp();
        let c = direct_sum_1d_infinite(f, 1, f).unwrap();
        assert!((c.value - 0.386_318_602_0).abs() < 1e-9, "{}", c.value);
        assert!(c.tail_bound < 1e-16);
        let finite = direct_sum_1d(f, 1, 40).unwrap();
        assert!((finite - c.value).abs() < 1e-17);
    }

    #[test]
    fn theta_identity() {
        // sum_Z e^{-pi t l^2} = t^{-1/2} sum_Z e^{-pi l^2 / t}
        let t = 0.37f64;
        let lhs = direct_sum_1d(
            |l| (-std::f64::consts::PI * t * (l * l) as f64).exp(),
            -60,
            60,
        )
        .unwrap();
        let rhs = direct_sum_1d(
            |l| (-std::f64::consts::PI * (l * l) as f64 / t).exp(),
            -60,
            60,
        )
        .unwrap()
            / t.sqrt();
        assert!((lhs - rhs).abs() < 1e-14 * lhs);
    }

    #[test]
    fn rotator_sum() {
        let f = |l: i64| (2 * l + 1) as f64 * (-((l * (l + 1)) as f64)).exp();
        let c = direct_sum_1d_infinite(f, 0, f).unwrap();
        assert!((c.value - 1.418_442_6).abs() < 1e-7, "{}", c.value);
    }

    #[test]
    fn majorant_violation_detected() {
        let f = |l: i64| (-(l as f64)).exp();
        let m = |l: i64| (-(l as f64) * 1.01).exp();
        assert_eq!(
            direct_sum_1d_infinite(f, 1, m),
            Err(MemfError::MajorantViolated { index: 1 })
        );
    }

    #[test]
    fn two_dimensional() {
        assert_eq!(direct_sum_2d(|_, _| 1.0, (0..13).map(|i| (i, 2 * i))), 13.0);
        assert_eq!(direct_sum_2d(|_, _| 1.0, std::iter::empty()), 0.0);
        let g = |l: i64| (-((l * l) as f64)).exp();
        let one = direct_sum_1d(g, 1, 40).unwrap();
        let pairs = (1..=40).flat_map(|i| (1..=40).map(move |j| (i, j)));
        let two = direct_sum_2d(|i, j| g(i) * g(j), pairs);
        assert!((two - one * one).abs() < 1e-14 * two);
        assert!((two - 0.149_242_1).abs() < 1e-7);
    }

    #[test]
    fn order_independence() {
        let terms: Vec<f64> = (1..200).map(|l| 1.0 / (l as f64).powi(2)).collect();
        let up = sum_ascending(terms.clone());
        let down: f64 = terms.iter().sum();
        assert!(((up - down) / up).abs() < 1e-15);
    }

    #[test]
    fn legendre_rule_exactness() {
        let (x, w) = gauss_legendre(20);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m38: f64 = x.iter().zip(&w).map(|(&t, &wt)| wt * t.powi(38)).sum();
        assert!((m38 - 2.0 / 39.0).abs() < 1e-14);
        let v = composite_gauss_legendre(f64::sin, 0.0, std::f64::consts::PI, 8, 20);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
