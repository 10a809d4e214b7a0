//! Acceptance criteria, one line per criterion. Run with `cargo test --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use memf::functions::{Constant, Gaussian, Ridge2D, Separable2D};
use memf::kernels::{erfc_real, scaled_erfc_complex};
use memf::memf1d::{classical_euler_maclaurin, memf_sum_finite, CutParams};
use memf::memf2d::{memf_sum_region, trace_boundary, CutParams2D, GridRegion};
use memf::oracle::{composite_gauss_legendre, direct_sum_1d};
use memf::partition::conjecture_report;
use memf::sweep::{run_sweep, SweepGrid, SweepOptions, System};
use memf::tables::{fig2_argmax, fig2_curve, fig2_peak, table1, table2, table3, table4, TableCell};
use memf::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn table_outcome(cells: memf::Result<Vec<TableCell>>) -> Outcome {
    let cells = cells.map_err(|e| e.to_string())?;
    let bad: Vec<String> = cells
        .iter()
        .filter(|c| !c.matches())
        .map(|c| {
            format!(
                "(p={}, n={}) got {} want {}",
                c.p,
                c.n,
                c.formatted(),
                c.expected
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{}/{} cells match", cells.len(), cells.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn c1() -> Outcome {
    let rows = table1().map_err(|e| e.to_string())?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches())
        .map(|r| format!("n={} got ({:.3}, {:.3})", r.n, r.x_n, r.g_n))
        .collect();
    if bad.is_empty() {
        Ok(format!("{} (x_n, g_n) pairs match", rows.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn sweep(system: System) -> Outcome {
    let grid = SweepGrid::standard(system);
    let rows = run_sweep(system, &grid, SweepOptions::default()).map_err(|e| e.to_string())?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.valid)
        .take(5)
        .map(|r| {
            format!(
                "(B={}, m={}, n={}, p={}) |err|={:e} bound_a={:?} bound_h={:?}",
                r.b, r.m, r.n, r.p, r.error, r.bound_a, r.bound_h
            )
        })
        .collect();
    let worst = rows
        .iter()
        .filter_map(|r| {
            r.bound_a
                .into_iter()
                .chain(r.bound_h)
                .reduce(f64::min)
                .map(|b| r.error / b)
        })
        .fold(0.0f64, f64::max);
    let rounding_only: Vec<_> = rows
        .iter()
        .filter(|r| r.min_bound().is_some_and(|b| r.error > b))
        .collect();
    let worst_excess = rounding_only
        .iter()
        .map(|r| (r.error - r.min_bound().unwrap()) / r.allowance)
        .fold(0.0f64, f64::max);
    if bad.is_empty() {
        Ok(format!(
            "{} points, 0 violations, max |err|/bound = {worst:.3}; {} points exceed the bound \
             by less than the rounding allowance (worst excess {worst_excess:.2} of it)",
            rows.len(),
            rounding_only.len()
        ))
    } else {
        Err(format!(
            "{} violations, e.g. {}",
            rows.iter().filter(|r| !r.valid).count(),
            bad.join("; ")
        ))
    }
}

fn c8() -> Outcome {
    let curve = fig2_curve(0.01, 5.0, 1e-3, 2, 5, 2).map_err(|e| e.to_string())?;
    let arg = fig2_argmax(&curve).ok_or("empty curve")?;
    let peak = fig2_peak(2, 5);
    if (arg - peak).abs() <= 1e-3 {
        Ok(format!("argmax {arg:.4}, analytic {peak:.4}"))
    } else {
        Err(format!("argmax {arg} vs {peak}"))
    }
}

fn c9() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in [0.05, 0.3, 1.0, 2.5] {
        let g = Gaussian::new(b).map_err(|e| e.to_string())?;
        for (lo, hi) in [(0, 12), (-4, 3), (2, 9)] {
            for n in 2..=10 {
                let cut = CutParams::new(0, n, 0).map_err(|e| e.to_string())?;
                let memf = memf_sum_finite(&g, lo, hi, cut)
                    .map_err(|e| e.to_string())?
                    .total;
                let em = classical_euler_maclaurin(&g, lo, hi, n)
                    .map_err(|e| e.to_string())?
                    .total;
                let rel = ((memf - em) / em).abs();
                worst = worst.max(rel);
                if rel > 1e-12 {
                    return Err(format!("B={b} [{lo},{hi}] n={n}: relative gap {rel:e}"));
                }
            }
        }
    }
    let g = Gaussian::new(PI).map_err(|e| e.to_string())?;
    let cut = CutParams::new(0, 2, 40).map_err(|e| e.to_string())?;
    let poisson = memf_sum_finite(&g, -20, 20, cut)
        .map_err(|e| e.to_string())?
        .total;
    let theta =
        direct_sum_1d(|i| (-PI * (i * i) as f64).exp(), -20, 20).map_err(|e| e.to_string())?;
    let rel = ((poisson - theta) / theta).abs();
    if rel > 1e-12 {
        return Err(format!("Poisson limit relative gap {rel:e}"));
    }
    Ok(format!(
        "Euler-Maclaurin gap <= {worst:.1e}, Poisson gap {rel:.1e}"
    ))
}

fn random_polyomino(rng: &mut ChaCha8Rng, size: usize) -> GridRegion {
    let mut cells = vec![(0i64, 0i64)];
    while cells.len() < size {
        let (i, j) = cells[rng.gen_range(0..cells.len())];
        let next = match rng.gen_range(0..4) {
            0 => (i + 1, j),
            1 => (i - 1, j),
            2 => (i, j + 1),
            _ => (i, j - 1),
        };
        if !cells.contains(&next) {
            cells.push(next);
        }
    }
    GridRegion::new(cells)
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let one = Separable2D::new(Constant::new(1.0), Constant::new(1.0));
    let opaque = one.without_factorization();
    let cut = CutParams2D::new(3, 1, 4, 2).map_err(|e| e.to_string())?;
    let mut loops = 0;
    for k in 0..100 {
        let size = rng.gen_range(1..=20);
        let region = random_polyomino(&mut rng, size);
        let est = if k % 2 == 0 {
            memf_sum_region(&one, &region, &cut)
        } else {
            memf_sum_region(&opaque, &region, &cut)
        }
        .map_err(|e| e.to_string())?;
        if (est.total - region.len() as f64).abs() > 1e-10 {
            return Err(format!("region {k}: {} vs {}", est.total, region.len()));
        }
        for lp in trace_boundary(&region).loops {
            loops += 1;
            if !lp.signs_alternate() {
                return Err(format!("region {k}: corner signs do not alternate"));
            }
        }
    }
    let f = Ridge2D::new(Gaussian::new(0.2).map_err(|e| e.to_string())?, 0.6);
    let cut = CutParams2D::new(4, 1, 3, 0).map_err(|e| e.to_string())?;
    let sum = |a, b| {
        memf_sum_region(&f, &GridRegion::rectangle(a, b, -1, 2), &cut)
            .map(|e| e.total)
            .map_err(|e| e.to_string())
    };
    let gap = (sum(-2, 3)? - sum(-2, 1)? - sum(1, 3)?).abs();
    if gap > 1e-10 {
        return Err(format!("rectangle additivity gap {gap:e}"));
    }
    Ok(format!(
        "100 regions counted exactly, {loops} loops alternate, additivity gap {gap:.1e}"
    ))
}

fn c11() -> Outcome {
    let r = conjecture_report(20, 1e-3).map_err(|e| e.to_string())?;
    if r.violations() == 0 && r.holds_through() == 20 {
        let margin = r
            .checks
            .iter()
            .map(|c| c.min_margin)
            .fold(f64::INFINITY, f64::min);
        Ok(format!("n <= 20 hold, smallest margin {margin:.2e}"))
    } else {
        Err(format!(
            "{} violations, holds through n = {}",
            r.violations(),
            r.holds_through()
        ))
    }
}

/// `erfc(x)` from `2/sqrt(pi) e^{-x^2} int_0^inf e^{-2xs - s^2} ds`, or from
/// `1 + 2/sqrt(pi) int_0^{-x} e^{-t^2} dt` for negative `x`.
fn erfc_oracle(x: f64) -> f64 {
    if x < 0.0 {
        return 1.0
            + 2.0 / PI.sqrt() * composite_gauss_legendre(|t| (-t * t).exp(), 0.0, -x, 200, 20);
    }
    let span = 7.0f64.min(50.0 / (2.0 * x));
    let i = composite_gauss_legendre(|s| (-2.0 * x * s - s * s).exp(), 0.0, span, 400, 20);
    2.0 / PI.sqrt() * (-x * x).exp() * i
}

/// `e^{L} erfc(z)` for `L = -Im(z)^2` from the same ray integral.
fn scaled_oracle(z: Complex64) -> Complex64 {
    let (u, v) = (z.re, z.im);
    let span = 8.0;
    let panels = (span * (2.0 * v.abs() + 2.0 * u.abs() + 4.0)) as usize * 4;
    let integrand = |s: f64| (-2.0 * z * s - s * s).exp();
    let re = composite_gauss_legendre(|s| integrand(s).re, 0.0, span, panels, 20);
    let im = composite_gauss_legendre(|s| integrand(s).im, 0.0, span, panels, 20);
    let lead = Complex64::new(-(u * u), -2.0 * u * v).exp();
    lead * Complex64::new(re, im) * (2.0 / PI.sqrt())
}

fn c12() -> Outcome {
    let mut worst_real: f64 = 0.0;
    for k in 0..50 {
        let x = -5.0 + 31.5 * k as f64 / 49.0;
        let want = erfc_oracle(x);
        let rel = ((erfc_real(x) - want) / want).abs();
        worst_real = worst_real.max(rel);
    }
    let mut points = Vec::new();
    let b = 1e-3f64;
    for k in 1..=4 {
        for x in [0.5, 2.0, 8.0, 30.0, 100.0] {
            points.push(Complex64::new(b.sqrt() * x, -PI * k as f64 / b.sqrt()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    while points.len() < 50 {
        points.push(Complex64::new(
            rng.gen_range(-1.5..6.0),
            rng.gen_range(-40.0..40.0),
        ));
    }
    let mut worst_complex: f64 = 0.0;
    for z in points {
        let got = scaled_erfc_complex(z, -(z.im * z.im)).map_err(|e| e.to_string())?;
        let want = scaled_oracle(z);
        worst_complex = worst_complex.max((got - want).norm() / want.norm());
    }
    if worst_real <= 1e-13 && worst_complex <= 1e-12 {
        Ok(format!(
            "erfc worst {worst_real:.1e}, scaled complex worst {worst_complex:.1e}"
        ))
    } else {
        Err(format!(
            "erfc worst {worst_real:e}, scaled complex worst {worst_complex:e}"
        ))
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "Table 1 (x_n, g_n)",
            limit: secs(1),
            run: c1,
        },
        Criterion {
            id: 2,
            name: "Table 2 (1D well, bound A)",
            limit: secs(1),
            run: || table_outcome(table2()),
        },
        Criterion {
            id: 3,
            name: "Table 3 (1D well, envelope bound)",
            limit: secs(1),
            run: || table_outcome(table3()),
        },
        Criterion {
            id: 4,
            name: "Table 4 (2D well, envelope bound)",
            limit: secs(10),
            run: || table_outcome(table4()),
        },
        Criterion {
            id: 5,
            name: "sweep: 1D well",
            limit: secs(120),
            run: || sweep(System::Well1D),
        },
        Criterion {
            id: 6,
            name: "sweep: rotator",
            limit: secs(120),
            run: || sweep(System::Rotator),
        },
        Criterion {
            id: 7,
            name: "sweep: 2D well",
            limit: secs(300),
            run: || sweep(System::Well2D),
        },
        Criterion {
            id: 8,
            name: "Fig. 2 argmax",
            limit: secs(60),
            run: c8,
        },
        Criterion {
            id: 9,
            name: "reductions (Euler-Maclaurin, Poisson)",
            limit: secs(60),
            run: c9,
        },
        Criterion {
            id: 10,
            name: "2D structure on random polyominoes",
            limit: secs(120),
            run: c10,
        },
        Criterion {
            id: 11,
            name: "Hermite envelope n <= 20",
            limit: secs(60),
            run: c11,
        },
        Criterion {
            id: 12,
            name: "erfc accuracy",
            limit: secs(120),
            run: c12,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit {:?}", c.limit)),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {} ({:.2}s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
