use std::fs;
use std::path::PathBuf;

use memf::functions::{ExpCos, Gaussian, RationalDecay, Separable2D};
use memf::memf1d::{memf_sum_finite, memf_sum_infinite, BoundReport, CutParams, SmoothFunction1D};
use memf::memf2d::{memf_sum_region, CutParams2D, GridRegion, SmoothFunction2D};
use memf::oracle::{direct_sum_1d, direct_sum_2d};
use memf::partition::{
    conjecture_report, rotator_partition, well1d_partition, well2d_partition, PartitionResult,
};
use memf::sweep::{run_sweep, SweepGrid, SweepOptions, System, ROUNDING_ALLOWANCE};
use memf::tables::{self, fig2_argmax, fig2_curve, fig2_peak, TableCell, TABLE_N};
use memf::MemfError;

use crate::args::{Command, Family, RunConfig};
use crate::output::{emit, num, opt, Sheet};

#[derive(Debug)]
pub enum CliError {
    Memf(MemfError),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Memf(e) => e.code(),
            CliError::Usage(_) => "E_USAGE",
            CliError::Io(_) => "E_IO",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Memf(e) => write!(f, "{e}"),
            CliError::Usage(s) | CliError::Io(s) => f.write_str(s),
        }
    }
}

impl From<MemfError> for CliError {
    fn from(e: MemfError) -> Self {
        CliError::Memf(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// A command that ran to completion but whose check failed.
pub struct Failure(pub String);

pub type Outcome = std::result::Result<Option<Failure>, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match cfg.command {
        Command::Tables => cmd_tables(cfg),
        Command::Sum1d => cmd_sum1d(cfg),
        Command::Sum2d => cmd_sum2d(cfg),
        Command::Partition => cmd_partition(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Fig2 => cmd_fig2(cfg),
        Command::Conjecture => cmd_conjecture(cfg),
    }
}

fn write_sheet(cfg: &RunConfig, sheet: &Sheet) -> Result<(), CliError> {
    emit(&sheet.render(cfg.format), cfg.out.as_deref())?;
    Ok(())
}

fn grid_sheet(cells: &[TableCell]) -> Sheet {
    let mut header = vec!["p".to_string()];
    header.extend(TABLE_N.iter().map(|n| format!("n={n}")));
    let mut sheet = Sheet::new(header);
    for row in cells.chunks(TABLE_N.len()) {
        let mut r = vec![row[0].p.to_string()];
        r.extend(row.iter().map(|c| c.formatted()));
        sheet.row(r);
    }
    sheet
}

fn cmd_tables(cfg: &RunConfig) -> Outcome {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let ext = cfg.format.extension();
    let path = |name: &str| dir.join(format!("{name}.{ext}"));

    let mut diff = Sheet::new([
        "table", "row", "column", "value", "rounded", "expected", "status",
    ]);
    let mut mismatches = 0;
    let mut record =
        |diff: &mut Sheet, table: &str, row: String, col: &str, v: f64, got: String, want: &str| {
            let ok = got == want;
            if !ok {
                mismatches += 1;
            }
            diff.row(vec![
                table.into(),
                row,
                col.into(),
                num(v),
                got,
                want.into(),
                if ok { "ok" } else { "MISMATCH" }.into(),
            ]);
        };

    let t1 = tables::table1()?;
    let mut sheet = Sheet::new(["n", "x_n", "g_n(x_n)"]);
    sheet.meta("turning points of the Hermite envelope, 3 decimals");
    for r in &t1 {
        let (x, g) = (format!("{:.3}", r.x_n), format!("{:.3}", r.g_n));
        record(
            &mut diff,
            "table1",
            format!("n={}", r.n),
            "x_n",
            r.x_n,
            x.clone(),
            r.expected_x,
        );
        record(
            &mut diff,
            "table1",
            format!("n={}", r.n),
            "g_n",
            r.g_n,
            g.clone(),
            r.expected_g,
        );
        sheet.row(vec![r.n.to_string(), x, g]);
    }
    emit(&sheet.render(cfg.format), Some(&path("table1")))?;

    let grids: [(&str, &str, Vec<TableCell>); 3] = [
        ("table2", "R^A bound, 1D well, B=1", tables::table2()?),
        (
            "table3",
            "envelope bound, 1D well, B=1, m=0",
            tables::table3()?,
        ),
        (
            "table4",
            "envelope bound, 2D well, B=1, m=0",
            tables::table4()?,
        ),
    ];
    for (name, title, cells) in &grids {
        for c in cells {
            record(
                &mut diff,
                name,
                format!("p={}", c.p),
                &format!("n={}", c.n),
                c.value,
                c.formatted(),
                c.expected,
            );
        }
        let mut sheet = grid_sheet(cells);
        sheet.meta(*title);
        sheet.meta("values rounded to 2 significant figures");
        emit(&sheet.render(cfg.format), Some(&path(name)))?;
    }

    diff.meta(format!("mismatches = {mismatches}"));
    emit(&diff.render(cfg.format), Some(&path("tables_diff")))?;
    println!(
        "tables written to {}; {mismatches} mismatches",
        dir.display()
    );
    Ok((mismatches > 0).then(|| Failure(format!("{mismatches} table cells differ"))))
}

fn family(cfg: &RunConfig) -> Result<Box<dyn SmoothFunction1D>, CliError> {
    Ok(match cfg.family {
        Family::Gaussian => Box::new(Gaussian::new(cfg.b.unwrap_or(1.0))?),
        Family::Rational => Box::new(RationalDecay::new(cfg.s)?),
        Family::Expcos => Box::new(ExpCos::new(cfg.alpha, cfg.omega)?),
    })
}

fn family_label(cfg: &RunConfig) -> String {
    match cfg.family {
        Family::Gaussian => format!("gaussian B={}", num(cfg.b.unwrap_or(1.0))),
        Family::Rational => format!("rational s={}", num(cfg.s)),
        Family::Expcos => format!("expcos alpha={} omega={}", num(cfg.alpha), num(cfg.omega)),
    }
}

fn push_bounds(sheet: &mut Sheet, bounds: &[BoundReport]) {
    for b in bounds {
        sheet.row(vec![format!("bound_{}", b.kind.label()), num(b.value)]);
    }
    for b in bounds {
        for a in &b.assumptions {
            sheet.meta(format!("bound_{}: {a}", b.kind.label()));
        }
    }
}

fn cmd_sum1d(cfg: &RunConfig) -> Outcome {
    let f = family(cfg)?;
    let cut = CutParams::new(cfg.m.unwrap_or(0), cfg.n.unwrap_or(4), cfg.p.unwrap_or(1))?;
    let (est, oracle) = match cfg.to {
        Some(to) => {
            let est = memf_sum_finite(&*f, cfg.from, to, cut)?;
            (
                est,
                Some(direct_sum_1d(|i| f.value(i as f64), cfg.from, to)?),
            )
        }
        None => (memf_sum_infinite(&*f, cfg.from, cut)?, None),
    };
    let mut sheet = Sheet::new(["quantity", "value"]);
    sheet.meta(family_label(cfg));
    sheet.meta(format!(
        "range [{}, {}], m={} n={} p={}",
        cfg.from,
        cfg.to.map_or("inf".to_string(), |t| t.to_string()),
        cut.m,
        cut.n,
        cut.p
    ));
    for (k, v) in [
        ("total", est.total),
        ("head", est.head),
        ("grating", est.grating_term),
        ("endpoint", est.endpoint_term),
        ("correction", est.correction_term),
    ] {
        sheet.row(vec![k.into(), num(v)]);
    }
    if let Some(o) = oracle {
        sheet.row(vec!["direct_sum".into(), num(o)]);
        sheet.row(vec!["abs_error".into(), num((est.total - o).abs())]);
    }
    push_bounds(&mut sheet, &est.bounds);
    write_sheet(cfg, &sheet)?;
    Ok(None)
}

fn parse_cells(spec: &str) -> Result<GridRegion, CliError> {
    let mut cells = Vec::new();
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (i, j) = item
            .split_once(',')
            .ok_or_else(|| usage(format!("cell '{item}' is not of the form i,j")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("cell '{item}' has a non-integer coordinate")))
        };
        cells.push((parse(i)?, parse(j)?));
    }
    Ok(GridRegion::new(cells))
}

fn cmd_sum2d(cfg: &RunConfig) -> Outcome {
    let f = family(cfg)?;
    let g: &dyn SmoothFunction1D = &*f;
    let f2 = Separable2D::new(g, g);
    let region = match &cfg.cells {
        Some(spec) => parse_cells(spec)?,
        None => {
            let to = cfg.to.ok_or_else(|| usage("sum2d needs --to or --cells"))?;
            let (fy, ty) = (cfg.from_y.unwrap_or(cfg.from), cfg.to_y.unwrap_or(to));
            if to < cfg.from || ty < fy {
                return Err(MemfError::EmptyRange.into());
            }
            GridRegion::rectangle(cfg.from, to + 1, fy, ty + 1)
        }
    };
    let (n, p) = (cfg.n.unwrap_or(3), cfg.p.unwrap_or(1));
    let cut = CutParams2D::new(n, p, cfg.n2.unwrap_or(n), cfg.p2.unwrap_or(p))?;
    let est = memf_sum_region(&f2, &region, &cut)?;
    let oracle = direct_sum_2d(|i, j| f2.value(i as f64, j as f64), region.squares());
    let mut sheet = Sheet::new(["quantity", "value"]);
    sheet.meta(format!("{} in x and y", family_label(cfg)));
    sheet.meta(format!(
        "{} lattice points, n={} p={} n2={} p2={}",
        region.len(),
        cut.n,
        cut.p,
        cut.n2,
        cut.p2
    ));
    for (k, v) in [
        ("total", est.total),
        ("head", est.head),
        ("area", est.area),
        ("line", est.line),
        ("vertex", est.vertex),
        ("direct_sum", oracle),
        ("abs_error", (est.total - oracle).abs()),
    ] {
        sheet.row(vec![k.into(), num(v)]);
    }
    push_bounds(&mut sheet, &est.bounds);
    write_sheet(cfg, &sheet)?;
    Ok(None)
}

fn cmd_partition(cfg: &RunConfig) -> Outcome {
    let system: System = cfg
        .system
        .ok_or_else(|| usage("partition needs --system"))?
        .into();
    let b = cfg.b.unwrap_or(1.0);
    let (m, n, p) = (cfg.m.unwrap_or(0), cfg.n.unwrap_or(3), cfg.p.unwrap_or(0));
    let r: PartitionResult = match system {
        System::Well1D => well1d_partition(b, CutParams::new(m, n, p)?)?,
        System::Rotator => rotator_partition(b, CutParams::new(m, n, p)?)?,
        System::Well2D => well2d_partition(b, m, n, p)?,
    };
    let mut sheet = Sheet::new([
        "system", "B", "m", "n", "p", "value", "head", "w_terms", "bound_A", "bound_H",
    ]);
    sheet.row(vec![
        system.to_string(),
        num(b),
        m.to_string(),
        n.to_string(),
        p.to_string(),
        num(r.value),
        num(r.head),
        num(r.w_terms),
        opt(r.bound_a),
        opt(r.bound_h),
    ]);
    write_sheet(cfg, &sheet)?;
    Ok(None)
}

fn b_range(cfg: &RunConfig, default: (f64, f64, f64)) -> Result<Vec<f64>, CliError> {
    let lo = cfg.b_min.unwrap_or(default.0);
    let hi = cfg.b_max.unwrap_or(default.1);
    let step = cfg.b_step.unwrap_or(default.2);
    if !(lo > 0.0 && hi >= lo && step > 0.0) || !hi.is_finite() {
        return Err(usage(format!(
            "B range needs 0 < B-min <= B-max and B-step > 0, got [{lo}, {hi}] step {step}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

fn cmd_sweep(cfg: &RunConfig) -> Outcome {
    let systems: Vec<System> = match cfg.system {
        Some(s) => vec![s.into()],
        None => vec![System::Well1D, System::Rotator, System::Well2D],
    };
    let opts = SweepOptions {
        flip_correction_sign: cfg.inject_sign_fault,
    };
    let mut sheet = Sheet::new([
        "system",
        "B",
        "m",
        "n",
        "p",
        "value",
        "oracle",
        "abs_error",
        "bound_A",
        "bound_H",
        "valid",
    ]);
    sheet.meta(format!(
        "valid: abs_error <= min(bound_A, bound_H) + {ROUNDING_ALLOWANCE} eps (|head| + |w_terms| + |oracle|)"
    ));
    if opts.flip_correction_sign {
        sheet.meta("sign fault injected into the derivative corrections");
    }
    let mut violations = 0;
    for system in systems {
        let mut grid = SweepGrid::standard(system);
        if cfg.b_min.is_some() || cfg.b_max.is_some() || cfg.b_step.is_some() {
            grid.b = b_range(cfg, (1.0, 1.0, 1.0))?;
        } else if let Some(b) = cfg.b {
            grid.b = vec![b];
        }
        if let Some(m) = cfg.m {
            grid.m = vec![m];
        }
        if let Some(n) = cfg.n {
            grid.n = vec![n];
        }
        if let Some(p) = cfg.p {
            grid.p = vec![p];
        }
        for r in run_sweep(system, &grid, opts)? {
            if !r.valid {
                violations += 1;
            }
            sheet.row(vec![
                r.system.to_string(),
                num(r.b),
                r.m.to_string(),
                r.n.to_string(),
                r.p.to_string(),
                num(r.value),
                num(r.oracle),
                num(r.error),
                opt(r.bound_a),
                opt(r.bound_h),
                r.valid.to_string(),
            ]);
        }
    }
    sheet.meta(format!(
        "rows = {}, violations = {violations}",
        sheet.rows.len()
    ));
    write_sheet(cfg, &sheet)?;
    Ok((violations > 0).then(|| Failure(format!("{violations} sweep rows exceed their bound"))))
}

fn cmd_fig2(cfg: &RunConfig) -> Outcome {
    let (m, n, p) = (cfg.m.unwrap_or(2), cfg.n.unwrap_or(5), cfg.p.unwrap_or(2));
    let bs = b_range(cfg, (0.01, 5.0, 1e-3))?;
    let step = cfg.b_step.unwrap_or(1e-3);
    let curve = fig2_curve(bs[0], bs[bs.len() - 1], step, m, n, p)?;
    let mut sheet = Sheet::new(["B", "bound"]);
    sheet.meta(format!("envelope bound of the 1D well, m={m} n={n} p={p}"));
    if let Some(arg) = fig2_argmax(&curve) {
        sheet.meta(format!("argmax_B = {}", num(arg)));
    }
    sheet.meta(format!("B_m = (n-1)/(m+1)^2 = {}", num(fig2_peak(m, n))));
    for (b, v) in curve {
        sheet.row(vec![num(b), num(v)]);
    }
    write_sheet(cfg, &sheet)?;
    Ok(None)
}

fn cmd_conjecture(cfg: &RunConfig) -> Outcome {
    let report = conjecture_report(cfg.n_max, cfg.grid_step)?;
    let mut sheet = Sheet::new([
        "n",
        "points",
        "violations",
        "min_margin",
        "worst_x",
        "holds",
    ]);
    sheet.meta(format!(
        "Hermite envelope scan, step {}, holds through n = {}",
        num(cfg.grid_step),
        report.holds_through()
    ));
    for c in &report.checks {
        sheet.row(vec![
            c.n.to_string(),
            c.points.to_string(),
            c.violations.to_string(),
            num(c.min_margin),
            num(c.worst_x),
            c.holds().to_string(),
        ]);
    }
    write_sheet(cfg, &sheet)?;
    let v = report.violations();
    Ok((v > 0).then(|| Failure(format!("{v} envelope violations"))))
}
