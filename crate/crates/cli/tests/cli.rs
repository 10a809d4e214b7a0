use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn memf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_memf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("memf-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn tables_reproduce_published_values() {
    let dir = scratch("tables");
    let out = memf(&["--command", "tables", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let t2 = fs::read_to_string(dir.join("table2.csv")).unwrap();
    let rows = data_rows(&t2);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[0][1], "7.8e-2");
    let t1 = fs::read_to_string(dir.join("table1.csv")).unwrap();
    assert!(data_rows(&t1).contains(&vec!["5".into(), "2.843".into(), "1.942".into()]));
    let diff = fs::read_to_string(dir.join("tables_diff.csv")).unwrap();
    assert!(diff.starts_with("# mismatches = 0\n"));
    assert_eq!(data_rows(&diff).len(), 18 + 3 * 35);
    for name in ["table3", "table4"] {
        assert!(dir.join(format!("{name}.csv")).exists());
    }
    assert!(!t2.contains('\r'));
}

#[test]
fn tsv_tables_use_tabs() {
    let dir = scratch("tsv");
    let out = memf(&[
        "--command",
        "tables",
        "--format",
        "tsv",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let t4 = fs::read_to_string(dir.join("table4.tsv")).unwrap();
    assert!(t4
        .lines()
        .any(|l| l == "p\tn=3\tn=5\tn=7\tn=9\tn=11\tn=13\tn=15"));
}

#[test]
fn fig2_peak_near_four_ninths() {
    let out = memf(&["--command", "fig2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let arg: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# argmax_B = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((arg - 4.0 / 9.0).abs() <= 1e-3);
    assert!(text.contains("# B_m = (n-1)/(m+1)^2 = 4.444444444444444e-1"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 4991);
    assert_eq!(rows[0][0], "1e-2");
}

#[test]
fn sweep_is_deterministic_and_valid() {
    let args = [
        "--command",
        "sweep",
        "--system",
        "well1d",
        "--B-min",
        "0.5",
        "--B-max",
        "2",
        "--B-step",
        "0.5",
        "--jobs",
        "3",
    ];
    let a = memf(&args);
    let b = memf(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let rows = data_rows(&stdout(&a));
    assert_eq!(rows.len(), 4 * 4 * 8 * 5);
    assert!(rows.iter().all(|r| r[10] == "true"));
}

#[test]
fn sweep_row_within_published_bound() {
    let out = memf(&[
        "--command",
        "sweep",
        "--system",
        "well1d",
        "--B",
        "1",
        "--m",
        "0",
        "--n",
        "3",
        "--p",
        "0",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    let err: f64 = rows[0][7].parse().unwrap();
    assert!(err <= 6.5e-2);
}

#[test]
fn injected_sign_fault_fails_the_sweep() {
    for system in ["well1d", "rotator", "well2d"] {
        let out = memf(&[
            "--command",
            "sweep",
            "--system",
            system,
            "--B",
            "0.25",
            "--inject-sign-fault",
        ]);
        assert_eq!(out.status.code(), Some(1), "{system}");
        assert!(stdout(&out).contains(",false"));
    }
}

#[test]
fn partition_and_sums_report_bounds() {
    let out = memf(&[
        "--command",
        "partition",
        "--system",
        "well2d",
        "--B",
        "1",
        "--n",
        "5",
        "--p",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(data_rows(&stdout(&out))[0][0], "well2d");

    let out = memf(&[
        "--command",
        "sum1d",
        "--family",
        "expcos",
        "--from",
        "-2",
        "--to",
        "30",
        "--n",
        "5",
        "--p",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let get = |k: &str| -> f64 {
        data_rows(&text).into_iter().find(|r| r[0] == k).unwrap()[1]
            .parse()
            .unwrap()
    };
    assert!(get("abs_error") <= get("bound_A"));

    let out = memf(&[
        "--command",
        "sum2d",
        "--cells",
        "0,0;1,0;0,1;-1,0",
        "--B",
        "0.4",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let rows = data_rows(&text);
    let get = |k: &str| -> f64 { rows.iter().find(|r| r[0] == k).unwrap()[1].parse().unwrap() };
    assert!(get("abs_error") <= get("bound_A"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = scratch("out");
    let path = dir.join("p.csv");
    let args = [
        "--command",
        "partition",
        "--system",
        "rotator",
        "--Bc",
        "0.5",
        "--m",
        "1",
        "--n",
        "5",
    ];
    let direct = memf(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(memf(&with_out).status.success());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn errors_carry_codes_and_usage() {
    for (args, code) in [
        (vec!["--command", "partition"], "E_USAGE"),
        (vec!["--command", "nonsense"], "E_USAGE"),
        (
            vec!["--command", "partition", "--system", "well1d", "--B", "-1"],
            "E_ARGUMENT",
        ),
        (
            vec!["--command", "partition", "--system", "well2d", "--n", "41"],
            "E_CONJECTURE_RANGE",
        ),
        (
            vec!["--command", "sum1d", "--from", "5", "--to", "2"],
            "E_EMPTY_RANGE",
        ),
        (vec!["--command", "sum2d", "--cells", "0;1"], "E_USAGE"),
        (vec!["--command", "fig2", "--B-step", "0"], "E_USAGE"),
        (vec!["--command", "sweep", "--jobs", "0"], "E_USAGE"),
    ] {
        let out = memf(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert!(err.contains(&format!("error[{code}]")), "{args:?}: {err}");
        assert!(err.contains("Usage:"), "{args:?}: {err}");
    }
}

#[test]
fn conjecture_scan_holds() {
    let out = memf(&[
        "--command",
        "conjecture",
        "--n-max",
        "6",
        "--grid-step",
        "0.01",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[5] == "true"));
}
