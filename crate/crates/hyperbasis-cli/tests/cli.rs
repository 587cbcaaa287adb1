//! End-to-end checks of the hyperbasis binary: output formats, exit codes
//! and byte-level determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperbasis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn eval_scp_is_real_and_three_columns() {
    let line = stdout(&[
        "eval", "--system", "scp", "--rho", "1", "--A", "1", "--c1", "0.6", "--c2", "1.1",
    ]);
    let cols: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(cols.len(), 3);
    let re: f64 = cols[0].parse().unwrap();
    let im: f64 = cols[1].parse().unwrap();
    let err: f64 = cols[2].parse().unwrap();
    assert!((re - 0.108_749_226_043_497_5).abs() < 1e-12);
    assert_eq!(im, 0.0);
    assert!(err >= 0.0 && err < 1e-8);
}

#[test]
fn eval_is_byte_deterministic() {
    let args = [
        "eval", "--system", "ep", "--rho", "1.3", "--mu", "0.8", "--parity", "plus", "--c1",
        "0.7", "--c2", "0.4",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn eval_odd_ep_vanishes_on_axis() {
    let line = stdout(&[
        "eval", "--system", "ep", "--rho", "1", "--mu", "1", "--parity", "minus", "--c1", "0",
        "--c2", "0.3",
    ]);
    let cols: Vec<f64> = line.split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert_eq!(cols[0], 0.0);
    assert_eq!(cols[1], 0.0);
}

#[test]
fn eval_domain_error_exits_2_and_names_the_bound() {
    let out = run(&[
        "eval", "--system", "scp", "--rho", "1", "--A", "1", "--c1", "-0.6", "--c2", "1.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("positive"), "{msg}");
}

#[test]
fn grid_header_and_row_count() {
    let csv = stdout(&[
        "grid", "--system", "ho", "--rho", "1", "--s", "0.5", "--c1-min", "0", "--c1-max", "1",
        "--c1-count", "3", "--c2-min", "0.5", "--c2-max", "1.5", "--c2-count", "2",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "coord1,coord2,re,im");
    assert_eq!(lines.len(), 1 + 3 * 2);
    // row-major: the first axis varies slowest
    let first_coord: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(first_coord.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn grid_values_match_eval_bitwise() {
    let csv = stdout(&[
        "grid", "--system", "ps", "--rho", "1.2", "--m", "2", "--c1-min", "0.5", "--c1-max",
        "0.9", "--c1-count", "2", "--c2-min", "0.1", "--c2-max", "0.2", "--c2-count", "2",
    ]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let line = stdout(&[
        "eval", "--system", "ps", "--rho", "1.2", "--m", "2", "--c1", "0.5", "--c2", "0.1",
    ]);
    let cols: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(row[2], cols[0]);
    assert_eq!(row[3], cols[1]);
}

#[test]
fn grid_presets_complete() {
    for preset in ["fig1", "fig2", "fig3", "fig4", "fig5"] {
        let csv = stdout(&["grid", "--preset", preset, "--c1-count", "5", "--c2-count", "4"]);
        assert_eq!(csv.lines().count(), 21, "{preset}");
        for line in csv.lines().skip(1) {
            for field in line.split(',') {
                let v: f64 = field.parse().unwrap();
                assert!(v.is_finite(), "{preset}: {line}");
            }
        }
    }
}

#[test]
fn coeff_prints_smooth_value() {
    let line = stdout(&[
        "coeff", "--pair", "ep-ps", "--rho", "1", "--source", "1.2", "--target", "2",
        "--parity", "plus",
    ]);
    let cols: Vec<f64> = line.split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert_eq!(cols.len(), 2);
    assert!(cols[0].abs() > 0.01);
    assert!(cols[1].abs() < 1e-10);
}

#[test]
fn coeff_delta_terms_listed() {
    // the EP over EQ coefficient carries delta contributions at nu = +-mu
    let text = stdout(&[
        "coeff", "--pair", "ep-eq", "--rho", "1", "--source", "1.3", "--target", "0.4",
        "--parity", "plus",
    ]);
    assert!(text.lines().count() >= 2, "{text}");
    assert!(text.lines().skip(1).all(|l| l.starts_with("delta ")), "{text}");
}

#[test]
fn contract_reports_small_deviation() {
    let text = stdout(&[
        "contract", "--family", "scp-cartesian", "--k1", "0.3", "--k2", "0.8", "--R", "300",
        "--c1", "0.5", "--c2", "0.2",
    ]);
    let dev: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("deviation "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(dev < 0.05, "{text}");
}

#[test]
fn verify_suite_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "specfun-consistency", "--cases", "15", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("\"suite\""));
    assert!(text.lines().skip(1).all(|l| l.contains("\"pass\":true")));
}

#[test]
fn verify_only_filters_reports() {
    let text = stdout(&[
        "verify", "--suite", "specfun-consistency", "--cases", "5", "--only",
        "gamma-duplication",
    ]);
    let reports: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].contains("\"id\":\"gamma-duplication\""));
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = std::env::temp_dir().join("hyperbasis-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.cfg");
    std::fs::write(&path, "r = 2.0\nbogus = 1\n").unwrap();
    let out = run(&[
        "--config", path.to_str().unwrap(), "eval", "--system", "scp", "--rho", "1", "--A",
        "1", "--c1", "0.6", "--c2", "1.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn config_radius_matches_flag() {
    let dir = std::env::temp_dir().join("hyperbasis-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r2.cfg");
    std::fs::write(&path, "# project defaults\nr = 2.0\n").unwrap();
    let from_cfg = stdout(&[
        "--config", path.to_str().unwrap(), "eval", "--system", "scp", "--rho", "1", "--A",
        "1", "--c1", "0.6", "--c2", "1.1",
    ]);
    let from_flag = stdout(&[
        "eval", "--system", "scp", "--rho", "1", "--A", "1", "--R", "2", "--c1", "0.6",
        "--c2", "1.1",
    ]);
    assert_eq!(from_cfg, from_flag);
}
