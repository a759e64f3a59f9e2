use std::path::Path;

use serde_json::Value;
use wavefactor_cli::{run_command, EXIT_INVALID, EXIT_NOT_SEPARATED, EXIT_OK};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wavefactor").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn factor_emits_json_primes() {
    let (code, out, _) = run(&["factor", "35", "--sum", "gauss"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["primes"], serde_json::json!([5, 7]));
    assert_eq!(v["n"], 35);
    assert_eq!(v["kind"], "gauss");
}

#[test]
fn factor_csv_lists_multiplicities() {
    let (code, out, _) = run(&["factor", "360", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "prime,multiplicity\n2,3\n3,2\n5,1\n");
}

#[test]
fn factor_rejects_small_n() {
    let (code, out, err) = run(&["factor", "1", "--sum", "gauss"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.is_empty());
    assert!(err.contains("N must be ≥ 2"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn scan_reports_factor_and_ghost() {
    let (code, out, _) = run(&["scan", "21", "--sum", "gauss", "--terms", "4", "--threshold", "0.70", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("l,magnitude,verdict,complement,kind,M,threshold"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!((rows[1][0], rows[1][2], rows[1][3]), ("3", "Factor", "7"));
    assert_eq!((rows[2][0], rows[2][2]), ("4", "Ghost"));
    assert_eq!(rows[0][2], "NonFactor");
}

#[test]
fn scan_of_35_plots_four_stems() {
    let (code, out, _) = run(&["scan", "35", "--format", "plot-svg"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches(r#"class="stem""#).count(), 4);
    assert_eq!(out.matches(r#"class="threshold""#).count(), 1);
}

#[test]
fn two_row_scan_is_three_csv_lines() {
    let (code, out, _) = run(&["scan", "35", "--range", "4:5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
    assert!(!out.contains('\r'));
}

#[test]
fn json_round_trips_numbers() {
    let (_, csv, _) = run(&["scan", "9991", "--sum", "kummer", "--terms", "12", "--format", "csv"]);
    let (_, json, _) = run(&["scan", "9991", "--sum", "kummer", "--terms", "12", "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_str(&json).unwrap();
    for (row, line) in rows.iter().zip(csv.lines().skip(1)) {
        let csv_mag: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(row["magnitude"].as_f64().unwrap().to_bits(), csv_mag.to_bits());
    }
    assert_eq!(rows.len(), 98);
}

#[test]
fn sweep_defaults_and_empty_lists() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "pulse_count = 4\nunit_delay = \"1/3\"\noptical_frequency = 15\nexponent = 2\n");
    let (code, out, _) = run(&["sweep", &cfg, "--setup", "pulses", "--format", "json"]);
    // isqrt(15) = 3, so trials are 2 and 3
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Vec<Value>>(&out).unwrap().len(), 2);
    let list = write(dir.path(), "empty.txt", "# nothing\n");
    let (code, _, err) = run(&["compare", &list]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("no numbers"));
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["scan", "35", "--bogus"][..],
        &["scan", "35", "--terms", "0"],
        &["scan", "35", "--threshold", "1.5"],
        &["scan", "35", "--range", "2:40"],
        &["scan", "35", "--sum", "cubic"],
        &["factor", "35", "--parallel", "zero"],
        &["simulate", "--setup", "mzi", "--config", "/nonexistent.toml"],
        &["factor", "35", "--format", "plot-svg"],
        &["factor", "35", "--out", "/nonexistent/dir/out.json"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_INVALID, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("--threshold"));
}

#[test]
fn simulate_reports_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "f.toml", "path_count = 8\npath_length = 1\nverdet_scale = 21\nbase_field = \"1/7\"\nexponent = 2\n");
    let (code, out, _) = run(&["simulate", "--setup", "faraday", "--config", &cfg, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows[0]["effective_number"], 21.0);
    assert_eq!(rows[0]["effective_trial"], 7.0);
    assert_eq!(rows[0]["normalized_magnitude"], 1.0);
    assert_eq!(rows[0]["kind"], "gauss");
}

#[test]
fn sweep_with_trials_judges_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "mzi.toml",
        "arm_count = 8\narm_length = 1\nwavelength = 1e-6\nindex_scale = \"35/1e6\"\nexponent = 2\n",
    );
    let (code, out, err) = run(&["sweep", &cfg, "--setup", "mzi", "--trials", "2,5,7"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let verdicts: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(verdicts, ["NonFactor", "Factor", "Factor"]);
    assert!(out.lines().nth(1).unwrap().ends_with(",mzi"));
}

#[test]
fn compare_reports_medians() {
    let dir = tempfile::tempdir().unwrap();
    let list = write(dir.path(), "n.txt", "10403, 10609\n");
    let (code, _, err) = run(&["compare", &list]);
    // 10403 = 101 * 103 keeps the cubic-residue ghost at l = 9
    assert_eq!(code, EXIT_NOT_SEPARATED, "{err}");
    let list = write(dir.path(), "m.txt", "10609 # 103^2\n11009\n");
    let (code, out, err) = run(&["compare", &list, "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["kind"], "fourier");
    assert_eq!(rows[2]["count"], 2);
}

#[test]
fn output_file_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let (code, out, _) = run(&["scan", "35", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 5);
}

#[test]
fn parallelism_does_not_change_output() {
    let base = run(&["scan", "999999", "--terms", "32", "--parallel", "1"]);
    for p in ["2", "8", "auto"] {
        assert_eq!(run(&["scan", "999999", "--terms", "32", "--parallel", p]), base);
    }
    let again = run(&["scan", "999999", "--terms", "32", "--parallel", "1"]);
    assert_eq!(again, base);
}
