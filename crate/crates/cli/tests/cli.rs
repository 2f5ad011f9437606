use std::process::{Command, Output};

use congruence_cli::format::from_csv;
use congruence_cli::report::{
    CountReport, CountRow, DiagonalReport, EstimateReport, EstimateRow, ScanReport, SeriesReport,
    SuiteSummary, TotalRow, VerifyReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congruence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn value_of(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

fn json_round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let text = stdout_ok(args);
    let parsed: T = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text, "{args:?}");
    parsed
}

fn csv_round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> Vec<T> {
    let text = stdout_ok(args);
    let rows: Vec<T> = from_csv(&text).unwrap();
    assert_eq!(congruence_cli::format::to_csv(&rows).unwrap(), text, "{args:?}");
    rows
}

#[test]
fn count_rows() {
    let text = stdout_ok(&["count", "--m", "2", "--n", "4"]);
    assert!(text.lines().any(|l| l == "c(4,2,1) = 3"), "{text}");
    let rows = csv_round_trip::<CountRow>(&["count", "--m", "1", "--n", "5", "--d", "2", "--format", "csv"]);
    assert!(rows.contains(&CountRow { n: 5, d: 2, a: 1, count: "4".into() }));
}

#[test]
fn alternating_and_carlitz_totals() {
    assert_eq!(stdout_ok(&["count", "--m", "2", "--n", "3", "--alternating"]), "a(3) = 3\n");
    let text = stdout_ok(&["count", "--n-max", "6", "--alternating"]);
    let values: Vec<&str> = text.lines().map(|l| l.split(" = ").nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "1", "1", "3", "2", "6", "6"]);
    // 1, 1, 1, 3, 4, 7, 14 Carlitz compositions of 0..=6.
    let report: CountReport<TotalRow> = json_round_trip(&["count", "--n-max", "6", "--carlitz", "--format", "json"]);
    let counts: Vec<&str> = report.rows.iter().map(|r| r.count.as_str()).collect();
    assert_eq!(counts, ["1", "1", "1", "3", "4", "7", "14"]);
}

#[test]
fn sources_agree_past_the_enumeration_budget_only_for_gf() {
    let gf = stdout_ok(&["count", "--m", "3", "--r", "1", "--n", "9", "--source", "gf"]);
    let oracle = stdout_ok(&["count", "--m", "3", "--r", "1", "--n", "9", "--source", "oracle"]);
    assert_eq!(gf, oracle);
    stdout_ok(&["count", "--n", "40", "--d", "5", "--source", "gf"]);
    assert_eq!(run(&["count", "--n", "40"]).status.code(), Some(3));
}

#[test]
fn series_json_round_trips() {
    let report: SeriesReport = json_round_trip(&["series", "--m", "2", "--N", "6", "--format", "json"]);
    assert_eq!(report.truncation_order, 6);
    let total: u64 = report.entries.iter().filter(|e| e.n == 6).map(|e| e.coefficient.parse::<u64>().unwrap()).sum();
    assert_eq!(total, 32);
}

#[test]
fn asymptotics_reports() {
    let text = stdout_ok(&["asympt", "--m", "2"]);
    assert!((value_of(&text, "rho") - 0.6710436067037893).abs() < 1e-12);
    let report: EstimateReport = json_round_trip(&["asympt", "--m", "2", "--compare", "20", "--format", "json"]);
    let cmp = report.comparison.unwrap();
    assert_eq!(cmp.exact, "1874");
    assert!(cmp.relative_error < 0.002);
    let rows: Vec<EstimateRow> = csv_round_trip(&["asympt", "--m", "3", "--compare", "25", "--format", "csv"]);
    assert!(rows[0].relative_error.unwrap() < 0.01);
    let carlitz = stdout_ok(&["asympt", "--carlitz"]);
    assert!((value_of(&carlitz, "growth_rate") - 1.7502).abs() < 1e-3);
}

#[test]
fn scan_and_diagonal() {
    let scan: ScanReport = json_round_trip(&["scan", "--format", "json"]);
    assert!(scan.sample_min > 0.51);
    assert!(scan.certified_lower_bound >= 0.43);
    assert!(scan.certified_lower_bound > scan.tail_bound);
    let rows: Vec<DiagonalReport> = csv_round_trip(&["diagonal", "--t", "8", "--format", "csv"]);
    assert_eq!(rows[0].exact, "54865800");
    assert_eq!(run(&["diagonal", "--t", "13"]).status.code(), Some(3));
}

#[test]
fn verify_bijection_suite() {
    let text = stdout_ok(&["verify", "--suite", "bijection-theorem2", "--n-max", "12"]);
    assert!(text.starts_with("PASS bijection-theorem2"));
    assert!(text.contains("n=12 d=6 a=2:"), "{text}");
    let out = run(&["verify", "--suite", "bijection-theorem2", "--n-max", "8", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL bijection-theorem2"));
}

#[test]
fn verify_all_json_and_csv() {
    let report: VerifyReport = json_round_trip(&["verify", "--format", "json"]);
    assert!(report.passed);
    assert_eq!(report.suites.len(), 9);
    let rows: Vec<SuiteSummary> = csv_round_trip(&["verify", "--n-max", "8", "--format", "csv"]);
    assert!(rows.iter().all(|r| r.passed && r.counterexample.is_none()));
    let failing = run(&["verify", "--n-max", "8", "--inject-fault", "--format", "json"]);
    assert_eq!(failing.status.code(), Some(1));
    let report: VerifyReport = serde_json::from_slice(&failing.stdout).unwrap();
    assert!(report.suites.iter().all(|s| !s.summary.passed && s.summary.counterexample.is_some()));
}

#[test]
fn trace_write_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.tsv");
    let path_str = path.to_str().unwrap();
    stdout_ok(&["verify", "--suite", "bijection-prop2", "--n-max", "9", "--trace", path_str]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# theorem2 n=4 d=3 a=0\n"));
    assert!(text.contains("# prop2 n=9\n"));
    assert!(stdout_ok(&["verify", "--check-trace", path_str]).starts_with("trace ok"));

    let tampered = text.replacen("\tt-bump\t", "\ts-grow\t", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, tampered).unwrap();
    let out = run(&["verify", "--check-trace", path_str]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line "));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count"][..],
        &["count", "--n", "4", "--alternating", "--d", "2"],
        &["count", "--m", "0", "--n", "4"],
        &["verify", "--suite", "nonexistent"],
        &["scan", "--c", "1.5"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["count", "--n-max", "7", "--format", "json"][..],
        &["asympt", "--m", "4", "--compare", "18"],
        &["scan", "--k", "9", "--N", "500", "--format", "csv"],
        &["verify", "--n-max", "7"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
