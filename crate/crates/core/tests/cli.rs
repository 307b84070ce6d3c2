use std::process::{Command, Output};

use grs_hull::cli::Row;
use grs_hull::grs::validate_params;
use grs_hull::hull::HullComputation;
use grs_hull::quantum::record_from_hull;

fn grs_hull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grs-hull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn params_human_readable() {
    let o = grs_hull(&["params", "29", "28", "5", "30", "2", "29"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[[280,226,30;4]]_29"), "{s}");
    assert!(s.contains("L        8"));
}

#[test]
fn params_json_has_oracle() {
    let o = grs_hull(&[
        "params",
        "11",
        "5",
        "3",
        "4",
        "3",
        "11",
        "--format",
        "json",
        "--with-oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["record"]["c"], 6);
    assert_eq!(v["oracle_c"], 6);
    assert_eq!(v["hull"]["f_count"], 6);
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["params", "11", "5", "3", "4", "9", "3"][..],
        &["params", "12", "5", "3", "4", "3", "3"],
        &["params", "11", "5", "3", "4", "3", "46"],
        &["table", "--family", "q11", "--k-range", "40..50"],
        &["table", "--family", "q11", "--k-range", "9..3"],
        &["table", "11", "5", "3"],
        &["sweep", "--q", "10"],
        &["verify", "--q", "7", "--sigma", "5"],
        &["frobnicate"],
    ] {
        let o = grs_hull(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(grs_hull(&["--help"]).status.code(), Some(0));
    assert_eq!(grs_hull(&["--version"]).status.code(), Some(0));
    let help = stdout(&grs_hull(&["verify", "--help"]));
    assert!(!help.contains("inject"));
}

#[test]
fn verify_passes_and_detects_injected_fault() {
    let o = grs_hull(&["verify", "--q", "4,5,7,8,11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 mismatches\n"));

    let o = grs_hull(&["verify", "--q", "11", "--inject-l-offset", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("MISMATCH q=11")), "{s}");
    assert!(!s.ends_with(" 0 mismatches\n"));
}

#[test]
fn verify_reports_empty_and_skipped() {
    let o = grs_hull(&["verify", "--q", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("q=2: no admissible families"));
    assert!(s.contains("q=3: no admissible families"));

    let o = grs_hull(&["verify", "--q", "13", "--max-n", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds --max-n 20"));
}

#[test]
fn table_json_round_trip() {
    let o = grs_hull(&[
        "table",
        "--family",
        "q29",
        "--k-range",
        "120..=140",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Row> = serde_json::from_slice(&o.stdout).unwrap();
    let p = validate_params(29, 28, 5, 30, 2).unwrap();
    let expected: Vec<Row> = (120..=140)
        .map(|k| Row {
            lambda: 28,
            tau: 5,
            rho: 30,
            sigma: 2,
            k,
            record: record_from_hull(&HullComputation::new(&p, k)).unwrap(),
            oracle_c: None,
        })
        .collect();
    assert_eq!(rows, expected);
}

#[test]
fn table_output_is_byte_stable() {
    for family in ["q11", "q29", "q83"] {
        let a = grs_hull(&["table", "--family", family]);
        let b = grs_hull(&["table", "--family", family]);
        assert_eq!(a.status.code(), Some(0));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{family}");
    }
}

#[test]
fn table_with_oracle_column() {
    let o = grs_hull(&[
        "table",
        "--family",
        "q11",
        "--with-oracle",
        "--k-range",
        "1..45",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("k,n,K,d,c,exact,eaqmds,oracle_c"));
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let (c, oracle): (u64, u64) = (cells[4].parse().unwrap(), cells[7].parse().unwrap());
        if cells[5] == "true" {
            assert_eq!(c, oracle, "{line}");
        } else {
            assert!(oracle <= c, "{line}");
            assert_eq!(cells[6], "unknown");
        }
    }
}

#[test]
fn sweep_is_sorted_and_deterministic() {
    let args = [
        "sweep",
        "--q",
        "13,11",
        "--k-range",
        "1..20",
        "--with-oracle",
    ];
    let a = grs_hull(&args);
    let b = grs_hull(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    let keys: Vec<Vec<u64>> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(6).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(!keys.is_empty());
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(keys[0][0], 11);
}
