//! End-to-end checks of the command surface: exit codes, report formats and
//! golden values.

use std::process::{Command, Output};

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn verify_conjecture_emits_passing_json() {
    let out = hankel(&["verify", "conjecture", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "verify conjecture");
    assert_eq!(report["seed"], 0);
    let items = report["items"].as_array().unwrap();
    let sup = items
        .iter()
        .find(|i| i["name"] == "cuboid_sup")
        .expect("cuboid_sup item");
    assert_eq!(sup["paper"], "1/9");
    assert_eq!(sup["status"], "PASS");
    let upper: f64 = sup["computed"].as_str().unwrap().parse().unwrap();
    assert!(upper >= 1.0 / 9.0 - 1e-12 && upper <= 1.0 / 9.0 + 1e-6);
    assert!(items.iter().any(|i| i["name"] == "info_h3_polynomial"));
    assert!(items.iter().any(|i| i["name"] == "info_b00y"));
    assert!(items.iter().all(|i| i["status"] != "FAIL"));

    // Round trip: parse and re-serialize to the same value.
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn verify_faces_and_edges_pass() {
    for what in ["faces", "edges"] {
        let out = hankel(&["verify", what, "--tol", "1e-4"]);
        assert!(out.status.success(), "verify {what} failed");
    }
}

#[test]
fn nfold_reports_the_corollary_bounds() {
    let cases = [
        ("cardioid", "2", "1/24"),
        ("cardioid", "3", "1/9"),
        ("koebe", "2", "1/6"),
        ("koebe", "3", "4/9"),
    ];
    for (phi, fold, expected) in cases {
        let out = hankel(&["nfold", "--phi", phi, "--fold", fold]);
        assert!(out.status.success());
        assert!(
            stdout(&out).contains(expected),
            "{phi} fold {fold}: expected {expected} in\n{}",
            stdout(&out)
        );
    }
}

#[test]
fn nfold_accepts_explicit_generator_coefficients() {
    let out = hankel(&["nfold", "--b1", "1", "--b2", "1", "--fold", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.11111111111e-1"));
}

#[test]
fn coeffs_of_point_mass_match_the_shifted_bell_series() {
    let out = hankel(&["coeffs", "--measure", "0:1.0", "--upto", "5", "--format", "csv"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "name,paper,computed,tol,status");
    let rows: Vec<&str> = lines.collect();
    assert!(rows[0].starts_with("a2,,1.00000000000e0"));
    assert!(rows[1].starts_with("a3,,1.00000000000e0"));
    assert!(rows[2].starts_with("a4,,8.33333333333e-1"));
    assert!(rows[3].starts_with("a5,,6.25000000000e-1"));
}

#[test]
fn hankel_of_cube_root_measure_attains_one_ninth() {
    let third = 1.0 / 3.0;
    let measure = format!(
        "0:{third},{}:{third},{}:{third}",
        2.0 * std::f64::consts::FRAC_PI_3,
        4.0 * std::f64::consts::FRAC_PI_3
    );
    let out = hankel(&["hankel", "--measure", &measure, "--q", "3", "--n", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("modulus 1.111111111"));
}

#[test]
fn series_extremal_lists_exact_rationals() {
    let out = hankel(&["series", "--extremal", "--upto", "7", "--format", "csv"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.contains("a4,,1/3"));
    assert!(csv.contains("a7,,2/9"));
}

#[test]
fn search_reports_slack_within_bounds() {
    let out = hankel(&[
        "search",
        "--functional",
        "h3",
        "--budget",
        "3000",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("search_h3"));
}

#[test]
fn scan_mode_checks_bounds() {
    let out = hankel(&[
        "search",
        "--functional",
        "a6",
        "--budget",
        "2000",
        "--scan",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("scan_a6"));
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "conjecture", "--no-such-flag"],
        vec!["coeffs", "--measure", "0:0.4,1:0.4"], // weights sum to 0.8
        vec!["coeffs", "--measure", "nonsense"],
        vec!["search", "--functional", "h9", "--budget", "10"],
        vec!["nfold", "--phi", "lemniscate", "--fold", "2"],
        vec!["nfold", "--phi", "cardioid", "--fold", "4"],
        vec!["series"],
    ];
    for args in cases {
        let out = hankel(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?} gave {:?}",
            out.status.code()
        );
    }
}

#[test]
fn reports_can_be_written_to_files() {
    let dir = std::env::temp_dir().join("hankel-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = hankel(&[
        "nfold",
        "--phi",
        "koebe",
        "--fold",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(report["items"][0]["computed"], "1/6");
    std::fs::remove_file(&path).ok();
}
