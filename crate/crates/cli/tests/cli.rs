//! CLI behavior: exit codes (0 pass, 1 verification failure, 2 config
//! error, 3 factoring-budget exhaustion), the strict/lenient verify
//! split, default starter selection, and the JSON output shape.

use std::process::Command;

fn tower(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tower"))
        .args(args)
        .output()
        .expect("tower binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn config_error_q4_cubic_is_exit_2() {
    let (_, stderr, code) = tower(&["table", "--p", "2", "--m", "2", "--kind", "cubic", "--n-max", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("q = 4"), "{stderr}");
}

#[test]
fn config_error_bad_congruence_is_exit_2() {
    // q = 7 = 3 (mod 4) cannot seed the quadratic tower
    let (_, stderr, code) = tower(&["table", "--p", "7", "--kind", "quadratic", "--n-max", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("congruent"), "{stderr}");
}

#[test]
fn voloch_domain_errors_are_exit_2() {
    let (_, stderr, code) = tower(&["voloch", "--epsilon", "1.5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("outside"), "{stderr}");

    let (_, stderr, code) = tower(&["voloch", "--bypass", "false"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bypass"), "{stderr}");
}

#[test]
fn budget_exhaustion_is_exit_3_unless_allowed() {
    // q - 1 has a cofactor far beyond a 4-iteration rho budget
    let base = [
        "table", "--p", "999999999989", "--kind", "quadratic", "--n-max", "1",
        "--factor-budget", "4",
    ];
    let (_, stderr, code) = tower(&base);
    assert_eq!(code, 3);
    assert!(stderr.contains("budget"), "{stderr}");

    let mut allowed = base.to_vec();
    allowed.push("--allow-inexact");
    let (stdout, _, code) = tower(&allowed);
    assert_eq!(code, 0);
    assert!(stdout.lines().count() == 2, "{stdout}");
}

#[test]
fn verify_equality_row_warns_lenient_fails_strict() {
    let base = ["verify", "--p", "5", "--kind", "quadratic", "--starter", "2", "--n-max", "1"];
    let (stdout, _, code) = tower(&base);
    assert_eq!(code, 0);
    assert!(stdout.contains("WARN"), "{stdout}");
    assert!(stdout.contains("verification passed"), "{stdout}");

    let mut strict = base.to_vec();
    strict.push("--strict");
    let (stdout, _, code) = tower(&strict);
    assert_eq!(code, 1);
    assert!(stdout.contains("verification FAILED"), "{stdout}");
}

#[test]
fn verify_clean_config_passes() {
    let (stdout, _, code) = tower(&[
        "verify", "--p", "3", "--m", "2", "--modulus", "1,0,1", "--kind", "quadratic",
        "--starter", "2,1", "--n-max", "2", "--strict",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verification passed"), "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");
}

#[test]
fn default_starter_is_selected() {
    let (stdout, _, code) = tower(&["table", "--p", "13", "--kind", "quadratic", "--n-max", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().nth(1), Some("1,7.39,7.39,5.80,4.00"));
}

#[test]
fn json_table_shape() {
    let (stdout, _, code) = tower(&[
        "table", "--p", "5", "--kind", "quadratic", "--starter", "2", "--n-max", "2",
        "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    let rows = v.as_array().expect("array of rows");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["marked"]["value"], "8");
    assert_eq!(rows[0]["marked"]["log2"], "3.00");
    assert_eq!(rows[0]["exceptional"], true);
    assert_eq!(rows[1]["gen"]["value"], "624");
    assert_eq!(rows[1]["gen"]["exact"], true);
}

#[test]
fn voloch_json_shape() {
    let (stdout, _, code) = tower(&["voloch", "--format", "json", "--n-max", "12"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["crossover"], 11);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
}
