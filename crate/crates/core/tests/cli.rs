use std::process::Command;

use serde_json::Value;
use stardeform::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stardeform").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad json ({e}): {out}\n{err}"));
    (code, v)
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn verify_reports_schema_and_string_residuals() {
    let (code, v) = json(&["verify", "core", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "core");
    assert_eq!(v["passed"], true);
    for check in v["checks"].as_array().unwrap() {
        let r = check["residual"].as_str().expect("residual is a string");
        assert!(r.parse::<f64>().is_ok());
        assert_eq!(check["status"], "pass");
    }
}

#[test]
fn verify_all_passes_with_known_deviations_listed() {
    let (code, v) = json(&["verify", "all"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let deviations: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "known_deviation").map(|c| c["name"].as_str().unwrap()).collect();
    assert!(deviations.contains(&"central_off_diagonal"));
    assert!(deviations.contains(&"cubic_exponential_ratio_at_15"));
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn verify_csv_has_header() {
    let (code, out, _) = call(&["verify", "residue", "--format", "csv", "--tau", "1,1"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["suite", "name", "identity", "residual", "tol", "status"]);
    assert!(rows.len() > 5);
}

#[test]
fn tolerance_too_tight_is_an_identity_failure() {
    let (code, v) = json(&["verify", "starexp", "--tol", "1e-30"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["verify", "theta", "--tau", "-1,0"]).0, 2);
    assert_eq!(call(&["verify", "nonsense"]).0, 2);
    assert_eq!(call(&["eval", "star", "--f", "w^"]).0, 2);
    assert_eq!(call(&["table", "hermite", "3", "--grid", "0,1,1"]).0, 2);
    assert_eq!(call(&["verify", "core", "--tol", "-1"]).0, 2);
    assert_eq!(call(&["numbers"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn eval_star_is_exact() {
    let (code, v) = json(&["eval", "star", "--f", "w^2", "--g", "w^2", "--tau", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "w^4 + 2w^2 + 1/2");
    assert_eq!(v["decimal"], "w^4 + 2w^2 + 0.5");
    let (_, v) = json(&["eval", "intertwine", "--f", "w^2", "--tau", "0,0", "--tau-to", "2,0"]);
    assert_eq!(v["result"], "w^2 + 1");
    let (_, v) = json(&["eval", "power", "--f", "w", "--n", "3", "--tau", "2,0"]);
    assert_eq!(v["result"], "w^3 + 3w");
}

#[test]
fn numbers_are_exact_fractions() {
    let (code, out, _) = call(&["numbers", "--euler", "5"]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&out);
    let values: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(values, ["1", "-1", "5", "-61", "1385", "-50521"]);
    let (_, out, _) = call(&["numbers", "--bernoulli", "5"]);
    let (_, rows) = csv_rows(&out);
    let values: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(values, ["1", "1/6", "-1/30", "1/42", "-1/30", "5/66"]);
}

#[test]
fn reexpansion_needs_the_half_plane_condition() {
    let (code, out, _) = call(&["numbers", "--reexpand", "2", "--tau", "1,0", "--tau-prime", "0.5,0"]);
    assert_eq!(code, 0);
    assert_eq!(csv_rows(&out).1.len(), 3);
    assert_eq!(call(&["numbers", "--reexpand", "2", "--tau", "1,0", "--tau-prime", "1.5,0"]).0, 2);
}

#[test]
fn tables() {
    let (code, out, _) = call(&["table", "hermite", "4", "--tau", "-1,0"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["n", "polynomial", "decimal"]);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2][1], "2w^2 - 1");
    let (_, out, _) = call(&["table", "bessel", "2", "--grid", "-1,1,5"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header.len(), 1 + 2 * 5);
    assert_eq!(header[1..3], ["j-2_re".to_string(), "j-2_im".to_string()]);
    assert_eq!(rows.len(), 5);
    let (_, out, _) = call(&["table", "euler", "6"]);
    assert_eq!(csv_rows(&out).1.last().unwrap()[1], "-61");
}

#[test]
fn theta_grid_has_re_im_columns() {
    let (code, out, _) = call(&["theta", "--tau", "1,0", "--grid", "0,1,3"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header.len(), 9);
    assert_eq!(header[5], "theta3_re");
    let theta3_at_zero: f64 = rows[0][5].parse().unwrap();
    let direct: f64 = 1.0 + 2.0 * (1..30).map(|n| (-(n * n) as f64).exp()).sum::<f64>();
    assert!((theta3_at_zero - direct).abs() < 1e-14);
}

#[test]
fn residue_command_compares_contour_and_closed_form() {
    let (code, v) = json(&["residue", "--k", "0", "--nu", "0,0", "--tau", "1,1", "--w", "0.5,0"]);
    assert_eq!(code, 0);
    let err: f64 = v["abs_err"].as_str().unwrap().parse().unwrap();
    assert!(err < 1e-10);
    assert_eq!(v["index"], -1);
}

#[test]
fn dist_delta_is_the_gaussian() {
    let (code, out, _) = call(&["dist", "delta", "--a", "0,0", "--tau", "2,0", "--grid", "-1,1,3"]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&out);
    for r in rows {
        let w: f64 = r[0].parse().unwrap();
        let v: f64 = r[1].parse().unwrap();
        let want = (std::f64::consts::PI * 2.0).powf(-0.5) * (-w * w / 2.0).exp();
        assert!((v - want).abs() < 1e-15);
    }
}

#[test]
fn vertex_checks_exit_codes() {
    assert_eq!(json(&["vertex", "--check", "witt", "--K", "4"]).0, 0);
    assert_eq!(json(&["vertex", "--check", "kcentral", "--K", "4"]).0, 0);
    let (code, v) = json(&["vertex", "--check", "central", "--K", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["details"]["diagonal_ok"], true);
}

#[test]
fn binary_honours_precision_variable() {
    let bin = env!("CARGO_BIN_EXE_stardeform");
    let out = Command::new(bin).args(["verify", "core"]).env("STARDEFORM_PRECISION", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["residual"], "0.000e0");
    let out = Command::new(bin).args(["eval", "star", "--f", "1/3*w", "--g", "1"]).env("STARDEFORM_PRECISION", "30").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decimal"], "0.333333333333333333333333333333w");
    let bad = Command::new(bin).args(["numbers", "--euler", "2"]).env("STARDEFORM_PRECISION", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
