use std::process::Command;

fn quatherm(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quatherm")).args(args).env_remove("QUATHERM_BUDGET").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn density_json_has_count_normalized_stable() {
    let (code, out) = quatherm(&["density", "--p", "3", "--ell", "2", "--alpha", "0", "--beta", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[1]["data"]["normalized"], "4/3");
    assert_eq!(v[1]["data"]["stable"], true);
    assert_eq!(v[0]["data"]["stable"], false);
}

#[test]
fn psi_of_minus_one_pair() {
    let (code, out) = quatherm(&["spherical", "--n", "2", "--alpha", "-1,-1", "--what", "psi", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "PASS psi(-1,-1) = (q - 1)");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(quatherm(&["density", "--p", "3"]).0, 2);
    assert_eq!(quatherm(&["density", "--p", "9", "--ell", "1", "--alpha", "0"]).0, 2);
    assert_eq!(quatherm(&["spherical", "--alpha", "1,0"]).0, 2);
}

#[test]
fn budget_exhaustion_is_a_skip() {
    let (code, out) = quatherm(&["density", "--p", "3", "--ell", "1", "--alpha", "0,0", "--budget", "10"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["status"], "skipped");
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["density", "--p", "3", "--ell", "1", "--alpha", "0,0"];
    let one = quatherm(&[&args[..], &["--threads", "1"]].concat());
    let four = quatherm(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    assert!(one.1.contains("\"32/27\""));
}
