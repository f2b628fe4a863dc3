use std::process::{Command, Output};

fn lhp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passes() {
    let o = lhp(&["verify", "--id", "LHT", "--n", "4", "--caps", "q=25"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS LHT"));
}

#[test]
fn verify_json_is_a_report() {
    let o = lhp(&["--format", "json", "verify", "--id", "BOX", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["id"], "BOX");
    assert_eq!(v["status"], "PASS");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lhp(&["verify", "--id", "NO_SUCH_ID"]).status.code(), Some(2));
    assert_eq!(lhp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lhp(&["enumerate", "--s", "1,x"]).status.code(), Some(2));
    assert_eq!(lhp(&["bijection", "--name", "bme", "--input", "5,4,3"]).status.code(), Some(2));
}

#[test]
fn eulerian_row() {
    let o = lhp(&["eulerian", "--s", "1,2,3,4,5,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + 57*x + 302*x^2 + 302*x^3 + 57*x^4 + x^5");
}

#[test]
fn bme_compact_text() {
    let o = lhp(&["bijection", "--name", "bme", "--input", "9,12,4,5,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5^4 7^1 2^1 1^1");
}

#[test]
fn theta_on_two() {
    let o = lhp(&["bijection", "--name", "theta", "--params", "l=2", "--input", "3,1,1"]);
    assert_eq!(stdout(&o).trim(), "[4, 1]");
}

#[test]
fn perm_statistics() {
    let out = stdout(&lhp(&["stats", "--object", "perm", "--value", "3,1,2"]));
    for line in ["des: 1", "inv: 2", "maj: 1"] {
        assert!(out.lines().any(|l| l == line), "{line} missing from {out}");
    }
}

#[test]
fn filtered_suite() {
    let o = lhp(&["suite", "--filter", "GOR*"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
}
