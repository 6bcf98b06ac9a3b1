use mzvkit_core::suite::SuiteReport;
use std::fs;
use std::process::{Command, Output};

fn mzvkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzvkit"))
        .args(args)
        .env_remove("MZVKIT_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_value_and_bound() {
    let o = mzvkit(&["eval", "z(2)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("1.64493406684822643647241516664602518921"), "{out}");
    assert!(out.contains("terms") && out.contains("method"));
    // (31/16) ζ(6)
    assert!(stdout(&mzvkit(&["eval", "zs({2}^3)"])).starts_with("1.971102182594870208196878488969908522"));
    let o = mzvkit(&["eval", "li_half(1)"]);
    assert!(stdout(&o).starts_with("6.93147180559945309417232121458176568075"));
}

#[test]
fn exit_codes() {
    assert_eq!(mzvkit(&["eval", "z(2"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["eval", "zz(2)"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["eval", "z(2,1)"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["--precision", "10", "eval", "z(2)"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["--method", "direct", "--max-terms", "10", "eval", "z(2,3)"]).status.code(), Some(3));
    assert_eq!(mzvkit(&["verify", "no_such_check"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["constants", "bernoulli", "--upto", "501"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["constants", "gamma-coeffs", "--upto", "13"]).status.code(), Some(2));
    assert_eq!(mzvkit(&["verify", "eq16"]).status.code(), Some(0));
}

#[test]
fn verify_writes_round_tripping_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = mzvkit(&["verify", "eq19,bernoulli_odd", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().ends_with("0 fail / 0 reported"));
    let text = fs::read_to_string(&path).unwrap();
    let report = SuiteReport::from_json(&text).unwrap();
    assert_eq!(report.count(mzvkit_core::suite::Status::Pass), 6 + 29);
    assert_eq!(report.to_json() + "\n", text);
}

#[test]
fn higher_precision_never_widens_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut last = f64::INFINITY;
    for digits in ["25", "40", "60"] {
        let path = dir.path().join(format!("{digits}.json"));
        let o = mzvkit(&["--precision", digits, "eval", "za(1,2)", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let err = v["err"].as_f64().unwrap();
        assert!(err <= last, "{digits} digits: {err} > {last}");
        last = err;
    }
}

#[test]
fn cache_hits_and_invalidates_on_more_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let c = cache.to_str().unwrap();
    let first = stdout(&mzvkit(&["--cache", c, "eval", "zs( 2 , 3 )"]));
    assert!(!first.contains("cached"));
    let second = stdout(&mzvkit(&["--cache", c, "eval", "zs(2,3)"]));
    assert!(second.contains("cached"));
    assert_eq!(first.lines().next(), second.lines().next());
    let more = stdout(&mzvkit(&["--cache", c, "--precision", "50", "eval", "zs(2,3)"]));
    assert!(!more.contains("cached"));
    let stored: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(stored.as_object().unwrap().len(), 1);
    assert_eq!(stored.as_object().unwrap().values().next().unwrap()["digits"], 50);
}

#[test]
fn constants_listing() {
    let out = stdout(&mzvkit(&["constants", "bernoulli", "--upto", "4"]));
    assert_eq!(out, "B_0 = 1\nB_1 = -1/2\nB_2 = 1/6\nB_3 = 0\nB_4 = -1/30\n");
    let out = stdout(&mzvkit(&["constants", "gamma-coeffs", "--upto", "3"]));
    assert!(out.contains("c_2 = -z2") && out.contains("c_3 = 2*z3"), "{out}");
    let out = stdout(&mzvkit(&["constants", "zeta", "--upto", "3"]));
    assert!(out.contains("zeta(3) = 1.20205690315959428539973816151144999076"));
}
