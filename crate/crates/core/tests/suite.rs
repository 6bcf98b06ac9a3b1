use mzvkit_core::suite::{run_check, run_suite, IdentityCheckResult, Params, Quantity, Status, SuiteReport};
use mzvkit_core::{Error, PrecisionContext};

fn strip_time(r: &SuiteReport) -> Vec<IdentityCheckResult> {
    r.results.iter().cloned().map(|mut x| {
        x.wall_ms = 0;
        x
    }).collect()
}

fn err_of(q: &Quantity) -> f64 {
    match q {
        Quantity::Real { err, .. } => *err,
        _ => 0.0,
    }
}

#[test]
fn reports_are_deterministic() {
    let c = PrecisionContext::default();
    let a = run_suite(Some("eq07,eq13,thmA_random,eq16"), &c).unwrap();
    let b = run_suite(Some("eq07,eq13,thmA_random,eq16"), &c).unwrap();
    assert_eq!(strip_time(&a), strip_time(&b));
}

#[test]
fn json_round_trip_is_bit_identical() {
    let c = PrecisionContext::default();
    let r = run_suite(Some("eq1*,bernoulli_id"), &c).unwrap();
    let s = r.to_json();
    let back = SuiteReport::from_json(&s).unwrap();
    assert_eq!(back.to_json(), s);
}

#[test]
fn tolerances_dominate_error_bounds() {
    let c = PrecisionContext::default();
    let r = run_suite(None, &c).unwrap();
    assert_eq!(r.failed(), 0, "{}", r.summary());
    for x in &r.results {
        if x.status == Status::Pass {
            assert!(x.tolerance >= 10.0 * (err_of(&x.lhs) + err_of(&x.rhs)), "{x}");
        }
    }
    let reported: Vec<_> = r.results.iter().filter(|x| x.status == Status::Reported).collect();
    assert!(!reported.is_empty());
    assert!(reported.iter().all(|x| x.check_id == "eq16"));
}

#[test]
fn out_of_grid_parameters_are_rejected() {
    let c = PrecisionContext::default();
    let p = Params::new().with("s", 99i64);
    assert!(matches!(run_check("eq19", &p, &c), Err(Error::OutOfRange(_))));
    assert!(matches!(run_check("eq99", &Params::new(), &c), Err(Error::UnknownCheck(_))));
}
