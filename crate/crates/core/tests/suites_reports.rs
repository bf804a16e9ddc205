use witt_core::pi::PiVariant;
use witt_core::suites::{parse_v1, parse_v2, run_suite, RunConfig, SUITES};
use witt_core::Error;

fn json(suite: &str, cfg: &RunConfig) -> String {
    let mut r = run_suite(suite, cfg).unwrap();
    r.elapsed_ms = None;
    serde_json::to_string(&r).unwrap()
}

#[test]
fn reports_are_deterministic() {
    let mut cfg = RunConfig::new(1, 1);
    cfg.window = 4;
    cfg.rmax = 3;
    cfg.samples = 100;
    for suite in SUITES {
        assert_eq!(json(suite, &cfg), json(suite, &cfg), "{suite}");
    }
}

#[test]
fn every_suite_passes_on_small_dimensions() {
    let mut cfg = RunConfig::new(1, 1);
    cfg.window = 4;
    cfg.rmax = 3;
    cfg.samples = 100;
    for suite in SUITES {
        let r = run_suite(suite, &cfg).unwrap();
        assert!(r.passed, "{suite}: {:?}", r.counterexample);
        assert!(r.checked > 0 && r.failed == 0);
    }
}

#[test]
fn unknown_suite_is_an_error() {
    assert_eq!(
        run_suite("nope", &RunConfig::new(1, 1)).unwrap_err(),
        Error::UnknownSuite("nope".into())
    );
}

#[test]
fn size_caps_are_enforced() {
    assert!(matches!(
        run_suite("lemma-compute", &RunConfig::new(5, 0)),
        Err(Error::InvalidDims { m: 5, n: 0 })
    ));
    assert!(matches!(
        run_suite("jacobi", &RunConfig::new(0, 17)),
        Err(Error::InvalidDims { .. })
    ));
    assert!(matches!(
        run_suite("jacobi", &RunConfig::new(0, 0)),
        Err(Error::InvalidDims { .. })
    ));
}

#[test]
fn sign_mutation_gives_a_minimal_counterexample() {
    let mut cfg = RunConfig::new(1, 2);
    cfg.variant = PiVariant::DropSign;
    let r = run_suite("pi-hom", &cfg).unwrap();
    assert!(!r.passed && r.failed > 0);
    let c = r.counterexample.unwrap();
    assert_eq!(c.degree, 0);
    assert!(c.rerun.starts_with("fpm verify pi-hom"));
    assert!(c.rerun.contains("--mutate-pi"));
}

#[test]
fn module_arguments_are_validated() {
    assert!(parse_v2(2, Some("1")).is_err());
    assert!(parse_v2(2, Some("0,1")).is_err());
    assert!(parse_v2(2, Some("laurent:1/2,1/3@x")).is_err());
    assert_eq!(
        parse_v2(2, Some("laurent:1/2,1/3")).unwrap().dim(),
        parse_v2(2, Some("laurent:1/2,1/3@2")).unwrap().dim()
    );
    assert!(parse_v2(2, Some("laurent:1,1/3@2")).is_err());
    assert!(parse_v2(1, Some("x")).is_err());
    assert!(parse_v1(2, Some("0,1")).is_err());
    assert!(parse_v1(1, Some("1,2")).is_err());
    assert_eq!(parse_v1(2, Some("2,0")).unwrap().dim(), 3);
    assert_eq!(parse_v2(2, None).unwrap().dim(), 1);
}
