use hgx_core::suites::run::{run, Break, Suite, SuiteConfig};

#[test]
fn taft_suite_n2() {
    let r = run(&SuiteConfig::new(Suite::Taft)).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn taft_suite_breaks_with_witnesses() {
    let cfg = SuiteConfig { broken: Some(Break::AlphaOrder), ..SuiteConfig::new(Suite::Taft) };
    let r = run(&cfg).unwrap();
    assert!(!r.passed());
    assert!(r.failures().all(|e| e.witness.as_ref().is_some_and(|w| !w.residue.is_empty())));
}

#[test]
fn cocycle_suite_n2() {
    let r = run(&SuiteConfig::new(Suite::Cocycle)).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn invalid_configs_are_rejected() {
    let base = SuiteConfig::new(Suite::Taft);
    for cfg in [
        SuiteConfig { n: 1, ..base.clone() },
        SuiteConfig { n: 4, k: 2, ..base.clone() },
        SuiteConfig { m: 2, ..base.clone() },
        SuiteConfig { d: 0, ..base.clone() },
    ] {
        assert!(run(&cfg).is_err(), "{cfg:?}");
    }
}

// About three minutes.
#[test]
#[ignore]
fn taft_suite_n4() {
    let cfg = SuiteConfig { n: 4, k: 3, s: 0, m: 3, ..SuiteConfig::new(Suite::Taft) };
    let r = run(&cfg).unwrap();
    assert!(r.passed(), "{r}");
}
