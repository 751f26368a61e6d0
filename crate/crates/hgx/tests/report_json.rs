use hgx::report::{exit_code, from_json, to_json};
use hgx_core::report::{CheckEntry, Report, Status, Witness};
use hgx_core::suites::run::{run, Break, Suite, SuiteConfig};
use proptest::prelude::*;

fn validator() -> jsonschema::Validator {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(text: &str) {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn suite_reports_round_trip_and_validate() {
    let pass = run(&SuiteConfig::new(Suite::Cocycle)).unwrap();
    let cfg = SuiteConfig { broken: Some(Break::AlphaOrder), ..SuiteConfig::new(Suite::Taft) };
    let fail = run(&cfg).unwrap();
    for r in [pass, fail] {
        let text = to_json(&r);
        assert_valid(&text);
        let back = from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_json(&back), text);
    }
}

#[test]
fn inconsistent_reports_are_rejected() {
    let mut r = Report::new("r");
    r.assert("c", false, Some(1), || Witness { input: "x".into(), residue: "y".into() });
    let text = to_json(&r);
    assert!(from_json(&text.replace("\"status\": \"fail\",\n  \"config\"", "\"status\": \"pass\",\n  \"config\"")).is_err());
    let no_witness = text.replace(r#""witness": {"#, r#""witness": null, "w": {"#);
    assert!(from_json(&no_witness).is_err());
}

#[test]
fn exit_codes_follow_status() {
    let entry = |status, witness: Option<Witness>| CheckEntry { name: "c".into(), status, bound: Some(2), cases: 1, witness, note: None };
    let w = || Some(Witness { input: "i".into(), residue: "r".into() });
    let mut r = Report::new("r");
    assert_eq!(exit_code(&r), 0);
    r.push(entry(Status::NotDecidedAtBound, w()));
    assert_eq!(exit_code(&r), 2);
    r.push(entry(Status::Fail, w()));
    assert_eq!(exit_code(&r), 1);
}

fn arb_entry() -> impl Strategy<Value = CheckEntry> {
    let text = "[ -~⊗μζ]{0,12}";
    (text, 0..3usize, proptest::option::of(0u32..10), 0usize..1000, text, text, proptest::option::of(text)).prop_map(
        |(name, st, bound, cases, input, residue, note)| {
            let status = [Status::Pass, Status::NotDecidedAtBound, Status::Fail][st];
            let witness = (status != Status::Pass).then(|| Witness { input: format!("in {input}"), residue });
            CheckEntry { name, status, bound, cases, witness, note }
        },
    )
}

proptest! {
    #[test]
    fn arbitrary_reports_round_trip(
        name in "[ -~]{0,16}",
        config in proptest::collection::vec(("[a-z]{1,6}", "[ -~]{0,8}"), 0..4),
        entries in proptest::collection::vec(arb_entry(), 0..6),
        timing in proptest::option::of(0u64..100_000),
    ) {
        let mut config = config;
        config.sort();
        config.dedup_by(|a, b| a.0 == b.0);
        let r = Report { name, config, entries, timing_ms: timing };
        let text = to_json(&r);
        assert_valid(&text);
        prop_assert_eq!(from_json(&text).unwrap(), r);
    }
}
