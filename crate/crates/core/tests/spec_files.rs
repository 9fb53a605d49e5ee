use std::path::PathBuf;

use hermcone::algebra::Algebra;
use hermcone::catalog;
use hermcone::sample;
use hermcone::spec::{parse_element, parse_scalar, parse_spec, render_json, run_checks, RunOptions, SpecError};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(p).expect("fixture")
}

const QUATERNION: &str = "[algebra]\nkind = quaternion\na = 2\nb = 3\n[involution]\ni = i\nj = j\n";

#[test]
fn d3_fixture_parses_as_degree_three_symbol() {
    let doc = parse_spec(&fixture("mainex.spec")).unwrap();
    assert!(!doc.algebra.is_crossed());
    assert_eq!(doc.algebra.degree(), 3);
    assert_eq!(doc.algebra.generator_names(), vec!["x", "y"]);
    assert!(doc.presentation.is_ok());
}

#[test]
fn empty_checks() {
    let doc = parse_spec(&format!("{QUATERNION}[checks]\n")).unwrap();
    assert!(doc.checks.is_empty());
    let recs = run_checks(&doc, &RunOptions::default());
    assert!(recs.is_empty());
    assert_eq!(render_json(&recs)["records"], serde_json::json!([]));
}

#[test]
fn misspelled_generator_is_named() {
    let text = "[algebra]\nkind = quaternion\na = 2\nb = 3\n[involution]\ni = i\nJ = j\n";
    match parse_spec(text) {
        Err(SpecError::Validation { section, msg }) => {
            assert_eq!(section, "involution");
            assert!(msg.contains("'J'"), "{msg}");
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("[algebra]\nkind = quaternion\na = 2\nb = 3 +\n", 4, 8),
        ("[algebra]\nkind = quaternion\na = 2 $ 1\nb = 3\n", 3, 7),
        ("[involution]\ni = i\n[algebra]\nkind = quaternion\n", 3, 1),
        ("[algebra]\nkind = octonion\n", 2, 8),
        ("[algebra]\nkind = quaternion\na = 2\nb = 3\n[involution]\ni = i\nj = j\n[checks]\nreality eta\n", 9, 9),
        ("kind = quaternion\n", 1, 1),
    ];
    for (text, line, col) in cases {
        match parse_spec(text) {
            Err(SpecError::Parse { line: l, col: c, .. }) => assert_eq!((l, c), (line, col), "{text}"),
            other => panic!("{text}: expected a parse error, got {other:?}"),
        }
    }
}

#[test]
fn invalid_involution_fails_its_checks() {
    let text = "[algebra]\nkind = quaternion\na = 2\nb = 3\n[involution]\ni = j\nj = i\n[checks]\nvalidate-involution\ngram\n";
    let doc = parse_spec(text).unwrap();
    assert!(doc.presentation.is_err());
    let recs = run_checks(&doc, &RunOptions::default());
    assert_eq!(recs[0].status, "FAIL");
    assert_eq!(recs[1].status, "ERROR");
    assert!(recs.iter().all(|r| !r.ok));
}

#[test]
fn d3_checks_end_not_formally_real() {
    let doc = parse_spec(&fixture("mainex.spec")).unwrap();
    let recs = run_checks(&doc, &RunOptions::default());
    let i = recs.iter().position(|r| r.check == "reality").unwrap();
    assert!(recs[..=i].iter().any(|r| r.check == "gram"));
    assert!(recs[..=i].iter().any(|r| r.check == "diagonalize"));
    assert_eq!(recs[i].status, "NOT_FORMALLY_REAL");
    assert!(recs.iter().all(|r| r.ok), "{recs:#?}");
}

#[test]
fn certificate_fixture_verifies() {
    let doc = parse_spec(&fixture("mainexvar.spec")).unwrap();
    let recs = run_checks(&doc, &RunOptions::default());
    let r = recs.iter().find(|r| r.check == "sohs-verify").unwrap();
    assert!(r.ok);
    assert_eq!(r.values["holds"], true);
    assert_eq!(r.values["obstruction"], true);
    // serialized elements re-parse to the certificate
    let cert = doc.certificate.as_ref().unwrap();
    let shown = r.certificate["elements"].as_array().unwrap();
    for (s, d) in shown.iter().zip(&cert.elements) {
        assert_eq!(parse_element(&doc.algebra, s.as_str().unwrap()).unwrap(), *d);
    }
}

#[test]
fn gram_values_round_trip() {
    let doc = parse_spec(&fixture("mainex.spec")).unwrap();
    let k = doc.presentation.as_ref().unwrap().k_field().clone();
    let recs = run_checks(&doc, &RunOptions::default());
    let gram = recs.iter().find(|r| r.check == "gram").unwrap();
    let diag = recs.iter().find(|r| r.check == "diagonalize").unwrap();
    let rows = gram.values["gram"].as_array().unwrap();
    for v in rows.iter().flat_map(|r| r.as_array().unwrap()).chain(diag.values["diagonal"].as_array().unwrap()) {
        let s = v.as_str().unwrap();
        let back = parse_scalar(&k, s).unwrap();
        assert_eq!(back.to_string(), s);
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["biquaternion.spec", "quaternion.spec", "simpex.spec"] {
        let doc = parse_spec(&fixture(name)).unwrap();
        let opts = RunOptions {
            seed: 5,
            ..RunOptions::default()
        };
        let strip = |mut v: serde_json::Value| {
            for r in v["records"].as_array_mut().unwrap() {
                r.as_object_mut().unwrap().remove("timing_ms");
            }
            v
        };
        let a = strip(render_json(&run_checks(&doc, &opts)));
        let b = strip(render_json(&run_checks(&doc, &opts)));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn crossed_product_sections() {
    let doc = parse_spec(&fixture("biquaternion.spec")).unwrap();
    assert!(doc.algebra.is_crossed());
    assert!(doc.algebra.validate_cocycle().ok());
    let broken = fixture("biquaternion.spec").replace("act.st = th: -th", "act.st = th: -th\ncocycle.s.s = 2");
    let doc = parse_spec(&broken).unwrap();
    let recs = run_checks(&doc, &RunOptions::default());
    let r = recs.iter().find(|r| r.check == "validate-cocycle").unwrap();
    assert!(!r.ok);
}

thread_local! {
    static D3: Algebra = catalog::d3(2, 3).unwrap().algebra().clone();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        D3.with(|alg| {
            let mut rng = sample::rng(seed);
            let z = sample::element(alg, &mut rng, 7);
            let back = parse_element(alg, &z.to_string()).unwrap();
            prop_assert_eq!(back, z);
            Ok(())
        })?;
    }

    #[test]
    fn function_field_scalars_round_trip(seed in any::<u64>()) {
        let f = hermcone::scalars::Field::functions(&catalog::eisenstein(), &["a", "b"]);
        let mut rng = sample::rng(seed);
        let x = sample::scalar(&f, &mut rng, 5);
        let y = sample::nonzero_scalar(&f, &mut rng, 5);
        let q = &x / &y;
        prop_assert_eq!(parse_scalar(&f, &q.to_string()).unwrap(), q);
    }
}
