use std::process::Command;

use proptest::prelude::*;
use twistor_cli::document::{from_document, to_document, FormDocument, TermRecord};
use twistor_cli::{apply_cmd, check_cmd, parse_form, serialize_chart_form, serialize_form, CliError};
use twistor_core::correspondence::{j_map, standard_chart};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistor"))
}

fn doc(n: usize, k: usize, terms: &[(&str, &[u16], &[u16], &[u8])]) -> String {
    let d = FormDocument {
        n,
        k,
        chart: None,
        terms: terms
            .iter()
            .map(|(c, xi, xb, i)| TermRecord { coeff: c.to_string(), xi: xi.to_vec(), xibar: xb.to_vec(), index: i.to_vec() })
            .collect(),
    };
    serde_json::to_string(&d).unwrap()
}

#[test]
fn canonical_round_trip() {
    let text = doc(2, 1, &[("1", &[0, 1], &[0, 0], &[1])]);
    let parsed = parse_form(&text).unwrap();
    let canonical = serialize_form(&parsed.form, None);
    assert_eq!(serialize_form(&parse_form(&canonical).unwrap().form, None), canonical);
    assert_eq!(parse_form(&canonical).unwrap(), parsed);
}

#[test]
fn diagnostics_are_distinct() {
    let cases = [
        ("{\"n\":2,", "malformed"),
        (&*doc(2, 1, &[("1", &[0, 0], &[0, 0], &[1, 2])]), "expected k = 1"),
        (&*doc(2, 1, &[("1", &[0, 0], &[0, 0], &[3])]), "out of range"),
        (&*doc(2, 1, &[("1/0", &[0, 0], &[0, 0], &[1])]), "not a Gaussian rational"),
        (&*doc(2, 1, &[("1", &[0], &[0, 0], &[1])]), "exponents"),
        (&*doc(2, 2, &[("1", &[0, 0], &[0, 0], &[1, 1])]), "repeated"),
    ];
    for (text, needle) in cases {
        let e = parse_form(text).unwrap_err();
        assert!(e.to_string().contains(needle), "{e}");
        assert_eq!(e.exit_code(), 2);
    }
    assert!(matches!(parse_form(&doc(2, 1, &[("1", &[0, 0], &[0, 0], &[1, 2])])), Err(CliError::IndexLength { .. })));
}

#[test]
fn apply_on_constant_is_j() {
    let text = doc(2, 1, &[("1", &[0, 0], &[0, 0], &[1])]);
    let t = standard_chart(2, 1).unwrap();
    let jf = j_map(&t, &parse_form(&text).unwrap().form).unwrap();
    assert_eq!(apply_cmd(&text, &[1]).unwrap(), serialize_chart_form(t.chart(), &jf));
}

#[test]
fn apply_on_empty_form_is_zero() {
    let out = apply_cmd(&doc(3, 2, &[]), &[1, 3]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 0);
    assert_eq!(v["chart"], serde_json::json!([1, 3]));
}

#[test]
fn check_verdicts() {
    let nonharmonic = doc(2, 1, &[("1", &[0, 0], &[0, 1], &[1])]);
    let r = check_cmd(&nonharmonic).unwrap();
    assert!(!r.harmonic && !r.dbar_closed);
    let holo = doc(2, 1, &[("1", &[0, 1], &[0, 0], &[1])]);
    let r = check_cmd(&holo).unwrap();
    assert!(r.harmonic && r.dbar_closed);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    let output = dir.path().join("a.json");
    std::fs::write(&input, doc(2, 1, &[("1/2+1/3*i", &[1, 0], &[0, 0], &[2])])).unwrap();

    let st = bin().args(["apply", "--input"]).arg(&input).args(["--chart", "2", "--output"]).arg(&output).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    assert!(std::fs::read_to_string(&output).unwrap().contains("\"twist\""));

    let st = bin().args(["apply", "--input"]).arg(&input).args(["--chart", "1,2", "--output"]).arg(&output).output().unwrap().status;
    assert_eq!(st.code(), Some(2));

    let out = bin().args(["check", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"harmonic":true,"dbar_closed":true}"#);

    let st = bin().args(["verify", "--suite", "bogus", "--n", "2", "--k", "1"]).output().unwrap().status;
    assert_eq!(st.code(), Some(2));
    let st = bin().args(["verify", "--suite", "series"]).output().unwrap().status;
    assert_eq!(st.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let run = || bin().args(["verify", "--suite", "operators", "--n", "2", "--k", "1", "--seed", "11"]).output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = bin().args(["verify", "--suite", "operators", "--n", "2", "--k", "1", "--seed", "12"]).output().unwrap();
    assert_ne!(a.stdout, other.stdout);
}

fn term_strategy(n: usize, k: usize) -> impl Strategy<Value = TermRecord> {
    (
        -5i64..=5,
        1i64..=4,
        -5i64..=5,
        prop::collection::vec(0u16..3, n),
        prop::collection::vec(0u16..3, n),
        Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(move |mut v| {
            v.truncate(k);
            v
        }),
    )
        .prop_map(|(re, d, im, xi, xibar, index)| TermRecord { coeff: format!("{re}/{d}{:+}*i", im), xi, xibar, index })
}

proptest! {
    #[test]
    fn document_round_trip(terms in prop::collection::vec(term_strategy(3, 2), 0..6)) {
        let d = FormDocument { n: 3, k: 2, chart: Some(vec![1, 3]), terms };
        let parsed = from_document(&d).unwrap();
        let canonical = to_document(&parsed.form, Some(&[1, 3]));
        let again = from_document(&canonical).unwrap();
        prop_assert_eq!(&again, &parsed);
        prop_assert_eq!(to_document(&again.form, Some(&[1, 3])), canonical);
    }
}
