mod common;

use std::sync::OnceLock;

use dil3::certfile::{decode, encode, CertFileError};
use dil3_core::cert::{check_certificate, Certificate, Failure, Step};
use dil3_core::prover::{boost_config, boost_paths, expand, forbidden_config, PatternId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn certs() -> &'static [Certificate] {
    static CERTS: OnceLock<Vec<Certificate>> = OnceLock::new();
    CERTS.get_or_init(|| {
        vec![
            expand(forbidden_config(PatternId::H1)).unwrap(),
            expand(forbidden_config(PatternId::H2)).unwrap(),
            expand(boost_config(&boost_paths()[0], true)).unwrap(),
        ]
    })
}

#[test]
fn encoding_round_trips_byte_for_byte() {
    for cert in certs() {
        let text = encode(cert);
        let back = decode(&text).unwrap();
        assert_eq!(&back, cert);
        assert_eq!(encode(&back), text);
        assert!(check_certificate(&back).valid());
    }
}

#[test]
fn document_layout() {
    let text = encode(&certs()[2]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["format", "engine", "heuristic", "bounds", "start", "patterns", "bound", "root"]);
    assert_eq!(v["format"], "dil3-cert/1");
    assert_eq!(v["bound"]["c"], serde_json::json!([1, 3]));
    assert!(text.ends_with("}\n"));
}

#[test]
fn truncation_is_a_syntax_error() {
    let text = encode(&certs()[0]);
    for cut in [text.len() / 3, text.len() / 2, text.len() - 3] {
        match decode(&text[..cut]) {
            Err(CertFileError::Syntax { line, .. }) => assert!(line >= 1),
            other => panic!("cut at {cut}: {other:?}"),
        }
    }
}

#[test]
fn field_errors_name_the_field() {
    let text = encode(&certs()[0]);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["start"][0] = serde_json::json!([1, 1, 1, 1]);
    match decode(&v.to_string()) {
        Err(CertFileError::Field { field, .. }) => assert_eq!(field, "$.start[0]"),
        other => panic!("{other:?}"),
    }
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["format"] = "dil3-cert/0".into();
    assert!(matches!(decode(&v.to_string()), Err(CertFileError::Field { .. })));
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["extra"] = 1.into();
    assert!(matches!(decode(&v.to_string()), Err(CertFileError::Syntax { .. })));
}

#[test]
fn reordered_children_decode_but_do_not_check() {
    let cert = &certs()[0];
    let mut v: Value = serde_json::from_str(&encode(cert)).unwrap();
    let children = v["root"]["step"]["children"].as_array_mut().expect("root branches");
    assert!(children.len() >= 2);
    children.swap(0, 1);
    let swapped = decode(&v.to_string()).unwrap();
    let report = check_certificate(&swapped);
    assert!(!report.valid());
    assert_eq!(report.failures[0].failure, Failure::BranchMismatch);
    assert!(matches!(cert.root.step, Step::Branch { .. }));
}

#[test]
fn a_thousand_mutants_are_all_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let out = common::fuzz(certs(), 1200, &mut rng);
    assert_eq!(out.mutants, 1200);
    assert!(out.all_rejected(), "{:?}", out.by_kind);
    // every kind that has a target in these certificates was exercised
    assert!(out.by_kind.len() >= 9, "{:?}", out.by_kind);
}
