use std::path::{Path, PathBuf};

use ribbon_core::document::{parse_document, serialize_document, DocumentError};
use ribbon_core::figures;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

#[test]
fn every_figure_matches_its_golden_file() {
    for (name, doc) in figures::all() {
        let text = std::fs::read_to_string(data(&format!("{name}.rcx"))).unwrap();
        assert_eq!(serialize_document(&doc), text, "{name}");
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(serialize_document(&parsed), text, "{name}");
        parsed.resolve().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn empty_document_round_trips() {
    let text = std::fs::read_to_string(data("empty.rcx")).unwrap();
    let doc = parse_document(&text).unwrap();
    assert!(doc.complexes.is_empty());
    assert_eq!(serialize_document(&doc), text);
}

#[test]
fn whitespace_and_key_order_normalize() {
    let text = std::fs::read_to_string(data("fig4.rcx")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pretty = serde_json::to_string_pretty(&value).unwrap();
    assert_ne!(pretty, text);
    assert_eq!(serialize_document(&parse_document(&pretty).unwrap()), text);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(matches!(parse_document("{"), Err(DocumentError::Json(_))));
    assert!(matches!(
        parse_document(r#"{"format_version":1,"complexes":{},"extra":0}"#),
        Err(DocumentError::SchemaViolation { .. })
    ));
    assert!(matches!(
        parse_document(r#"{"format_version":99,"complexes":{}}"#),
        Err(DocumentError::UnsupportedVersion(_))
    ));
    let doubled = r#"{"format_version":1,"complexes":{"k":{"vertices":{"a":["2/2","0/1"]}}}}"#;
    assert!(matches!(parse_document(doubled), Err(DocumentError::NonCanonicalRational { .. })));
}
