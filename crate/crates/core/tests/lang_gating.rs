//! Slot gating behavior on whole records, including the exact code-point
//! boundaries and the independence of the three slots.

use ngix_core::lang::{
    annotate_record, LanguageDetector, LanguageLabel, SlotDetectors, ALL_RULE, LONG_RULE,
    SHORT_RULE,
};
use ngix_core::record::{parse_record_line, ArticleRecord};

/// Test detector that reports a fixed code and echoes the input length as
/// confidence-adjacent metadata via the script field.
struct EchoDetector(&'static str);

impl LanguageDetector for EchoDetector {
    fn detect(&self, text: &str) -> Option<LanguageLabel> {
        if text.is_empty() {
            return None;
        }
        Some(LanguageLabel {
            code: self.0.to_string(),
            script: Some(format!("L{:04}", text.chars().count().min(9999))),
            confidence: 1.0,
        })
    }
}

fn record_with_text(title: &str, text: &str) -> ArticleRecord {
    let line = serde_json::json!({
        "url": "https://example.org/a",
        "warc_date": "2022-06-15T00:00:00Z",
        "title": title,
        "text": text,
    })
    .to_string();
    parse_record_line(&line).unwrap()
}

fn annotate(record: &mut ArticleRecord) {
    let detector = EchoDetector("zzz");
    annotate_record(record, &SlotDetectors::uniform(&detector), true);
}

#[test]
fn empty_body_fills_no_slot() {
    let mut record = record_with_text("Title only", "");
    annotate(&mut record);
    assert!(record.lang_long.is_none());
    assert!(record.lang_short.is_none());
    assert!(record.lang_all.is_none());
}

#[test]
fn forty_nine_chars_gets_short_and_all_only() {
    let mut record = record_with_text("T", &"x".repeat(49));
    annotate(&mut record);
    assert!(record.lang_long.is_none());
    assert!(record.lang_short.is_some());
    assert!(record.lang_all.is_some());
}

#[test]
fn fifty_chars_gets_all_three() {
    let mut record = record_with_text("T", &"x".repeat(50));
    annotate(&mut record);
    assert!(record.lang_long.is_some());
    assert!(record.lang_short.is_some());
    assert!(record.lang_all.is_some());
}

#[test]
fn cjk_boundary_counts_code_points() {
    // 49 and 50 CJK code points are 147 and 150 bytes; the gate must see
    // code points, not bytes.
    let mut at_49 = record_with_text("標題", &"漢".repeat(49));
    annotate(&mut at_49);
    assert!(at_49.lang_long.is_none(), "49 code points must not pass the long gate");

    let mut at_50 = record_with_text("標題", &"漢".repeat(50));
    annotate(&mut at_50);
    assert!(at_50.lang_long.is_some(), "50 code points must pass the long gate");
}

#[test]
fn short_slot_boundary_at_1000() {
    let mut at_999 = record_with_text("", &"й".repeat(999));
    annotate(&mut at_999);
    assert!(at_999.lang_short.is_some(), "999 code points is still short");

    let mut at_1000 = record_with_text("", &"й".repeat(1000));
    annotate(&mut at_1000);
    assert!(at_1000.lang_short.is_none(), "1000 code points leaves the short slot empty");
    assert!(at_1000.lang_long.is_some());
    assert!(at_1000.lang_all.is_some());
}

#[test]
fn slot_windows_are_independent() {
    // 5000-char body: long sees 4096, all sees title + 1024, short gate closed.
    let mut record = record_with_text("Headline", &"a".repeat(5000));
    annotate(&mut record);
    assert_eq!(record.lang_long.as_ref().unwrap().script.as_deref(), Some("L4096"));
    assert!(record.lang_short.is_none());
    // "Headline" + newline + 1024
    assert_eq!(record.lang_all.as_ref().unwrap().script.as_deref(), Some("L1033"));
}

#[test]
fn force_recomputes_and_clears() {
    let mut record = record_with_text("T", &"x".repeat(300));
    record.lang_long = Some(LanguageLabel {
        code: "old".into(),
        script: None,
        confidence: 0.1,
    });
    // Without force, the stale label survives and empty slots fill in.
    let detector = EchoDetector("new");
    annotate_record(&mut record, &SlotDetectors::uniform(&detector), false);
    assert_eq!(record.lang_long.as_ref().unwrap().code, "old");
    assert_eq!(record.lang_short.as_ref().unwrap().code, "new");

    // With force, everything is recomputed.
    annotate_record(&mut record, &SlotDetectors::uniform(&detector), true);
    assert_eq!(record.lang_long.as_ref().unwrap().code, "new");

    // Force also clears labels whose gate no longer admits the body.
    record.text = "tiny".into();
    annotate_record(&mut record, &SlotDetectors::uniform(&detector), true);
    assert!(record.lang_long.is_none());
    assert!(record.lang_short.is_some());
}

#[test]
fn slots_can_disagree_on_mixed_language_pages() {
    // A detector that answers differently for title-bearing input lets the
    // all-slot diverge from the long slot, which must be preserved.
    struct TitleSensitive;
    impl LanguageDetector for TitleSensitive {
        fn detect(&self, text: &str) -> Option<LanguageLabel> {
            let code = if text.starts_with("Deutsche") { "deu" } else { "eng" };
            Some(LanguageLabel {
                code: code.into(),
                script: None,
                confidence: 0.9,
            })
        }
    }
    let mut record = record_with_text("Deutsche Schlagzeile", &"english body ".repeat(10));
    let detector = TitleSensitive;
    annotate_record(&mut record, &SlotDetectors::uniform(&detector), true);
    assert_eq!(record.lang_long.as_ref().unwrap().code, "eng");
    assert_eq!(record.lang_all.as_ref().unwrap().code, "deu");
}

#[test]
fn rules_expose_documented_constants() {
    assert_eq!(LONG_RULE.min_chars, 50);
    assert_eq!(LONG_RULE.body_prefix, Some(4096));
    assert_eq!(SHORT_RULE.max_chars_exclusive, Some(1000));
    assert_eq!(ALL_RULE.body_prefix, Some(1024));
    assert!(ALL_RULE.include_title);
    assert!(!LONG_RULE.include_title);
}
