//! Gated language identification.
//!
//! Articles carry up to three independent language labels, each produced
//! under its own length gate and input window:
//!
//! * **long** — bodies of at least 50 code points, detected on the first
//!   4096 code points of the body;
//! * **short** — bodies of fewer than 1000 code points (but non-empty),
//!   detected on the full body;
//! * **all** — every non-empty body, detected on the title plus the first
//!   1024 code points of the body.
//!
//! The slots are deliberately never merged: disagreement between them is
//! signal (closely related languages, mixed-language pages), not noise.
//!
//! Detection itself is pluggable via [`LanguageDetector`]. The bundled
//! reference detector is a classic rank-order n-gram classifier: each
//! language is summarized by its `k` most frequent code-point n-grams, and
//! text is scored by the out-of-place distance between its own n-gram
//! ranking and each profile.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::{Arc, OnceLock};

/// A detected language: ISO 639-3 code, optional script, and the
/// detector's confidence in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LanguageLabel {
    pub code: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
    pub confidence: f64,
}

impl LanguageLabel {
    pub fn validate(&self) -> Result<(), LangError> {
        if self.code.len() != 3 || !self.code.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(LangError::BadCode(self.code.clone()));
        }
        if !(0.0..=1.0).contains(&self.confidence) || self.confidence.is_nan() {
            return Err(LangError::BadConfidence(self.confidence));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LangError {
    #[error("language code must match [a-z]{{3}}: {0:?}")]
    BadCode(String),
    #[error("confidence must lie in [0, 1]: {0}")]
    BadConfidence(f64),
    #[error("cannot train on an empty sample set")]
    NoSamples,
    #[error("profile size k must be at least 1")]
    ZeroK,
    #[error("n-gram order max_n must be at least 1")]
    ZeroMaxN,
    #[error("profile set mixes parameters: {0}")]
    MixedParameters(String),
    #[error("cannot detect language of empty text")]
    EmptyText,
    #[error("profile set is empty")]
    NoProfiles,
    #[error("profile file {path}: {source}")]
    ProfileIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("profile file {path}: {message}")]
    ProfileFormat { path: String, message: String },
}

/// The three labeling slots, in record field order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Long,
    Short,
    All,
}

impl Slot {
    pub const ALL_SLOTS: [Slot; 3] = [Slot::Long, Slot::Short, Slot::All];

    pub fn name(&self) -> &'static str {
        match self {
            Slot::Long => "long",
            Slot::Short => "short",
            Slot::All => "all",
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Length gate and input window for one slot. Lengths count Unicode scalar
/// values, not bytes.
#[derive(Clone, Copy, Debug)]
pub struct SlotRule {
    pub slot: Slot,
    /// Minimum body length (inclusive) for the slot to apply.
    pub min_chars: usize,
    /// Exclusive upper bound on body length, if any.
    pub max_chars_exclusive: Option<usize>,
    /// Truncate the body to this many code points before detection.
    pub body_prefix: Option<usize>,
    /// Whether the title is prepended to the detector input.
    pub include_title: bool,
}

pub const LONG_RULE: SlotRule = SlotRule {
    slot: Slot::Long,
    min_chars: 50,
    max_chars_exclusive: None,
    body_prefix: Some(4096),
    include_title: false,
};

pub const SHORT_RULE: SlotRule = SlotRule {
    slot: Slot::Short,
    min_chars: 1,
    max_chars_exclusive: Some(1000),
    body_prefix: None,
    include_title: false,
};

pub const ALL_RULE: SlotRule = SlotRule {
    slot: Slot::All,
    min_chars: 1,
    max_chars_exclusive: None,
    body_prefix: Some(1024),
    include_title: true,
};

pub const SLOT_RULES: [SlotRule; 3] = [LONG_RULE, SHORT_RULE, ALL_RULE];

impl SlotRule {
    pub fn for_slot(slot: Slot) -> SlotRule {
        match slot {
            Slot::Long => LONG_RULE,
            Slot::Short => SHORT_RULE,
            Slot::All => ALL_RULE,
        }
    }

    /// Does a body of `body_chars` code points pass this slot's gate?
    pub fn applies(&self, body_chars: usize) -> bool {
        body_chars >= self.min_chars
            && self.max_chars_exclusive.is_none_or(|max| body_chars < max)
    }

    /// Detector input for this slot, or `None` when the gate rejects the
    /// body. Truncation is by code points; the title, when included, is
    /// joined to the body window with a single newline.
    pub fn input(&self, title: &str, body: &str) -> Option<String> {
        if !self.applies(body.chars().count()) {
            return None;
        }
        let window: String = match self.body_prefix {
            Some(limit) => body.chars().take(limit).collect(),
            None => body.to_string(),
        };
        if self.include_title && !title.is_empty() {
            let mut input = String::with_capacity(title.len() + 1 + window.len());
            input.push_str(title);
            input.push('\n');
            input.push_str(&window);
            Some(input)
        } else {
            Some(window)
        }
    }
}

/// Anything that can label a piece of text with a language.
pub trait LanguageDetector: Send + Sync {
    /// Label the text, or return `None` when the detector abstains
    /// (e.g. empty input).
    fn detect(&self, text: &str) -> Option<LanguageLabel>;
}

/// Per-slot detector assignment. The same detector may back all three
/// slots; the slots still gate and window their inputs independently.
pub struct SlotDetectors<'a> {
    pub long: &'a dyn LanguageDetector,
    pub short: &'a dyn LanguageDetector,
    pub all: &'a dyn LanguageDetector,
}

impl<'a> SlotDetectors<'a> {
    pub fn uniform(detector: &'a dyn LanguageDetector) -> Self {
        SlotDetectors {
            long: detector,
            short: detector,
            all: detector,
        }
    }

    fn for_slot(&self, slot: Slot) -> &'a dyn LanguageDetector {
        match slot {
            Slot::Long => self.long,
            Slot::Short => self.short,
            Slot::All => self.all,
        }
    }
}

/// Fill the language slots of a record in place.
///
/// Each slot is labeled iff its gate admits the body. With `force`, all
/// three slots are recomputed and slots whose gate rejects the body are
/// cleared; without it, existing labels are left untouched and only empty,
/// eligible slots are filled.
pub fn annotate_record(
    record: &mut crate::record::ArticleRecord,
    detectors: &SlotDetectors<'_>,
    force: bool,
) {
    let body_chars = record.text.chars().count();
    for rule in SLOT_RULES {
        let slot_ref = match rule.slot {
            Slot::Long => &mut record.lang_long,
            Slot::Short => &mut record.lang_short,
            Slot::All => &mut record.lang_all,
        };
        if slot_ref.is_some() && !force {
            continue;
        }
        *slot_ref = if rule.applies(body_chars) {
            rule.input(&record.title, &record.text)
                .and_then(|input| detectors.for_slot(rule.slot).detect(&input))
        } else {
            None
        };
    }
}

// ---------------------------------------------------------------------------
// Rank-order n-gram profiles
// ---------------------------------------------------------------------------

/// A trained language profile: the `k` most frequent code-point n-grams of
/// the training text, ranked from 0 (most frequent) upward.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectorProfile {
    pub code: String,
    pub k: usize,
    pub max_n: usize,
    /// gram -> rank, ranks dense in `0..len`.
    ranks: BTreeMap<String, u32>,
}

/// On-disk form: ranked grams as an explicit array so the file is stable
/// and diffable.
#[derive(Serialize, Deserialize)]
struct ProfileFile {
    code: String,
    k: usize,
    max_n: usize,
    ngrams: Vec<(String, u32)>,
}

fn ngram_counts(text: &str, max_n: usize) -> BTreeMap<String, u64> {
    let chars: Vec<char> = text.chars().collect();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for n in 1..=max_n {
        if chars.len() < n {
            break;
        }
        for window in chars.windows(n) {
            *counts.entry(window.iter().collect()).or_insert(0) += 1;
        }
    }
    counts
}

/// Rank grams by descending frequency, breaking ties lexicographically,
/// and keep the top `k`.
fn rank_top_k(counts: BTreeMap<String, u64>, k: usize) -> BTreeMap<String, u32> {
    let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries.truncate(k);
    entries
        .into_iter()
        .enumerate()
        .map(|(rank, (gram, _))| (gram, rank as u32))
        .collect()
}

impl DetectorProfile {
    /// Train a profile for `code` from its samples.
    pub fn train(code: &str, samples: &[&str], k: usize, max_n: usize) -> Result<Self, LangError> {
        if k == 0 {
            return Err(LangError::ZeroK);
        }
        if max_n == 0 {
            return Err(LangError::ZeroMaxN);
        }
        if samples.is_empty() || samples.iter().all(|s| s.is_empty()) {
            return Err(LangError::NoSamples);
        }
        let label = LanguageLabel {
            code: code.to_string(),
            script: None,
            confidence: 0.0,
        };
        label.validate()?;
        let mut counts = BTreeMap::new();
        for sample in samples {
            for (gram, n) in ngram_counts(sample, max_n) {
                *counts.entry(gram).or_insert(0) += n;
            }
        }
        Ok(DetectorProfile {
            code: code.to_string(),
            k,
            max_n,
            ranks: rank_top_k(counts, k),
        })
    }

    pub fn rank_of(&self, gram: &str) -> Option<u32> {
        self.ranks.get(gram).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Ranked grams, most frequent first.
    pub fn ranked_grams(&self) -> Vec<(String, u32)> {
        let mut grams: Vec<(String, u32)> = self.ranks.iter().map(|(g, &r)| (g.clone(), r)).collect();
        grams.sort_by_key(|&(_, r)| r);
        grams
    }

    pub fn to_json(&self) -> String {
        let file = ProfileFile {
            code: self.code.clone(),
            k: self.k,
            max_n: self.max_n,
            ngrams: self.ranked_grams(),
        };
        serde_json::to_string_pretty(&file).expect("profile serialization cannot fail")
    }

    pub fn from_json(path_label: &str, json: &str) -> Result<Self, LangError> {
        let file: ProfileFile =
            serde_json::from_str(json).map_err(|e| LangError::ProfileFormat {
                path: path_label.to_string(),
                message: e.to_string(),
            })?;
        if file.k == 0 {
            return Err(LangError::ProfileFormat {
                path: path_label.to_string(),
                message: "k must be at least 1".into(),
            });
        }
        let mut ranks = BTreeMap::new();
        for (gram, rank) in &file.ngrams {
            if *rank as usize >= file.k || ranks.insert(gram.clone(), *rank).is_some() {
                return Err(LangError::ProfileFormat {
                    path: path_label.to_string(),
                    message: format!("invalid rank entry ({gram:?}, {rank})"),
                });
            }
        }
        Ok(DetectorProfile {
            code: file.code,
            k: file.k,
            max_n: file.max_n,
            ranks,
        })
    }
}

/// A set of profiles sharing `k` and `max_n`, ready for detection.
#[derive(Clone, Debug)]
pub struct ProfileSet {
    profiles: BTreeMap<String, DetectorProfile>,
    k: usize,
    max_n: usize,
}

impl ProfileSet {
    pub fn new(profiles: impl IntoIterator<Item = DetectorProfile>) -> Result<Self, LangError> {
        let mut map = BTreeMap::new();
        let mut params: Option<(usize, usize)> = None;
        for p in profiles {
            match params {
                None => params = Some((p.k, p.max_n)),
                Some((k, n)) if (k, n) != (p.k, p.max_n) => {
                    return Err(LangError::MixedParameters(format!(
                        "profile {} has (k={}, max_n={}), set has (k={k}, max_n={n})",
                        p.code, p.k, p.max_n
                    )));
                }
                _ => {}
            }
            map.insert(p.code.clone(), p);
        }
        let (k, max_n) = params.ok_or(LangError::NoProfiles)?;
        Ok(ProfileSet {
            profiles: map,
            k,
            max_n,
        })
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Classify text by minimum out-of-place distance.
    ///
    /// The distance between the text's own top-k ranking and a profile sums,
    /// over the text's grams, the absolute rank difference, with grams
    /// missing from the profile costing `k`. Confidence is
    /// `1 - best / worst` where `worst` is the distance of a profile that
    /// shares no grams with the text. Ties prefer the lexicographically
    /// smallest language code.
    pub fn detect(&self, text: &str) -> Result<LanguageLabel, LangError> {
        if text.is_empty() {
            return Err(LangError::EmptyText);
        }
        if self.profiles.is_empty() {
            return Err(LangError::NoProfiles);
        }
        let text_ranks = rank_top_k(ngram_counts(text, self.max_n), self.k);
        let mut best: Option<(&str, u64)> = None;
        for (code, profile) in &self.profiles {
            let mut distance: u64 = 0;
            for (gram, &text_rank) in &text_ranks {
                distance += match profile.rank_of(gram) {
                    Some(profile_rank) => (profile_rank as i64 - text_rank as i64).unsigned_abs(),
                    None => self.k as u64,
                };
            }
            // BTreeMap iteration is sorted by code, so strict `<` keeps the
            // lexicographically smallest code on ties.
            if best.is_none_or(|(_, d)| distance < d) {
                best = Some((code, distance));
            }
        }
        let (code, distance) = best.expect("non-empty profile set");
        let worst = (text_ranks.len() as u64) * (self.k as u64);
        let confidence = if worst == 0 {
            0.0
        } else {
            (1.0 - distance as f64 / worst as f64).clamp(0.0, 1.0)
        };
        Ok(LanguageLabel {
            code: code.to_string(),
            script: None,
            confidence,
        })
    }

    /// Write one `<code>.json` profile file per language into `dir`.
    pub fn save_dir(&self, dir: &Path) -> Result<(), LangError> {
        fs::create_dir_all(dir).map_err(|e| LangError::ProfileIo {
            path: dir.display().to_string(),
            source: e,
        })?;
        for (code, profile) in &self.profiles {
            let path = dir.join(format!("{code}.json"));
            fs::write(&path, profile.to_json()).map_err(|e| LangError::ProfileIo {
                path: path.display().to_string(),
                source: e,
            })?;
        }
        Ok(())
    }

    /// Load every `*.json` profile file from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, LangError> {
        let entries = fs::read_dir(dir).map_err(|e| LangError::ProfileIo {
            path: dir.display().to_string(),
            source: e,
        })?;
        let mut profiles = Vec::new();
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let label = path.display().to_string();
            let json = fs::read_to_string(&path).map_err(|e| LangError::ProfileIo {
                path: label.clone(),
                source: e,
            })?;
            profiles.push(DetectorProfile::from_json(&label, &json)?);
        }
        ProfileSet::new(profiles)
    }
}

/// [`LanguageDetector`] backed by a [`ProfileSet`].
pub struct NgramDetector {
    profiles: ProfileSet,
}

impl NgramDetector {
    pub fn new(profiles: ProfileSet) -> Self {
        NgramDetector { profiles }
    }

    pub fn profiles(&self) -> &ProfileSet {
        &self.profiles
    }
}

impl LanguageDetector for NgramDetector {
    fn detect(&self, text: &str) -> Option<LanguageLabel> {
        self.profiles.detect(text).ok()
    }
}

/// Default profile-set parameters for the bundled detector.
pub const DEFAULT_K: usize = 300;
pub const DEFAULT_MAX_N: usize = 3;

/// Seed texts bundled with the crate, as `(code, text)` pairs.
pub fn bundled_seed_texts() -> Vec<(&'static str, &'static str)> {
    vec![
        ("deu", include_str!("../data/lang_seeds/deu.txt")),
        ("eng", include_str!("../data/lang_seeds/eng.txt")),
        ("fin", include_str!("../data/lang_seeds/fin.txt")),
        ("fra", include_str!("../data/lang_seeds/fra.txt")),
        ("isl", include_str!("../data/lang_seeds/isl.txt")),
        ("rus", include_str!("../data/lang_seeds/rus.txt")),
        ("spa", include_str!("../data/lang_seeds/spa.txt")),
    ]
}

/// The bundled reference detector, trained once per process from the seed
/// texts. Covers a handful of European languages; swap in profiles trained
/// on real corpora for production use.
pub fn bundled_detector() -> Arc<NgramDetector> {
    static DETECTOR: OnceLock<Arc<NgramDetector>> = OnceLock::new();
    DETECTOR
        .get_or_init(|| {
            let profiles = bundled_seed_texts()
                .into_iter()
                .map(|(code, text)| {
                    DetectorProfile::train(code, &[text], DEFAULT_K, DEFAULT_MAX_N)
                        .expect("bundled seeds are non-empty")
                })
                .collect::<Vec<_>>();
            Arc::new(NgramDetector::new(
                ProfileSet::new(profiles).expect("bundled profiles share parameters"),
            ))
        })
        .clone()
}

// ---------------------------------------------------------------------------
// Corpus-level reports
// ---------------------------------------------------------------------------

/// How often the long-document slot and the all-article slot (dis)agree,
/// keyed by the (long, all) code pair.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AgreementReport {
    pub pairs: Vec<AgreementPair>,
    /// Records with both slots labeled.
    pub both_labeled: u64,
    pub agreements: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementPair {
    pub long: String,
    pub all: String,
    pub count: u64,
}

pub fn language_agreement<'a>(
    records: impl IntoIterator<Item = &'a crate::record::ArticleRecord>,
) -> AgreementReport {
    let mut pairs: BTreeMap<(String, String), u64> = BTreeMap::new();
    let mut both = 0;
    let mut agree = 0;
    for record in records {
        if let (Some(l), Some(a)) = (&record.lang_long, &record.lang_all) {
            both += 1;
            if l.code == a.code {
                agree += 1;
            }
            *pairs.entry((l.code.clone(), a.code.clone())).or_insert(0) += 1;
        }
    }
    AgreementReport {
        pairs: pairs
            .into_iter()
            .map(|((long, all), count)| AgreementPair { long, all, count })
            .collect(),
        both_labeled: both,
        agreements: agree,
    }
}

/// Distribution of one slot's language codes across records.
#[derive(Clone, Debug, Serialize)]
pub struct LanguageDistribution {
    pub slot: String,
    pub total_labeled: u64,
    pub distinct_codes: usize,
    pub counts: BTreeMap<String, u64>,
}

pub fn language_distribution<'a>(
    records: impl IntoIterator<Item = &'a crate::record::ArticleRecord>,
    slot: Slot,
) -> LanguageDistribution {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut total = 0;
    for record in records {
        let label = match slot {
            Slot::Long => &record.lang_long,
            Slot::Short => &record.lang_short,
            Slot::All => &record.lang_all,
        };
        if let Some(l) = label {
            total += 1;
            *counts.entry(l.code.clone()).or_insert(0) += 1;
        }
    }
    LanguageDistribution {
        slot: slot.name().to_string(),
        total_labeled: total,
        distinct_codes: counts.len(),
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_gates_at_documented_boundaries() {
        // long: >= 50
        assert!(!LONG_RULE.applies(49));
        assert!(LONG_RULE.applies(50));
        // short: 0 < len < 1000
        assert!(!SHORT_RULE.applies(0));
        assert!(SHORT_RULE.applies(1));
        assert!(SHORT_RULE.applies(999));
        assert!(!SHORT_RULE.applies(1000));
        // all: len > 0
        assert!(!ALL_RULE.applies(0));
        assert!(ALL_RULE.applies(1));
    }

    #[test]
    fn gates_count_code_points_not_bytes() {
        // 49 CJK code points = 147 bytes; still below the long gate.
        let text: String = "漢".repeat(49);
        assert_eq!(text.len(), 147);
        assert!(!LONG_RULE.applies(text.chars().count()));
        let text50: String = "漢".repeat(50);
        assert!(LONG_RULE.applies(text50.chars().count()));
    }

    #[test]
    fn long_input_truncates_to_4096_code_points() {
        let body = "ä".repeat(5000);
        let input = LONG_RULE.input("ignored title", &body).unwrap();
        assert_eq!(input.chars().count(), 4096);
        assert!(!input.contains("ignored"));
    }

    #[test]
    fn all_input_prepends_title() {
        let input = ALL_RULE.input("Headline", "body text").unwrap();
        assert_eq!(input, "Headline\nbody text");
        let no_title = ALL_RULE.input("", "body text").unwrap();
        assert_eq!(no_title, "body text");
        // Title rides along even when the body window truncates.
        let long_body = "x".repeat(2000);
        let input = ALL_RULE.input("T", &long_body).unwrap();
        assert_eq!(input.chars().count(), 1 + 1 + 1024);
    }

    #[test]
    fn short_input_is_untruncated_body() {
        let body = "abc ".repeat(100); // 400 chars
        assert_eq!(SHORT_RULE.input("T", &body).unwrap(), body);
    }

    #[test]
    fn training_example_k3() {
        // "aaaa" with max_n=2 yields counts a:4, aa:3; ranked a=0, aa=1.
        let p = DetectorProfile::train("aaa", &["aaaa"], 3, 2).unwrap();
        assert_eq!(p.rank_of("a"), Some(0));
        assert_eq!(p.rank_of("aa"), Some(1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn training_breaks_frequency_ties_lexicographically() {
        // "ab": a:1, b:1, ab:1 -> ranks a=0, ab=1, b=2.
        let p = DetectorProfile::train("aaa", &["ab"], 3, 2).unwrap();
        assert_eq!(p.rank_of("a"), Some(0));
        assert_eq!(p.rank_of("ab"), Some(1));
        assert_eq!(p.rank_of("b"), Some(2));
    }

    #[test]
    fn detection_prefers_matching_profile() {
        let a = DetectorProfile::train("aaa", &["aaaaaaaa"], 10, 2).unwrap();
        let b = DetectorProfile::train("bbb", &["bbbbbbbb"], 10, 2).unwrap();
        let set = ProfileSet::new([a, b]).unwrap();
        let label = set.detect("aaaa").unwrap();
        assert_eq!(label.code, "aaa");
        assert!(label.confidence > 0.5);
        assert!(label.confidence <= 1.0);
    }

    #[test]
    fn detection_ties_break_to_smallest_code() {
        // Two identical profiles: distance ties; zzz vs aaa -> aaa wins.
        let a = DetectorProfile::train("zzz", &["xyxy"], 5, 2).unwrap();
        let mut b = a.clone();
        b.code = "aaa".into();
        let set = ProfileSet::new([a, b]).unwrap();
        assert_eq!(set.detect("xyxy").unwrap().code, "aaa");
    }

    #[test]
    fn detection_rejects_empty_text() {
        let p = DetectorProfile::train("eng", &["theladder"], 5, 2).unwrap();
        let set = ProfileSet::new([p]).unwrap();
        assert!(matches!(set.detect(""), Err(LangError::EmptyText)));
    }

    #[test]
    fn profile_json_round_trip() {
        let p = DetectorProfile::train("fra", &["le monde entier"], 20, 3).unwrap();
        let json = p.to_json();
        let back = DetectorProfile::from_json("inline", &json).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn bundled_detector_separates_its_languages() {
        let det = bundled_detector();
        let cases = [
            ("eng", "The committee announced on Thursday that the new measures would take effect early next year, following months of public debate."),
            ("deu", "Die Regierung kündigte am Donnerstag an, dass die neuen Maßnahmen Anfang nächsten Jahres in Kraft treten würden."),
            ("fra", "Le gouvernement a annoncé jeudi que les nouvelles mesures entreraient en vigueur au début de l'année prochaine."),
            ("spa", "El gobierno anunció el jueves que las nuevas medidas entrarían en vigor a principios del próximo año."),
            ("rus", "Правительство объявило в четверг, что новые меры вступят в силу в начале следующего года."),
        ];
        for (expected, text) in cases {
            let label = det.detect(text).unwrap();
            assert_eq!(label.code, expected, "text: {text}");
            label.validate().unwrap();
        }
    }

    #[test]
    fn bundled_detector_is_deterministic() {
        let det = bundled_detector();
        let text = "Ministers met again to discuss the draft agreement on trade.";
        assert_eq!(det.detect(text), det.detect(text));
    }
}
