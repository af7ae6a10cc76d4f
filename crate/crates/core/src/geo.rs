//! Geographic attribution of news outlets.
//!
//! A domain's country is resolved per domain (not per article) from up to
//! five evidence sources, each carrying a fixed confidence tier:
//!
//! | source                 | confidence |
//! |------------------------|-----------|
//! | curated list           | 0.95      |
//! | knowledge base         | 0.90      |
//! | structural: JSON-LD    | 0.85      |
//! | ccTLD                  | 0.80      |
//! | structural: footer     | 0.70      |
//! | structural: locale     | 0.65      |
//! | corpus language        | 0.50      |
//! | structural: imprint    | 0.25      |
//!
//! The highest-confidence candidate wins unless a *different* country sits
//! within the conflict window below it, in which case the domain stays
//! unresolved — wrong attributions are worse than missing ones. Imprint
//! evidence ranks lowest because legal-notice addresses often name a
//! parent company's seat rather than the outlet's audience.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

/// Candidates within this much confidence of the leader, naming a
/// different country, make a domain unresolved.
pub const CONFLICT_WINDOW: f64 = 0.05;
/// Float-comparison slack for the conflict window.
const WINDOW_EPSILON: f64 = 1e-9;

/// Minimum labeled articles before corpus language may vote.
pub const CORPUS_LANGUAGE_MIN_ARTICLES: u64 = 20;
/// Share of articles the dominant language must reach.
pub const CORPUS_LANGUAGE_DOMINANCE: f64 = 0.90;

#[derive(Debug, thiserror::Error)]
pub enum GeoError {
    #[error("country code must match [A-Z]{{2}}: {0:?}")]
    BadCountry(String),
    #[error("attribution confidence must lie in [0, 1]: {0}")]
    BadConfidence(f64),
    #[error("resource file {path}: {message}")]
    Resource { path: String, message: String },
    #[error("resource file {path}: {source}")]
    ResourceIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("gold standard is empty")]
    EmptyGold,
}

/// ISO 3166-1 alpha-2 country code, uppercase.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountryCode(String);

impl CountryCode {
    pub fn new(code: &str) -> Result<Self, GeoError> {
        if code.len() == 2 && code.bytes().all(|b| b.is_ascii_uppercase()) {
            Ok(CountryCode(code.to_string()))
        } else {
            Err(GeoError::BadCountry(code.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CountryCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for CountryCode {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CountryCode::new(s)
    }
}

/// Evidence sources. Declaration order doubles as the deterministic
/// tie-break order between candidates of equal confidence.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum AttributionSource {
    Cctld,
    KnowledgeBase,
    CuratedList,
    StructJsonld,
    StructImprint,
    StructFooter,
    StructLocale,
    CorpusLanguage,
}

impl AttributionSource {
    pub const ALL: [AttributionSource; 8] = [
        AttributionSource::Cctld,
        AttributionSource::KnowledgeBase,
        AttributionSource::CuratedList,
        AttributionSource::StructJsonld,
        AttributionSource::StructImprint,
        AttributionSource::StructFooter,
        AttributionSource::StructLocale,
        AttributionSource::CorpusLanguage,
    ];

    /// Fixed confidence tier of the source.
    pub fn confidence(self) -> f64 {
        match self {
            AttributionSource::CuratedList => 0.95,
            AttributionSource::KnowledgeBase => 0.90,
            AttributionSource::StructJsonld => 0.85,
            AttributionSource::Cctld => 0.80,
            AttributionSource::StructFooter => 0.70,
            AttributionSource::StructLocale => 0.65,
            AttributionSource::CorpusLanguage => 0.50,
            AttributionSource::StructImprint => 0.25,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AttributionSource::Cctld => "cctld",
            AttributionSource::KnowledgeBase => "knowledge_base",
            AttributionSource::CuratedList => "curated_list",
            AttributionSource::StructJsonld => "struct_jsonld",
            AttributionSource::StructImprint => "struct_imprint",
            AttributionSource::StructFooter => "struct_footer",
            AttributionSource::StructLocale => "struct_locale",
            AttributionSource::CorpusLanguage => "corpus_language",
        }
    }
}

/// Kinds of structural page evidence, each mapped to its own source tier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructKind {
    JsonldAddress,
    Imprint,
    FooterCopyright,
    AudienceLocale,
}

impl StructKind {
    pub fn source(self) -> AttributionSource {
        match self {
            StructKind::JsonldAddress => AttributionSource::StructJsonld,
            StructKind::Imprint => AttributionSource::StructImprint,
            StructKind::FooterCopyright => AttributionSource::StructFooter,
            StructKind::AudienceLocale => AttributionSource::StructLocale,
        }
    }

    pub fn parse_tag(tag: &str) -> Option<StructKind> {
        match tag {
            "jsonld" => Some(StructKind::JsonldAddress),
            "imprint" => Some(StructKind::Imprint),
            "footer" => Some(StructKind::FooterCopyright),
            "locale" => Some(StructKind::AudienceLocale),
            _ => None,
        }
    }
}

/// One country vote from one source.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AttributionCandidate {
    pub country: CountryCode,
    pub source: AttributionSource,
    pub confidence: f64,
}

impl AttributionCandidate {
    pub fn new(country: CountryCode, source: AttributionSource) -> Self {
        AttributionCandidate {
            country,
            confidence: source.confidence(),
            source,
        }
    }
}

/// The winning candidate, projected onto articles.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CountryAttribution {
    pub country: CountryCode,
    pub source: AttributionSource,
    pub confidence: f64,
}

impl CountryAttribution {
    pub fn validate(&self) -> Result<(), GeoError> {
        CountryCode::new(self.country.as_str())?;
        if !(0.0..=1.0).contains(&self.confidence) || self.confidence.is_nan() {
            return Err(GeoError::BadConfidence(self.confidence));
        }
        Ok(())
    }
}

/// Per-domain resolution outcome.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Resolution {
    Resolved(CountryAttribution),
    /// No candidates, or a conflicting candidate within the window.
    Unresolved,
}

impl Resolution {
    pub fn attribution(&self) -> Option<&CountryAttribution> {
        match self {
            Resolution::Resolved(a) => Some(a),
            Resolution::Unresolved => None,
        }
    }
}

/// Pick the winner among candidates, or abstain on conflict.
///
/// Candidates are ordered by confidence (descending), then source
/// declaration order, then country code, making the outcome independent of
/// input order. The leader wins unless some candidate for a *different*
/// country lies within [`CONFLICT_WINDOW`] of its confidence.
pub fn resolve_domain(candidates: &[AttributionCandidate]) -> Resolution {
    let mut ordered: Vec<&AttributionCandidate> = candidates.iter().collect();
    ordered.sort_by(|a, b| {
        b.confidence
            .partial_cmp(&a.confidence)
            .expect("confidences are never NaN")
            .then_with(|| a.source.cmp(&b.source))
            .then_with(|| a.country.cmp(&b.country))
    });
    let Some(top) = ordered.first() else {
        return Resolution::Unresolved;
    };
    let conflicted = ordered.iter().skip(1).any(|c| {
        c.country != top.country
            && top.confidence - c.confidence <= CONFLICT_WINDOW + WINDOW_EPSILON
    });
    if conflicted {
        Resolution::Unresolved
    } else {
        Resolution::Resolved(CountryAttribution {
            country: top.country.clone(),
            source: top.source,
            confidence: top.confidence,
        })
    }
}

// ---------------------------------------------------------------------------
// Evidence gathering
// ---------------------------------------------------------------------------

/// Everything known about one registered domain before resolution.
#[derive(Clone, Debug, Default)]
pub struct EvidenceBundle {
    pub domain: String,
    /// Structural page evidence: (kind, country) pairs.
    pub structural: Vec<(StructKind, CountryCode)>,
    /// Long-document language histogram over the domain's articles.
    pub language_histogram: BTreeMap<String, u64>,
    pub article_count: u64,
}

/// A named curated list of domain -> country assignments.
#[derive(Clone, Debug)]
pub struct CuratedList {
    pub name: String,
    pub entries: BTreeMap<String, CountryCode>,
}

/// Reference data consulted by the cascade.
#[derive(Clone, Debug, Default)]
pub struct GeoResources {
    /// ccTLD suffix -> country (keys without leading dot, e.g. `de`, `co.uk`).
    pub tld_map: BTreeMap<String, CountryCode>,
    /// ccTLDs marketed generically; never produce a ccTLD candidate.
    pub tld_exclusions: BTreeSet<String>,
    /// Knowledge-base assignments: domain -> country.
    pub knowledge_base: BTreeMap<String, CountryCode>,
    pub curated_lists: Vec<CuratedList>,
    /// Languages spoken predominantly in exactly one country.
    pub single_country_languages: BTreeMap<String, CountryCode>,
    /// Pre-extracted structural evidence per domain.
    pub structural_evidence: BTreeMap<String, Vec<(StructKind, CountryCode)>>,
    pub corpus_language_min_articles: u64,
    pub corpus_language_dominance: f64,
}

/// ccTLD evidence. The candidate suffix is everything after the domain's
/// first label; the longest trailing label sequence present in the TLD map
/// decides, unless that suffix is excluded as generic-use.
pub fn cctld_candidate(domain: &str, resources: &GeoResources) -> Option<AttributionCandidate> {
    let (_, suffix) = domain.split_once('.')?;
    let labels: Vec<&str> = suffix.split('.').collect();
    for start in 0..labels.len() {
        let key = labels[start..].join(".");
        if let Some(country) = resources.tld_map.get(&key) {
            if resources.tld_exclusions.contains(&key) {
                return None;
            }
            return Some(AttributionCandidate::new(
                country.clone(),
                AttributionSource::Cctld,
            ));
        }
    }
    None
}

pub fn knowledge_base_candidate(
    domain: &str,
    resources: &GeoResources,
) -> Option<AttributionCandidate> {
    resources
        .knowledge_base
        .get(domain)
        .map(|c| AttributionCandidate::new(c.clone(), AttributionSource::KnowledgeBase))
}

/// One candidate per curated list containing the domain (lists may
/// disagree; resolution arbitrates).
pub fn curated_list_candidates(
    domain: &str,
    resources: &GeoResources,
) -> Vec<AttributionCandidate> {
    resources
        .curated_lists
        .iter()
        .filter_map(|list| list.entries.get(domain))
        .map(|c| AttributionCandidate::new(c.clone(), AttributionSource::CuratedList))
        .collect()
}

pub fn structural_candidates(bundle: &EvidenceBundle) -> Vec<AttributionCandidate> {
    bundle
        .structural
        .iter()
        .map(|(kind, country)| AttributionCandidate::new(country.clone(), kind.source()))
        .collect()
}

/// Corpus-language evidence: fires only when the domain has enough labeled
/// articles, one language dominates them, and that language maps to a
/// single country.
pub fn corpus_language_candidate(
    bundle: &EvidenceBundle,
    resources: &GeoResources,
) -> Option<AttributionCandidate> {
    let labeled: u64 = bundle.language_histogram.values().sum();
    if labeled < resources.corpus_language_min_articles {
        return None;
    }
    let (code, count) = bundle
        .language_histogram
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))?;
    if (*count as f64) < resources.corpus_language_dominance * labeled as f64 {
        return None;
    }
    resources
        .single_country_languages
        .get(code)
        .map(|c| AttributionCandidate::new(c.clone(), AttributionSource::CorpusLanguage))
}

/// Assemble every candidate the five sources produce for a domain.
pub fn gather_candidates(
    bundle: &EvidenceBundle,
    resources: &GeoResources,
) -> Vec<AttributionCandidate> {
    let mut candidates = Vec::new();
    candidates.extend(cctld_candidate(&bundle.domain, resources));
    candidates.extend(knowledge_base_candidate(&bundle.domain, resources));
    candidates.extend(curated_list_candidates(&bundle.domain, resources));
    candidates.extend(structural_candidates(bundle));
    candidates.extend(corpus_language_candidate(bundle, resources));
    candidates
}

/// Build per-domain evidence bundles from the records of a corpus. The
/// language histogram uses the long-document label; structural evidence is
/// joined in from the resources.
pub fn build_evidence<'a>(
    records: impl IntoIterator<Item = &'a crate::record::ArticleRecord>,
    resources: &GeoResources,
) -> BTreeMap<String, EvidenceBundle> {
    let mut bundles: BTreeMap<String, EvidenceBundle> = BTreeMap::new();
    for record in records {
        if record.registered_domain.is_empty() {
            continue;
        }
        let bundle = bundles
            .entry(record.registered_domain.clone())
            .or_insert_with(|| EvidenceBundle {
                domain: record.registered_domain.clone(),
                ..EvidenceBundle::default()
            });
        bundle.article_count += 1;
        if let Some(label) = &record.lang_long {
            *bundle
                .language_histogram
                .entry(label.code.clone())
                .or_insert(0) += 1;
        }
    }
    for (domain, evidence) in &resources.structural_evidence {
        if let Some(bundle) = bundles.get_mut(domain) {
            bundle.structural.extend(evidence.iter().cloned());
        }
    }
    bundles
}

/// Corpus-level attribution summary.
#[derive(Clone, Debug, Serialize)]
pub struct AttributionSummary {
    pub total_domains: u64,
    pub resolved_domains: u64,
    pub total_articles: u64,
    pub resolved_articles: u64,
    pub resolved_article_share: f64,
    /// Resolved-domain counts by winning source.
    pub per_source: BTreeMap<String, u64>,
}

/// Resolve every domain in the bundle map.
pub fn resolve_all(
    bundles: &BTreeMap<String, EvidenceBundle>,
    resources: &GeoResources,
) -> BTreeMap<String, Resolution> {
    bundles
        .iter()
        .map(|(domain, bundle)| {
            (
                domain.clone(),
                resolve_domain(&gather_candidates(bundle, resources)),
            )
        })
        .collect()
}

/// Project per-domain resolutions onto records in place and summarize.
/// Records whose domain is unresolved (or empty) get `country = None`.
pub fn project_resolutions(
    records: &mut [crate::record::ArticleRecord],
    resolutions: &BTreeMap<String, Resolution>,
) -> AttributionSummary {
    let mut resolved_articles = 0u64;
    for record in records.iter_mut() {
        record.country = resolutions
            .get(&record.registered_domain)
            .and_then(|r| r.attribution())
            .cloned();
        if record.country.is_some() {
            resolved_articles += 1;
        }
    }
    let mut per_source: BTreeMap<String, u64> = BTreeMap::new();
    let mut resolved_domains = 0u64;
    for resolution in resolutions.values() {
        if let Some(attribution) = resolution.attribution() {
            resolved_domains += 1;
            *per_source
                .entry(attribution.source.name().to_string())
                .or_insert(0) += 1;
        }
    }
    let total_articles = records.len() as u64;
    AttributionSummary {
        total_domains: resolutions.len() as u64,
        resolved_domains,
        total_articles,
        resolved_articles,
        resolved_article_share: if total_articles == 0 {
            0.0
        } else {
            resolved_articles as f64 / total_articles as f64
        },
        per_source,
    }
}

/// Attribute an in-memory corpus end to end.
pub fn attribute_corpus(
    records: &mut [crate::record::ArticleRecord],
    resources: &GeoResources,
) -> (BTreeMap<String, Resolution>, AttributionSummary) {
    let bundles = build_evidence(records.iter(), resources);
    let resolutions = resolve_all(&bundles, resources);
    let summary = project_resolutions(records, &resolutions);
    (resolutions, summary)
}

// ---------------------------------------------------------------------------
// Precision against a gold standard
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SourcePrecision {
    pub resolved: u64,
    pub correct: u64,
    /// `None` when the source resolved nothing (distinct from 0.0).
    pub precision: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrecisionReport {
    pub gold_size: u64,
    pub resolved: u64,
    pub correct: u64,
    /// Precision among resolved domains; `None` if nothing resolved.
    pub precision: Option<f64>,
    pub per_source: BTreeMap<String, SourcePrecision>,
}

/// Precision of resolutions against a domain -> country gold standard.
/// Only gold domains are scored; precision is measured among resolved
/// domains, not over the whole gold set.
pub fn precision_report(
    resolutions: &BTreeMap<String, Resolution>,
    gold: &BTreeMap<String, CountryCode>,
) -> Result<PrecisionReport, GeoError> {
    if gold.is_empty() {
        return Err(GeoError::EmptyGold);
    }
    let mut resolved = 0u64;
    let mut correct = 0u64;
    let mut per_source: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for (domain, truth) in gold {
        let Some(attribution) = resolutions.get(domain).and_then(|r| r.attribution()) else {
            continue;
        };
        resolved += 1;
        let entry = per_source
            .entry(attribution.source.name().to_string())
            .or_insert((0, 0));
        entry.0 += 1;
        if &attribution.country == truth {
            correct += 1;
            entry.1 += 1;
        }
    }
    Ok(PrecisionReport {
        gold_size: gold.len() as u64,
        resolved,
        correct,
        precision: (resolved > 0).then(|| correct as f64 / resolved as f64),
        per_source: per_source
            .into_iter()
            .map(|(source, (r, c))| {
                (
                    source,
                    SourcePrecision {
                        resolved: r,
                        correct: c,
                        precision: (r > 0).then(|| c as f64 / r as f64),
                    },
                )
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Structural evidence extraction from HTML
// ---------------------------------------------------------------------------

/// Pull structural country evidence out of a page: the publisher address
/// country from JSON-LD blocks, and the audience locale from the
/// `<html lang="xx-CC">` tag. This is a thin, tolerant extractor — pages
/// that don't match simply produce no evidence.
pub fn extract_structural_evidence(html: &str) -> Vec<(StructKind, CountryCode)> {
    let mut evidence = Vec::new();
    for block in jsonld_blocks(html) {
        if let Ok(value) = serde_json::from_str::<serde_json::Value>(&block) {
            for country in jsonld_publisher_countries(&value) {
                evidence.push((StructKind::JsonldAddress, country));
            }
        }
    }
    if let Some(country) = html_lang_region(html) {
        evidence.push((StructKind::AudienceLocale, country));
    }
    evidence
}

/// Contents of every `<script type="application/ld+json">` block.
fn jsonld_blocks(html: &str) -> Vec<String> {
    let lower = html.to_lowercase();
    let mut blocks = Vec::new();
    let mut from = 0;
    while let Some(rel) = lower[from..].find("<script") {
        let tag_start = from + rel;
        let Some(tag_end_rel) = lower[tag_start..].find('>') else {
            break;
        };
        let tag_end = tag_start + tag_end_rel + 1;
        let tag = &lower[tag_start..tag_end];
        let Some(close_rel) = lower[tag_end..].find("</script") else {
            break;
        };
        if tag.contains("application/ld+json") {
            blocks.push(html[tag_end..tag_end + close_rel].to_string());
        }
        from = tag_end + close_rel + 1;
    }
    blocks
}

/// Walk JSON-LD for `publisher.address.addressCountry` strings, including
/// inside `@graph` arrays and array-valued publishers.
fn jsonld_publisher_countries(value: &serde_json::Value) -> Vec<CountryCode> {
    fn visit(value: &serde_json::Value, out: &mut Vec<CountryCode>) {
        match value {
            serde_json::Value::Array(items) => items.iter().for_each(|v| visit(v, out)),
            serde_json::Value::Object(obj) => {
                if let Some(publisher) = obj.get("publisher") {
                    collect_publisher(publisher, out);
                }
                if let Some(graph) = obj.get("@graph") {
                    visit(graph, out);
                }
            }
            _ => {}
        }
    }
    fn collect_publisher(publisher: &serde_json::Value, out: &mut Vec<CountryCode>) {
        match publisher {
            serde_json::Value::Array(items) => {
                items.iter().for_each(|p| collect_publisher(p, out))
            }
            serde_json::Value::Object(obj) => {
                let country = obj
                    .get("address")
                    .and_then(|a| a.get("addressCountry"))
                    .and_then(|c| c.as_str());
                if let Some(raw) = country {
                    if let Ok(code) = CountryCode::new(&raw.to_uppercase()) {
                        out.push(code);
                    }
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    visit(value, &mut out);
    out
}

/// Region subtag of the root `<html lang="...">` attribute, e.g.
/// `lang="de-AT"` -> AT. A bare language tag carries no region evidence.
fn html_lang_region(html: &str) -> Option<CountryCode> {
    let lower = html.to_lowercase();
    let tag_start = lower.find("<html")?;
    let tag_end = lower[tag_start..].find('>')? + tag_start;
    let tag = &html[tag_start..tag_end];
    let lang_pos = tag.to_lowercase().find("lang=")?;
    let rest = &tag[lang_pos + 5..];
    let quote = rest.chars().next()?;
    let value = if quote == '"' || quote == '\'' {
        rest[1..].split(quote).next()?
    } else {
        rest.split_whitespace().next()?
    };
    let region = value.split('-').nth(1)?;
    CountryCode::new(&region.to_uppercase()).ok()
}

// ---------------------------------------------------------------------------
// Resource loading
// ---------------------------------------------------------------------------

fn parse_tsv_pairs(path_label: &str, content: &str) -> Result<Vec<(String, String)>, GeoError> {
    let mut pairs = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('\t').ok_or_else(|| GeoError::Resource {
            path: path_label.to_string(),
            message: format!("line {}: expected key<TAB>value", idx + 1),
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn parse_country_map(path_label: &str, content: &str) -> Result<BTreeMap<String, CountryCode>, GeoError> {
    parse_tsv_pairs(path_label, content)?
        .into_iter()
        .map(|(k, v)| Ok((k.to_lowercase(), CountryCode::new(&v)?)))
        .collect()
}

fn parse_structural_map(
    path_label: &str,
    content: &str,
) -> Result<BTreeMap<String, Vec<(StructKind, CountryCode)>>, GeoError> {
    let mut map: BTreeMap<String, Vec<(StructKind, CountryCode)>> = BTreeMap::new();
    for (domain, value) in parse_tsv_pairs(path_label, content)? {
        let (tag, country) = value.split_once(':').ok_or_else(|| GeoError::Resource {
            path: path_label.to_string(),
            message: format!("expected KIND:CC, got {value:?}"),
        })?;
        let kind = StructKind::parse_tag(tag).ok_or_else(|| GeoError::Resource {
            path: path_label.to_string(),
            message: format!("unknown structural kind {tag:?}"),
        })?;
        map.entry(domain.to_lowercase())
            .or_default()
            .push((kind, CountryCode::new(country)?));
    }
    Ok(map)
}

impl GeoResources {
    /// Load resources from a directory:
    ///
    /// * `tld_map.tsv` — suffix<TAB>CC
    /// * `tld_exclusions.tsv` — one suffix per line (TAB value ignored)
    /// * `kb.tsv` — domain<TAB>CC
    /// * `single_country_langs.tsv` — lang<TAB>CC
    /// * `structural_evidence.tsv` — domain<TAB>KIND:CC (optional)
    /// * `lists/*.tsv` — one curated list per file, domain<TAB>CC
    pub fn from_dir(dir: &Path) -> Result<GeoResources, GeoError> {
        let read = |name: &str| -> Result<String, GeoError> {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| GeoError::ResourceIo {
                path: path.display().to_string(),
                source: e,
            })
        };
        let mut resources = GeoResources {
            tld_map: parse_country_map("tld_map.tsv", &read("tld_map.tsv")?)?,
            knowledge_base: parse_country_map("kb.tsv", &read("kb.tsv")?)?,
            single_country_languages: parse_country_map(
                "single_country_langs.tsv",
                &read("single_country_langs.tsv")?,
            )?,
            corpus_language_min_articles: CORPUS_LANGUAGE_MIN_ARTICLES,
            corpus_language_dominance: CORPUS_LANGUAGE_DOMINANCE,
            ..GeoResources::default()
        };
        let exclusions = read("tld_exclusions.tsv")?;
        resources.tld_exclusions = exclusions
            .lines()
            .map(|l| l.split('\t').next().unwrap_or(l).trim().to_lowercase())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let structural_path = dir.join("structural_evidence.tsv");
        if structural_path.exists() {
            resources.structural_evidence =
                parse_structural_map("structural_evidence.tsv", &read("structural_evidence.tsv")?)?;
        }
        let lists_dir = dir.join("lists");
        if lists_dir.is_dir() {
            let mut paths: Vec<_> = fs::read_dir(&lists_dir)
                .map_err(|e| GeoError::ResourceIo {
                    path: lists_dir.display().to_string(),
                    source: e,
                })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "tsv"))
                .collect();
            paths.sort();
            for path in paths {
                let name = path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("list")
                    .to_string();
                let content = fs::read_to_string(&path).map_err(|e| GeoError::ResourceIo {
                    path: path.display().to_string(),
                    source: e,
                })?;
                resources.curated_lists.push(CuratedList {
                    name,
                    entries: parse_country_map(&path.display().to_string(), &content)?,
                });
            }
        }
        Ok(resources)
    }

    /// Resources bundled with the crate: the ccTLD map and exclusions, a
    /// starter knowledge base and curated lists, and the single-country
    /// language map. Structural evidence is corpus-specific and empty.
    pub fn bundled() -> &'static GeoResources {
        static RESOURCES: OnceLock<GeoResources> = OnceLock::new();
        RESOURCES.get_or_init(|| {
            let mut resources = GeoResources {
                tld_map: parse_country_map(
                    "bundled tld_map",
                    include_str!("../data/geo/tld_map.tsv"),
                )
                .expect("bundled tld map is valid"),
                knowledge_base: parse_country_map(
                    "bundled kb",
                    include_str!("../data/geo/kb.tsv"),
                )
                .expect("bundled kb is valid"),
                single_country_languages: parse_country_map(
                    "bundled single_country_langs",
                    include_str!("../data/geo/single_country_langs.tsv"),
                )
                .expect("bundled language map is valid"),
                corpus_language_min_articles: CORPUS_LANGUAGE_MIN_ARTICLES,
                corpus_language_dominance: CORPUS_LANGUAGE_DOMINANCE,
                ..GeoResources::default()
            };
            resources.tld_exclusions = include_str!("../data/geo/tld_exclusions.tsv")
                .lines()
                .map(|l| l.trim().to_string())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            for (name, content) in [
                ("press-freedom-tracker", include_str!("../data/geo/lists/press-freedom-tracker.tsv")),
                ("us-news-domains", include_str!("../data/geo/lists/us-news-domains.tsv")),
                ("world-news-multilingual", include_str!("../data/geo/lists/world-news-multilingual.tsv")),
                ("world-news-english", include_str!("../data/geo/lists/world-news-english.tsv")),
            ] {
                resources.curated_lists.push(CuratedList {
                    name: name.to_string(),
                    entries: parse_country_map(name, content).expect("bundled list is valid"),
                });
            }
            resources
        })
    }
}
