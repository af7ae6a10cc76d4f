//! Article records and their newline-delimited JSON wire form.

use crate::geo::CountryAttribution;
use crate::lang::LanguageLabel;
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::io::{self, BufRead, Write};

/// One crawled news article. The struct field order is the canonical JSON
/// field order on output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArticleRecord {
    /// Partition-scoped identifier `YYYY-MM/<ordinal>`, assigned at ingest.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub record_id: String,
    pub url: String,
    pub host: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub registered_domain: String,
    pub warc_date: DateTime<Utc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub publish_date: Option<DateTime<Utc>>,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang_long: Option<LanguageLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang_short: Option<LanguageLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang_all: Option<LanguageLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub country: Option<CountryAttribution>,
    /// Upstream WARC record URN, kept verbatim when the source provides one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warc_urn: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    /// The line is not well-formed JSON at all.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// The line is JSON but violates the record schema.
    #[error("schema violation: {0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> RecordError {
    RecordError::Schema(msg.into())
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<Option<&'a str>, RecordError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(other) => Err(schema(format!("field {key:?} must be a string, got {other}"))),
    }
}

fn parse_timestamp(raw: &str, key: &str) -> Result<DateTime<Utc>, RecordError> {
    DateTime::parse_from_rfc3339(raw)
        .map(|dt| dt.with_timezone(&Utc))
        .map_err(|e| schema(format!("field {key:?} is not an RFC 3339 timestamp ({e}): {raw:?}")))
}

/// Drop NUL code points from article text. NUL is reserved as the document
/// separator inside shard files and must never appear in indexed text.
pub fn strip_nul(text: &str) -> String {
    if text.contains('\0') {
        text.replace('\0', "")
    } else {
        text.to_string()
    }
}

/// Parse one NDJSON line into a record.
///
/// Unknown fields are ignored. `url` and `warc_date` are required; `host`
/// is derived from the URL when absent. Text is sanitized of NUL code
/// points. Returns [`RecordError::Json`] for malformed JSON and
/// [`RecordError::Schema`] for well-formed JSON that breaks the schema.
pub fn parse_record_line(line: &str) -> Result<ArticleRecord, RecordError> {
    let value: Value = serde_json::from_str(line)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("line is not a JSON object"))?;

    let url_raw = get_str(obj, "url")?
        .filter(|s| !s.is_empty())
        .ok_or_else(|| schema("missing required field \"url\""))?;
    let parsed_url = url::Url::parse(url_raw)
        .map_err(|e| schema(format!("field \"url\" is not an absolute URL ({e}): {url_raw:?}")))?;

    let host = match get_str(obj, "host")?.filter(|s| !s.is_empty()) {
        Some(h) => h.to_ascii_lowercase(),
        None => parsed_url
            .host_str()
            .ok_or_else(|| schema(format!("URL has no host: {url_raw:?}")))?
            .to_ascii_lowercase(),
    };

    let warc_date_raw = get_str(obj, "warc_date")?
        .ok_or_else(|| schema("missing required field \"warc_date\""))?;
    let warc_date = parse_timestamp(warc_date_raw, "warc_date")?;

    let publish_date = match get_str(obj, "publish_date")? {
        Some(raw) => Some(parse_timestamp(raw, "publish_date")?),
        None => None,
    };

    let parse_label = |key: &str| -> Result<Option<LanguageLabel>, RecordError> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let label: LanguageLabel = serde_json::from_value(v.clone())
                    .map_err(|e| schema(format!("field {key:?} is not a language label: {e}")))?;
                label
                    .validate()
                    .map_err(|e| schema(format!("field {key:?}: {e}")))?;
                Ok(Some(label))
            }
        }
    };

    let country = match obj.get("country") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let attribution: CountryAttribution = serde_json::from_value(v.clone())
                .map_err(|e| schema(format!("field \"country\" is not an attribution: {e}")))?;
            attribution
                .validate()
                .map_err(|e| schema(format!("field \"country\": {e}")))?;
            Some(attribution)
        }
    };

    Ok(ArticleRecord {
        record_id: get_str(obj, "record_id")?.unwrap_or_default().to_string(),
        url: url_raw.to_string(),
        host,
        registered_domain: get_str(obj, "registered_domain")?.unwrap_or_default().to_string(),
        warc_date,
        publish_date,
        title: get_str(obj, "title")?.unwrap_or_default().to_string(),
        text: strip_nul(get_str(obj, "text")?.unwrap_or_default()),
        author: get_str(obj, "author")?.map(str::to_string),
        lang_long: parse_label("lang_long")?,
        lang_short: parse_label("lang_short")?,
        lang_all: parse_label("lang_all")?,
        country,
        warc_urn: get_str(obj, "warc_urn")?.map(str::to_string),
    })
}

/// Serialize a record to a single NDJSON line (no trailing newline).
/// Output is deterministic: fixed field order, absent optionals omitted.
pub fn write_record_line(record: &ArticleRecord) -> String {
    serde_json::to_string(record).expect("record serialization cannot fail")
}

/// Outcome of reading one line from a record stream.
pub struct LineOutcome {
    /// 1-based line number within the stream.
    pub line_no: u64,
    pub result: Result<ArticleRecord, RecordError>,
}

/// Iterate records from an NDJSON reader, skipping blank lines. I/O errors
/// terminate the iterator with a final `Err`.
pub fn read_records<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = io::Result<LineOutcome>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Err(e) => Some(Err(e)),
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(Ok(LineOutcome {
                line_no: idx as u64 + 1,
                result: parse_record_line(&l),
            })),
        })
}

/// Write records as NDJSON, one line each.
pub fn write_records<'a, W: Write>(
    writer: &mut W,
    records: impl IntoIterator<Item = &'a ArticleRecord>,
) -> io::Result<()> {
    for record in records {
        writer.write_all(write_record_line(record).as_bytes())?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
