//! Substring queries against opened shards.
//!
//! A pattern's occurrences form one contiguous run of the suffix array,
//! found with two binary searches (lower and upper bound) that each
//! compare at most `pattern.len()` bytes per probe — O(m log n) overall,
//! independent of how often the pattern occurs.

use crate::shard::{OpenMode, Shard, ShardError, SENTINEL};
use ngix_core::partition::PartitionKey;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("empty pattern")]
    EmptyPattern,
    #[error("pattern contains a NUL byte")]
    PatternContainsNul,
    #[error("offset {0} is out of range")]
    OffsetOutOfRange(u64),
    #[error("offset {0} points at a document separator")]
    SentinelOffset(u64),
    #[error(transparent)]
    Shard(#[from] ShardError),
    #[error("all {0} shards failed")]
    AllShardsFailed(usize),
    #[error("text at offset {0} is not valid UTF-8")]
    NotUtf8(u64),
}

fn check_pattern(pattern: &[u8]) -> Result<(), QueryError> {
    if pattern.is_empty() {
        return Err(QueryError::EmptyPattern);
    }
    if pattern.contains(&SENTINEL) {
        return Err(QueryError::PatternContainsNul);
    }
    Ok(())
}

/// Half-open run `[lo, hi)` of suffix-array entries whose suffixes start
/// with the pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SaRange {
    pub lo: u64,
    pub hi: u64,
}

impl SaRange {
    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

/// Compare the suffix at `pos` against the pattern, looking at no more
/// than `pattern.len()` bytes. `Equal` means the pattern is a prefix of
/// the suffix.
#[inline]
fn compare_suffix(text: &[u8], pos: u64, pattern: &[u8]) -> Ordering {
    let suffix = &text[pos as usize..];
    let m = pattern.len().min(suffix.len());
    match suffix[..m].cmp(&pattern[..m]) {
        Ordering::Equal if suffix.len() < pattern.len() => Ordering::Less,
        ordering => ordering,
    }
}

fn search_bound(
    shard: &Shard,
    pattern: &[u8],
    upper: bool,
    probes: &mut u32,
) -> u64 {
    let text = shard.text();
    let (mut lo, mut hi) = (0u64, shard.n_text());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        *probes += 1;
        let ordering = compare_suffix(text, shard.sa_at(mid), pattern);
        let go_right = if upper {
            ordering != Ordering::Greater
        } else {
            ordering == Ordering::Less
        };
        if go_right {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Locate the pattern's suffix-array range along with the number of
/// suffix probes the two binary searches performed. The probe count is
/// bounded by `2 * (ceil(log2(n_text)) + 1)`.
pub fn sa_range_counted(shard: &Shard, pattern: &[u8]) -> Result<(SaRange, u32), QueryError> {
    check_pattern(pattern)?;
    let mut probes = 0;
    let lo = search_bound(shard, pattern, false, &mut probes);
    let hi = search_bound(shard, pattern, true, &mut probes);
    Ok((SaRange { lo, hi }, probes))
}

pub fn sa_range(shard: &Shard, pattern: &[u8]) -> Result<SaRange, QueryError> {
    sa_range_counted(shard, pattern).map(|(range, _)| range)
}

/// Number of occurrences of the pattern in the shard's text.
pub fn count(shard: &Shard, pattern: &[u8]) -> Result<u64, QueryError> {
    Ok(sa_range(shard, pattern)?.len())
}

/// Absolute text offsets of all occurrences, sorted ascending. With a
/// limit, the smallest `limit` offsets are returned.
pub fn locate(shard: &Shard, pattern: &[u8], limit: Option<usize>) -> Result<Vec<u64>, QueryError> {
    let range = sa_range(shard, pattern)?;
    let mut offsets: Vec<u64> = (range.lo..range.hi).map(|i| shard.sa_at(i)).collect();
    offsets.sort_unstable();
    if let Some(limit) = limit {
        offsets.truncate(limit);
    }
    Ok(offsets)
}

/// A match projected onto its document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DocPointer {
    pub partition: PartitionKey,
    pub doc_ordinal: u64,
    pub record_id: String,
    /// Offsets of the matches within the document body.
    pub match_offsets: Vec<u64>,
}

/// Map an absolute text offset to `(doc ordinal, in-document offset)`.
/// Sentinel offsets belong to no document and are an error.
pub fn resolve_doc(shard: &Shard, offset: u64) -> Result<(u64, u64), QueryError> {
    if offset >= shard.n_text() {
        return Err(QueryError::OffsetOutOfRange(offset));
    }
    if shard.text()[offset as usize] == SENTINEL {
        return Err(QueryError::SentinelOffset(offset));
    }
    // Greatest ordinal whose start is <= offset.
    let (mut lo, mut hi) = (0u64, shard.n_docs());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if shard.doc_start(mid) <= offset {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let ordinal = lo - 1; // n_docs > 0 because the text is non-empty
    Ok((ordinal, offset - shard.doc_start(ordinal)))
}

/// Find documents containing the pattern.
///
/// With `dedupe`, one pointer per document carries all of its match
/// offsets and `limit` caps the number of documents; without it, each
/// occurrence yields its own single-offset pointer and `limit` caps
/// occurrences. Pointers are ordered by (ordinal, offset).
pub fn search_docs(
    shard: &Shard,
    pattern: &[u8],
    limit: Option<usize>,
    dedupe: bool,
) -> Result<Vec<DocPointer>, QueryError> {
    let offsets = locate(shard, pattern, None)?;
    let mut by_doc: std::collections::BTreeMap<u64, Vec<u64>> = std::collections::BTreeMap::new();
    for offset in offsets {
        let (ordinal, in_doc) = resolve_doc(shard, offset)?;
        by_doc.entry(ordinal).or_default().push(in_doc);
    }
    let mut pointers = Vec::new();
    'outer: for (ordinal, match_offsets) in by_doc {
        let record_id = shard.doc_id(ordinal)?.to_string();
        if dedupe {
            pointers.push(DocPointer {
                partition: shard.partition(),
                doc_ordinal: ordinal,
                record_id,
                match_offsets,
            });
            if limit.is_some_and(|l| pointers.len() >= l) {
                break;
            }
        } else {
            for offset in match_offsets {
                pointers.push(DocPointer {
                    partition: shard.partition(),
                    doc_ordinal: ordinal,
                    record_id: record_id.clone(),
                    match_offsets: vec![offset],
                });
                if limit.is_some_and(|l| pointers.len() >= l) {
                    break 'outer;
                }
            }
        }
    }
    Ok(pointers)
}

/// A UTF-8 window of up to `context` bytes on each side of `offset`,
/// clipped to the document and snapped outward to code-point boundaries.
pub fn snippet(shard: &Shard, offset: u64, context: usize) -> Result<String, QueryError> {
    let (ordinal, _) = resolve_doc(shard, offset)?;
    let (doc_start, doc_end) = shard.doc_bounds(ordinal)?;
    let text = shard.text();
    let mut start = offset.saturating_sub(context as u64).max(doc_start) as usize;
    let mut end = (offset + context as u64).min(doc_end) as usize;
    // Snap outward past UTF-8 continuation bytes.
    while start > doc_start as usize && text[start] & 0xC0 == 0x80 {
        start -= 1;
    }
    while end < doc_end as usize && text[end] & 0xC0 == 0x80 {
        end += 1;
    }
    std::str::from_utf8(&text[start..end])
        .map(str::to_string)
        .map_err(|_| QueryError::NotUtf8(offset))
}

// ---------------------------------------------------------------------------
// Shard sets
// ---------------------------------------------------------------------------

/// One shard slot in a set: the partition and path are always known; the
/// shard itself may have failed to open.
pub struct ShardEntry {
    pub partition: PartitionKey,
    pub path: PathBuf,
    pub shard: Result<Arc<Shard>, String>,
}

/// An ordered collection of monthly shards, resilient to individual
/// failures: a shard that fails to open stays in the set as an error
/// entry so results can report it explicitly.
pub struct ShardSet {
    entries: Vec<ShardEntry>,
}

impl ShardSet {
    /// Open every `shard-YYYY-MM.ngix` in a directory, sorted by
    /// partition. Unopenable shards become error entries.
    pub fn open_dir(dir: &Path, mode: OpenMode) -> Result<ShardSet, ShardError> {
        let mut entries = Vec::new();
        for dir_entry in std::fs::read_dir(dir)? {
            let path = dir_entry?.path();
            let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
                continue;
            };
            if !name.starts_with("shard-") || !name.ends_with(".ngix") {
                continue;
            }
            let partition = crate::shard::partition_from_file_name(&path)?;
            let shard = Shard::open(&path, mode).map(Arc::new).map_err(|e| e.to_string());
            entries.push(ShardEntry {
                partition,
                path,
                shard,
            });
        }
        entries.sort_by_key(|e| e.partition);
        Ok(ShardSet { entries })
    }

    pub fn from_entries(mut entries: Vec<ShardEntry>) -> ShardSet {
        entries.sort_by_key(|e| e.partition);
        ShardSet { entries }
    }

    pub fn entries(&self) -> &[ShardEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partitions(&self) -> Vec<PartitionKey> {
        self.entries.iter().map(|e| e.partition).collect()
    }

    pub fn get(&self, partition: PartitionKey) -> Option<&ShardEntry> {
        self.entries.iter().find(|e| e.partition == partition)
    }

    /// Subset with only the requested partitions; `None` if any is absent.
    pub fn filter(&self, partitions: &[PartitionKey]) -> Option<ShardSet> {
        let mut entries = Vec::new();
        for &partition in partitions {
            let entry = self.get(partition)?;
            entries.push(ShardEntry {
                partition: entry.partition,
                path: entry.path.clone(),
                shard: entry.shard.clone(),
            });
        }
        Some(ShardSet::from_entries(entries))
    }

    pub fn opened(&self) -> impl Iterator<Item = (PartitionKey, &Arc<Shard>)> {
        self.entries
            .iter()
            .filter_map(|e| e.shard.as_ref().ok().map(|s| (e.partition, s)))
    }

    pub fn failed_count(&self) -> usize {
        self.entries.iter().filter(|e| e.shard.is_err()).count()
    }
}

/// Per-shard count outcome inside a [`MultiCount`].
#[derive(Clone, Debug, Serialize)]
pub struct ShardCount {
    pub partition: PartitionKey,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Aggregated multi-shard count: per-shard outcomes in partition order,
/// plus the total over the shards that answered.
#[derive(Clone, Debug, Serialize)]
pub struct MultiCount {
    pub per_shard: Vec<ShardCount>,
    pub total: u64,
    pub failed_shards: usize,
}

/// Count the pattern across every shard in the set, in parallel. Shards
/// that failed to open (or fail to answer) appear as error entries; only
/// if every shard fails is the whole query an error.
pub fn multi_count(set: &ShardSet, pattern: &[u8]) -> Result<MultiCount, QueryError> {
    check_pattern(pattern)?;
    let per_shard: Vec<ShardCount> = set
        .entries()
        .par_iter()
        .map(|entry| match &entry.shard {
            Ok(shard) => match count(shard, pattern) {
                Ok(n) => ShardCount {
                    partition: entry.partition,
                    count: Some(n),
                    error: None,
                },
                Err(e) => ShardCount {
                    partition: entry.partition,
                    count: None,
                    error: Some(e.to_string()),
                },
            },
            Err(e) => ShardCount {
                partition: entry.partition,
                count: None,
                error: Some(e.clone()),
            },
        })
        .collect();
    let failed_shards = per_shard.iter().filter(|s| s.error.is_some()).count();
    if !per_shard.is_empty() && failed_shards == per_shard.len() {
        return Err(QueryError::AllShardsFailed(failed_shards));
    }
    let total = per_shard.iter().filter_map(|s| s.count).sum();
    Ok(MultiCount {
        per_shard,
        total,
        failed_shards,
    })
}

/// Search every opened shard in the set, aggregating pointers in
/// partition order under a global limit.
pub fn multi_search(
    set: &ShardSet,
    pattern: &[u8],
    limit: Option<usize>,
    dedupe: bool,
) -> Result<(Vec<DocPointer>, Vec<ShardCount>), QueryError> {
    check_pattern(pattern)?;
    let mut pointers = Vec::new();
    let mut errors = Vec::new();
    for entry in set.entries() {
        let remaining = limit.map(|l| l.saturating_sub(pointers.len()));
        if remaining == Some(0) {
            break;
        }
        match &entry.shard {
            Ok(shard) => match search_docs(shard, pattern, remaining, dedupe) {
                Ok(mut found) => pointers.append(&mut found),
                Err(e) => errors.push(ShardCount {
                    partition: entry.partition,
                    count: None,
                    error: Some(e.to_string()),
                }),
            },
            Err(e) => errors.push(ShardCount {
                partition: entry.partition,
                count: None,
                error: Some(e.clone()),
            }),
        }
    }
    Ok((pointers, errors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shard::ShardIndex;

    fn shard_of(texts: &[&str]) -> Shard {
        let key: PartitionKey = "2022-06".parse().unwrap();
        ShardIndex::from_texts(
            key,
            texts
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("2022-06/{i}"), t.to_string())),
        )
        .unwrap()
        .to_shard()
    }

    #[test]
    fn count_known_patterns() {
        let shard = shard_of(&["banana", "bandana", "an"]);
        assert_eq!(count(&shard, b"an").unwrap(), 5);
        assert_eq!(count(&shard, b"ana").unwrap(), 3);
        assert_eq!(count(&shard, b"banana").unwrap(), 1);
        assert_eq!(count(&shard, b"xyz").unwrap(), 0);
        // No cross-document phantom matches through the sentinel.
        assert_eq!(count(&shard, b"nabandana").unwrap(), 0);
    }

    #[test]
    fn pattern_validation() {
        let shard = shard_of(&["abc"]);
        assert!(matches!(count(&shard, b""), Err(QueryError::EmptyPattern)));
        assert!(matches!(
            count(&shard, b"a\x00b"),
            Err(QueryError::PatternContainsNul)
        ));
    }

    #[test]
    fn locate_is_sorted_and_limited() {
        let shard = shard_of(&["banana", "bandana", "an"]);
        let all = locate(&shard, b"an", None).unwrap();
        assert_eq!(all, vec![1, 3, 8, 11, 15]);
        assert_eq!(locate(&shard, b"an", Some(2)).unwrap(), vec![1, 3]);
    }

    #[test]
    fn resolve_doc_maps_offsets() {
        let shard = shard_of(&["banana", "bandana", "an"]);
        assert_eq!(resolve_doc(&shard, 0).unwrap(), (0, 0));
        assert_eq!(resolve_doc(&shard, 5).unwrap(), (0, 5));
        assert_eq!(resolve_doc(&shard, 7).unwrap(), (1, 0));
        assert_eq!(resolve_doc(&shard, 15).unwrap(), (2, 0));
        assert!(matches!(
            resolve_doc(&shard, 6),
            Err(QueryError::SentinelOffset(6))
        ));
        assert!(matches!(
            resolve_doc(&shard, 999),
            Err(QueryError::OffsetOutOfRange(999))
        ));
    }

    #[test]
    fn search_docs_dedupes_and_orders() {
        let shard = shard_of(&["banana", "bandana", "an"]);
        let docs = search_docs(&shard, b"an", None, true).unwrap();
        assert_eq!(docs.len(), 3);
        assert_eq!(docs[0].doc_ordinal, 0);
        assert_eq!(docs[0].match_offsets, vec![1, 3]);
        assert_eq!(docs[0].record_id, "2022-06/0");
        assert_eq!(docs[2].match_offsets, vec![0]);

        let occurrences = search_docs(&shard, b"an", None, false).unwrap();
        assert_eq!(occurrences.len(), 5);
        assert!(occurrences.iter().all(|p| p.match_offsets.len() == 1));

        let limited = search_docs(&shard, b"an", Some(2), true).unwrap();
        assert_eq!(limited.len(), 2);
    }

    #[test]
    fn snippet_respects_document_bounds_and_utf8() {
        let shard = shard_of(&["über die brücke", "plain"]);
        let offsets = locate(&shard, "brücke".as_bytes(), None).unwrap();
        assert_eq!(offsets.len(), 1);
        let text = snippet(&shard, offsets[0], 100).unwrap();
        assert_eq!(text, "über die brücke");
        // A 1-byte window around a multi-byte char still yields valid UTF-8.
        let narrow = snippet(&shard, offsets[0], 1).unwrap();
        assert!(narrow.contains('b'));
        assert!(std::str::from_utf8(narrow.as_bytes()).is_ok());
    }

    #[test]
    fn multi_count_isolates_failures() {
        let a = shard_of(&["aaa"]);
        let entries = vec![
            ShardEntry {
                partition: "2022-06".parse().unwrap(),
                path: PathBuf::from("a"),
                shard: Ok(Arc::new(a)),
            },
            ShardEntry {
                partition: "2022-07".parse().unwrap(),
                path: PathBuf::from("b"),
                shard: Err("disk on fire".to_string()),
            },
        ];
        let set = ShardSet::from_entries(entries);
        let result = multi_count(&set, b"aa").unwrap();
        assert_eq!(result.total, 2);
        assert_eq!(result.failed_shards, 1);
        assert_eq!(result.per_shard.len(), 2);
        assert_eq!(result.per_shard[0].count, Some(2));
        assert!(result.per_shard[1].error.as_deref().unwrap().contains("fire"));
    }

    #[test]
    fn multi_count_errors_when_all_fail() {
        let entries = vec![ShardEntry {
            partition: "2022-06".parse().unwrap(),
            path: PathBuf::from("a"),
            shard: Err("gone".to_string()),
        }];
        let set = ShardSet::from_entries(entries);
        assert!(matches!(
            multi_count(&set, b"x"),
            Err(QueryError::AllShardsFailed(1))
        ));
    }

    #[test]
    fn empty_set_counts_zero() {
        let set = ShardSet::from_entries(vec![]);
        let result = multi_count(&set, b"x").unwrap();
        assert_eq!(result.total, 0);
        assert!(result.per_shard.is_empty());
    }
}
