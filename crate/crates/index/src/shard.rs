//! Immutable monthly shard files.
//!
//! A shard concatenates the text of one month's documents, each terminated
//! by a NUL sentinel, and stores the suffix array of that byte sequence
//! plus a document table. The layout is little-endian with 64-bit offsets:
//!
//! ```text
//! offset  size  field
//!      0     8  magic "NGIXSHD1"
//!      8     4  version (1)
//!     12     4  reserved (0, keeps the header 8-byte aligned)
//!     16     8  n_text   — text section length in bytes
//!     24     8  n_docs   — number of documents
//!     32     8  text_off
//!     40     8  sa_off
//!     48     8  doc_starts_off
//!     56     8  doc_ids_off
//!     64     8  checksum — FNV-1a 64 over the text section
//! ```
//!
//! Sections begin 8-byte aligned (zero padding in between): text bytes,
//! then the suffix array (n_text × u64), then document start offsets
//! (n_docs × u64), then document ids (n_docs × [u32 length, UTF-8 bytes]).
//! Writing is deterministic: the same documents in the same order produce
//! byte-identical files.

use crate::sais::suffix_array;
use memmap2::Mmap;
use ngix_core::partition::{month_partition_key, PartitionKey};
use ngix_core::record::ArticleRecord;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::sync::OnceLock;

pub const MAGIC: [u8; 8] = *b"NGIXSHD1";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: u64 = 72;

/// Document separator byte inside the text section.
pub const SENTINEL: u8 = 0;

#[derive(Debug, thiserror::Error)]
pub enum ShardError {
    #[error("shard io: {0}")]
    Io(#[from] io::Error),
    #[error("record {record_id:?} belongs to partition {actual}, not {expected}")]
    MixedPartition {
        record_id: String,
        expected: PartitionKey,
        actual: PartitionKey,
    },
    #[error("record at ordinal {0} has no record_id; run ingest first")]
    MissingRecordId(u64),
    #[error("document {0:?} contains a NUL byte")]
    TextContainsNul(String),
    #[error("{path}: not a shard file: {reason}")]
    BadFormat { path: String, reason: String },
    #[error("{path}: unsupported shard version {version}")]
    BadVersion { path: String, version: u32 },
    #[error("shard file name {0:?} does not match shard-YYYY-MM.ngix")]
    BadFileName(String),
    #[error("doc ordinal {ordinal} out of range (shard has {n_docs} docs)")]
    DocOutOfRange { ordinal: u64, n_docs: u64 },
}

fn bad_format(path: &Path, reason: impl Into<String>) -> ShardError {
    ShardError::BadFormat {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

/// FNV-1a 64-bit hash.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn align8(n: u64) -> u64 {
    n.div_ceil(8) * 8
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

/// A fully built, in-memory shard ready to be written.
#[derive(Debug)]
pub struct ShardIndex {
    pub partition: PartitionKey,
    pub text: Vec<u8>,
    pub sa: Vec<u64>,
    pub doc_starts: Vec<u64>,
    pub doc_ids: Vec<String>,
    pub checksum: u64,
}

impl ShardIndex {
    /// Build from raw `(doc_id, text)` pairs. Empty texts are skipped;
    /// texts must be NUL-free.
    pub fn from_texts(
        partition: PartitionKey,
        docs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<ShardIndex, ShardError> {
        let mut text = Vec::new();
        let mut doc_starts = Vec::new();
        let mut doc_ids = Vec::new();
        for (id, body) in docs {
            if body.is_empty() {
                continue;
            }
            if body.as_bytes().contains(&SENTINEL) {
                return Err(ShardError::TextContainsNul(id));
            }
            doc_starts.push(text.len() as u64);
            doc_ids.push(id);
            text.extend_from_slice(body.as_bytes());
            text.push(SENTINEL);
        }
        let sa = suffix_array(&text);
        let checksum = fnv1a64(&text);
        Ok(ShardIndex {
            partition,
            text,
            sa,
            doc_starts,
            doc_ids,
            checksum,
        })
    }

    /// Build a shard from one month's records. Every record must already
    /// carry a record id and belong to `partition`; records with empty
    /// text are skipped.
    pub fn build(
        partition: PartitionKey,
        records: impl IntoIterator<Item = ArticleRecord>,
    ) -> Result<ShardIndex, ShardError> {
        let mut docs = Vec::new();
        for (ordinal, record) in records.into_iter().enumerate() {
            let actual = month_partition_key(record.warc_date);
            if actual != partition {
                return Err(ShardError::MixedPartition {
                    record_id: record.record_id.clone(),
                    expected: partition,
                    actual,
                });
            }
            if record.record_id.is_empty() {
                return Err(ShardError::MissingRecordId(ordinal as u64));
            }
            docs.push((record.record_id, record.text));
        }
        ShardIndex::from_texts(partition, docs)
    }

    pub fn n_docs(&self) -> u64 {
        self.doc_starts.len() as u64
    }

    /// Serialize to the on-disk layout.
    pub fn write_to(&self, sink: &mut impl Write) -> io::Result<u64> {
        let n_text = self.text.len() as u64;
        let n_docs = self.n_docs();
        let text_off = HEADER_LEN;
        let sa_off = align8(text_off + n_text);
        let doc_starts_off = sa_off + 8 * n_text;
        let doc_ids_off = doc_starts_off + 8 * n_docs;

        let mut header = Vec::with_capacity(HEADER_LEN as usize);
        header.extend_from_slice(&MAGIC);
        header.extend_from_slice(&VERSION.to_le_bytes());
        header.extend_from_slice(&0u32.to_le_bytes()); // reserved
        header.extend_from_slice(&n_text.to_le_bytes());
        header.extend_from_slice(&n_docs.to_le_bytes());
        header.extend_from_slice(&text_off.to_le_bytes());
        header.extend_from_slice(&sa_off.to_le_bytes());
        header.extend_from_slice(&doc_starts_off.to_le_bytes());
        header.extend_from_slice(&doc_ids_off.to_le_bytes());
        header.extend_from_slice(&self.checksum.to_le_bytes());
        debug_assert_eq!(header.len() as u64, HEADER_LEN);
        sink.write_all(&header)?;

        sink.write_all(&self.text)?;
        let padding = (sa_off - text_off - n_text) as usize;
        sink.write_all(&[0u8; 8][..padding])?;
        for &s in &self.sa {
            sink.write_all(&s.to_le_bytes())?;
        }
        for &d in &self.doc_starts {
            sink.write_all(&d.to_le_bytes())?;
        }
        let mut ids_len = 0u64;
        for id in &self.doc_ids {
            sink.write_all(&(id.len() as u32).to_le_bytes())?;
            sink.write_all(id.as_bytes())?;
            ids_len += 4 + id.len() as u64;
        }
        Ok(doc_ids_off + ids_len)
    }

    /// Write to `dir` under the canonical shard file name.
    pub fn write_to_dir(&self, dir: &Path) -> Result<std::path::PathBuf, ShardError> {
        let path = dir.join(self.partition.shard_file_name());
        let mut file = io::BufWriter::new(File::create(&path)?);
        self.write_to(&mut file)?;
        file.flush()?;
        Ok(path)
    }

    /// Round-trip through the serialized form into an owned, queryable
    /// shard (used by tests and the preloaded open mode).
    pub fn to_shard(&self) -> Shard {
        let mut bytes = Vec::new();
        self.write_to(&mut bytes).expect("writing to memory cannot fail");
        Shard::from_bytes(self.partition, bytes).expect("self-serialized shard is valid")
    }
}

// ---------------------------------------------------------------------------
// Opening
// ---------------------------------------------------------------------------

enum Backing {
    Mapped(Mmap),
    Owned(Vec<u8>),
}

impl Backing {
    fn bytes(&self) -> &[u8] {
        match self {
            Backing::Mapped(m) => m,
            Backing::Owned(v) => v,
        }
    }
}

/// How to back an opened shard.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpenMode {
    /// Memory-map the file; pages fault in on demand.
    Mapped,
    /// Read the whole file into memory up front.
    Preloaded,
}

impl OpenMode {
    pub fn name(&self) -> &'static str {
        match self {
            OpenMode::Mapped => "mapped",
            OpenMode::Preloaded => "preloaded",
        }
    }
}

impl std::str::FromStr for OpenMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mapped" | "mmap" => Ok(OpenMode::Mapped),
            "preloaded" | "ram" => Ok(OpenMode::Preloaded),
            other => Err(format!("unknown open mode {other:?} (mapped|preloaded)")),
        }
    }
}

struct Header {
    n_text: u64,
    n_docs: u64,
    text_off: u64,
    sa_off: u64,
    doc_starts_off: u64,
    doc_ids_off: u64,
    checksum: u64,
}

/// An opened, immutable shard. Open cost is O(header): sections are
/// validated by bounds only, and the doc-id offset table is built lazily
/// on first id lookup.
pub struct Shard {
    partition: PartitionKey,
    backing: Backing,
    header: Header,
    doc_id_offsets: OnceLock<Result<Vec<u64>, String>>,
}

fn read_u64(bytes: &[u8], offset: usize) -> u64 {
    u64::from_le_bytes(bytes[offset..offset + 8].try_into().unwrap())
}

fn read_u32(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

/// Parse `shard-YYYY-MM.ngix` into its partition key.
pub fn partition_from_file_name(path: &Path) -> Result<PartitionKey, ShardError> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| ShardError::BadFileName(path.display().to_string()))?;
    name.strip_prefix("shard-")
        .and_then(|rest| rest.strip_suffix(".ngix"))
        .and_then(|key| key.parse().ok())
        .ok_or_else(|| ShardError::BadFileName(name.to_string()))
}

impl Shard {
    /// Open a `shard-YYYY-MM.ngix` file, deriving the partition from the
    /// file name.
    pub fn open(path: &Path, mode: OpenMode) -> Result<Shard, ShardError> {
        let partition = partition_from_file_name(path)?;
        Shard::open_with_partition(path, partition, mode)
    }

    pub fn open_with_partition(
        path: &Path,
        partition: PartitionKey,
        mode: OpenMode,
    ) -> Result<Shard, ShardError> {
        let file = File::open(path)?;
        let backing = match mode {
            // Safety: shard files are immutable by contract; no live
            // writer mutates them under the map.
            OpenMode::Mapped => Backing::Mapped(unsafe { Mmap::map(&file)? }),
            OpenMode::Preloaded => Backing::Owned(std::fs::read(path)?),
        };
        Shard::from_backing(path, partition, backing)
    }

    /// Open a shard from its serialized bytes (always "preloaded").
    pub fn from_bytes(partition: PartitionKey, bytes: Vec<u8>) -> Result<Shard, ShardError> {
        Shard::from_backing(Path::new("<memory>"), partition, Backing::Owned(bytes))
    }

    fn from_backing(
        path: &Path,
        partition: PartitionKey,
        backing: Backing,
    ) -> Result<Shard, ShardError> {
        let bytes = backing.bytes();
        if bytes.len() < HEADER_LEN as usize {
            return Err(bad_format(path, format!("file is {} bytes, shorter than the header", bytes.len())));
        }
        if bytes[..8] != MAGIC {
            return Err(bad_format(path, "bad magic"));
        }
        let version = read_u32(bytes, 8);
        if version != VERSION {
            return Err(ShardError::BadVersion {
                path: path.display().to_string(),
                version,
            });
        }
        let header = Header {
            n_text: read_u64(bytes, 16),
            n_docs: read_u64(bytes, 24),
            text_off: read_u64(bytes, 32),
            sa_off: read_u64(bytes, 40),
            doc_starts_off: read_u64(bytes, 48),
            doc_ids_off: read_u64(bytes, 56),
            checksum: read_u64(bytes, 64),
        };
        let len = bytes.len() as u64;
        let sections_sane = header.text_off == HEADER_LEN
            && header.sa_off == align8(header.text_off + header.n_text)
            && header.doc_starts_off == header.sa_off + 8 * header.n_text
            && header.doc_ids_off == header.doc_starts_off + 8 * header.n_docs
            && header.doc_ids_off + 4 * header.n_docs <= len;
        if !sections_sane {
            return Err(bad_format(
                path,
                format!(
                    "inconsistent sections (file {len} bytes, n_text {}, n_docs {})",
                    header.n_text, header.n_docs
                ),
            ));
        }
        Ok(Shard {
            partition,
            backing,
            header,
            doc_id_offsets: OnceLock::new(),
        })
    }

    pub fn partition(&self) -> PartitionKey {
        self.partition
    }

    pub fn n_text(&self) -> u64 {
        self.header.n_text
    }

    pub fn n_docs(&self) -> u64 {
        self.header.n_docs
    }

    pub fn stored_checksum(&self) -> u64 {
        self.header.checksum
    }

    pub fn text(&self) -> &[u8] {
        let start = self.header.text_off as usize;
        &self.backing.bytes()[start..start + self.header.n_text as usize]
    }

    /// Suffix array entry `i`.
    #[inline]
    pub fn sa_at(&self, i: u64) -> u64 {
        debug_assert!(i < self.header.n_text);
        read_u64(self.backing.bytes(), (self.header.sa_off + 8 * i) as usize)
    }

    /// Start offset of document `ordinal` in the text section.
    #[inline]
    pub fn doc_start(&self, ordinal: u64) -> u64 {
        debug_assert!(ordinal < self.header.n_docs);
        read_u64(
            self.backing.bytes(),
            (self.header.doc_starts_off + 8 * ordinal) as usize,
        )
    }

    /// `[start, end)` byte range of the document body, excluding its
    /// sentinel.
    pub fn doc_bounds(&self, ordinal: u64) -> Result<(u64, u64), ShardError> {
        if ordinal >= self.header.n_docs {
            return Err(ShardError::DocOutOfRange {
                ordinal,
                n_docs: self.header.n_docs,
            });
        }
        let start = self.doc_start(ordinal);
        let end = if ordinal + 1 < self.header.n_docs {
            self.doc_start(ordinal + 1) - 1
        } else {
            self.header.n_text.saturating_sub(1)
        };
        Ok((start, end))
    }

    fn id_offsets(&self) -> Result<&[u64], ShardError> {
        let computed = self.doc_id_offsets.get_or_init(|| {
            let bytes = self.backing.bytes();
            let mut offsets = Vec::with_capacity(self.header.n_docs as usize);
            let mut at = self.header.doc_ids_off;
            for _ in 0..self.header.n_docs {
                if at as usize + 4 > bytes.len() {
                    return Err("doc id section truncated".to_string());
                }
                offsets.push(at);
                let id_len = read_u32(bytes, at as usize) as u64;
                at += 4 + id_len;
                if at as usize > bytes.len() {
                    return Err("doc id section truncated".to_string());
                }
            }
            Ok(offsets)
        });
        computed.as_deref().map_err(|reason| ShardError::BadFormat {
            path: format!("shard {}", self.partition),
            reason: reason.clone(),
        })
    }

    /// Document id of `ordinal`.
    pub fn doc_id(&self, ordinal: u64) -> Result<&str, ShardError> {
        if ordinal >= self.header.n_docs {
            return Err(ShardError::DocOutOfRange {
                ordinal,
                n_docs: self.header.n_docs,
            });
        }
        let offsets = self.id_offsets()?;
        let at = offsets[ordinal as usize] as usize;
        let bytes = self.backing.bytes();
        let id_len = read_u32(bytes, at) as usize;
        std::str::from_utf8(&bytes[at + 4..at + 4 + id_len]).map_err(|_| ShardError::BadFormat {
            path: format!("shard {}", self.partition),
            reason: format!("doc id {ordinal} is not UTF-8"),
        })
    }

    /// Recompute the text checksum and compare with the header.
    pub fn checksum_ok(&self) -> bool {
        fnv1a64(self.text()) == self.header.checksum
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Outcome of shard verification. `failures` is empty iff the shard passed.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyReport {
    pub partition: String,
    pub n_text: u64,
    pub n_docs: u64,
    pub checksum_ok: bool,
    /// True when the suffix-array checks ran on a sample instead of
    /// exhaustively.
    pub sampled: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Shards with a text section at or below this size get exhaustive
/// verification; larger ones are spot-checked.
pub const VERIFY_EXHAUSTIVE_LIMIT: u64 = 64 << 20;

/// Check structural invariants: checksum, suffix-array permutation and
/// sortedness, document table monotonicity and sentinel placement.
pub fn verify_shard(shard: &Shard, exhaustive_limit: u64) -> VerifyReport {
    let mut failures = Vec::new();
    let n = shard.n_text();
    let checksum_ok = shard.checksum_ok();
    if !checksum_ok {
        failures.push("text checksum mismatch".to_string());
    }
    let exhaustive = n <= exhaustive_limit;

    if exhaustive {
        // Permutation: every offset in 0..n exactly once.
        let mut seen = vec![false; n as usize];
        for i in 0..n {
            let p = shard.sa_at(i);
            if p >= n {
                failures.push(format!("sa[{i}] = {p} out of range"));
                break;
            }
            if std::mem::replace(&mut seen[p as usize], true) {
                failures.push(format!("sa[{i}] = {p} duplicated"));
                break;
            }
        }
        // Sortedness of adjacent suffixes. Out-of-range entries were
        // already reported by the permutation check above.
        let text = shard.text();
        for i in 1..n {
            let (a, b) = (shard.sa_at(i - 1), shard.sa_at(i));
            if a >= n || b >= n {
                continue;
            }
            if text[a as usize..] >= text[b as usize..] {
                failures.push(format!("suffixes at sa[{}] and sa[{i}] out of order", i - 1));
                break;
            }
        }
    } else if n > 0 {
        // Spot checks on a deterministic stride.
        let samples = 4096.min(n);
        let step = (n / samples).max(1);
        let text = shard.text();
        let mut i = 0;
        while i < n {
            let p = shard.sa_at(i);
            if p >= n {
                failures.push(format!("sa[{i}] = {p} out of range"));
                break;
            }
            if i + 1 < n {
                let q = shard.sa_at(i + 1);
                if q < n && text[p as usize..] >= text[q as usize..] {
                    failures.push(format!("suffixes at sa[{i}] and sa[{}] out of order", i + 1));
                    break;
                }
            }
            i += step;
        }
    }

    // Document table.
    let n_docs = shard.n_docs();
    let text = shard.text();
    if n_docs > 0 {
        if shard.doc_start(0) != 0 {
            failures.push("doc_starts[0] != 0".to_string());
        }
        for j in 1..n_docs {
            let (prev, cur) = (shard.doc_start(j - 1), shard.doc_start(j));
            if cur <= prev {
                failures.push(format!("doc_starts[{j}] not strictly increasing"));
                break;
            }
            if cur > n || text[cur as usize - 1] != SENTINEL {
                failures.push(format!("document {j} is not preceded by a sentinel"));
                break;
            }
        }
        if n == 0 || text[n as usize - 1] != SENTINEL {
            failures.push("text section does not end with a sentinel".to_string());
        }
        // Doc ids must decode.
        for j in [0, n_docs / 2, n_docs - 1] {
            if let Err(e) = shard.doc_id(j) {
                failures.push(format!("doc id {j}: {e}"));
                break;
            }
        }
    } else if n != 0 {
        failures.push("zero documents but non-empty text".to_string());
    }

    VerifyReport {
        partition: shard.partition().to_string(),
        n_text: n,
        n_docs,
        checksum_ok,
        sampled: !exhaustive,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(s: &str) -> PartitionKey {
        s.parse().unwrap()
    }

    fn sample_index() -> ShardIndex {
        ShardIndex::from_texts(
            key("2022-06"),
            [
                ("2022-06/0".to_string(), "banana".to_string()),
                ("2022-06/1".to_string(), "bandana".to_string()),
                ("2022-06/2".to_string(), "an".to_string()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_concatenates_with_sentinels() {
        let index = sample_index();
        assert_eq!(index.text, b"banana\x00bandana\x00an\x00");
        assert_eq!(index.doc_starts, vec![0, 7, 15]);
        assert_eq!(index.n_docs(), 3);
        assert_eq!(index.sa.len(), index.text.len());
        assert_eq!(index.checksum, fnv1a64(&index.text));
    }

    #[test]
    fn empty_docs_are_skipped() {
        let index = ShardIndex::from_texts(
            key("2022-06"),
            [
                ("2022-06/0".to_string(), String::new()),
                ("2022-06/1".to_string(), "x".to_string()),
            ],
        )
        .unwrap();
        assert_eq!(index.n_docs(), 1);
        assert_eq!(index.doc_ids, vec!["2022-06/1"]);
    }

    #[test]
    fn nul_in_text_is_rejected() {
        let err = ShardIndex::from_texts(
            key("2022-06"),
            [("2022-06/0".to_string(), "a\0b".to_string())],
        )
        .unwrap_err();
        assert!(matches!(err, ShardError::TextContainsNul(_)));
    }

    #[test]
    fn write_is_deterministic() {
        let index = sample_index();
        let mut a = Vec::new();
        let mut b = Vec::new();
        index.write_to(&mut a).unwrap();
        index.write_to(&mut b).unwrap();
        assert_eq!(a, b);
        assert_eq!(&a[..8], b"NGIXSHD1");
    }

    #[test]
    fn round_trip_preserves_everything() {
        let index = sample_index();
        let shard = index.to_shard();
        assert_eq!(shard.partition(), key("2022-06"));
        assert_eq!(shard.n_text(), index.text.len() as u64);
        assert_eq!(shard.n_docs(), 3);
        assert_eq!(shard.text(), &index.text[..]);
        for (i, &s) in index.sa.iter().enumerate() {
            assert_eq!(shard.sa_at(i as u64), s);
        }
        assert_eq!(shard.doc_id(0).unwrap(), "2022-06/0");
        assert_eq!(shard.doc_id(2).unwrap(), "2022-06/2");
        assert!(shard.doc_id(3).is_err());
        assert_eq!(shard.doc_bounds(0).unwrap(), (0, 6));
        assert_eq!(shard.doc_bounds(1).unwrap(), (7, 14));
        assert_eq!(shard.doc_bounds(2).unwrap(), (15, 17));
        assert!(shard.checksum_ok());
    }

    #[test]
    fn empty_shard_round_trips() {
        let index = ShardIndex::from_texts(key("2020-01"), []).unwrap();
        let shard = index.to_shard();
        assert_eq!(shard.n_text(), 0);
        assert_eq!(shard.n_docs(), 0);
        assert!(verify_shard(&shard, VERIFY_EXHAUSTIVE_LIMIT).is_ok());
    }

    #[test]
    fn verify_accepts_good_and_rejects_corrupted() {
        let index = sample_index();
        let mut bytes = Vec::new();
        index.write_to(&mut bytes).unwrap();

        let good = Shard::from_bytes(key("2022-06"), bytes.clone()).unwrap();
        let report = verify_shard(&good, VERIFY_EXHAUSTIVE_LIMIT);
        assert!(report.is_ok(), "{:?}", report.failures);
        assert!(!report.sampled);

        // Flip a text byte: checksum and possibly sort order break.
        let mut corrupted = bytes.clone();
        corrupted[HEADER_LEN as usize] ^= 0xff;
        let bad = Shard::from_bytes(key("2022-06"), corrupted).unwrap();
        let report = verify_shard(&bad, VERIFY_EXHAUSTIVE_LIMIT);
        assert!(!report.is_ok());
        assert!(!report.checksum_ok);

        // Corrupt a suffix-array entry.
        let mut corrupted = bytes;
        let sa_off = read_u64(&corrupted, 40) as usize;
        corrupted[sa_off..sa_off + 8].copy_from_slice(&u64::MAX.to_le_bytes());
        let bad = Shard::from_bytes(key("2022-06"), corrupted).unwrap();
        assert!(!verify_shard(&bad, VERIFY_EXHAUSTIVE_LIMIT).is_ok());
    }

    #[test]
    fn truncated_and_malformed_files_fail_to_open() {
        let index = sample_index();
        let mut bytes = Vec::new();
        index.write_to(&mut bytes).unwrap();

        assert!(matches!(
            Shard::from_bytes(key("2022-06"), bytes[..40].to_vec()),
            Err(ShardError::BadFormat { .. })
        ));
        // Truncate inside the suffix array section.
        assert!(matches!(
            Shard::from_bytes(key("2022-06"), bytes[..bytes.len() / 2].to_vec()),
            Err(ShardError::BadFormat { .. })
        ));
        let mut wrong_magic = bytes.clone();
        wrong_magic[0] = b'X';
        assert!(matches!(
            Shard::from_bytes(key("2022-06"), wrong_magic),
            Err(ShardError::BadFormat { .. })
        ));
        let mut wrong_version = bytes;
        wrong_version[8] = 99;
        assert!(matches!(
            Shard::from_bytes(key("2022-06"), wrong_version),
            Err(ShardError::BadVersion { version: 99, .. })
        ));
    }

    #[test]
    fn file_name_parsing() {
        assert_eq!(
            partition_from_file_name(Path::new("/x/shard-2023-11.ngix")).unwrap(),
            key("2023-11")
        );
        assert!(partition_from_file_name(Path::new("shard-2023.ngix")).is_err());
        assert!(partition_from_file_name(Path::new("records-2023-11.jsonl")).is_err());
    }

    #[test]
    fn mixed_partition_is_rejected() {
        let line = serde_json::json!({
            "record_id": "2022-07/0",
            "url": "https://a.de/x",
            "warc_date": "2022-07-01T00:00:00Z",
            "text": "body",
        })
        .to_string();
        let record = ngix_core::parse_record_line(&line).unwrap();
        let err = ShardIndex::build(key("2022-06"), [record]).unwrap_err();
        assert!(matches!(err, ShardError::MixedPartition { .. }));
    }
}
