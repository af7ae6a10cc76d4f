//! Suffix-array text indexing over monthly shard files: construction by
//! induced sorting, an immutable memory-mappable on-disk format, and
//! O(m log n) substring count/locate queries.

pub mod query;
pub mod sais;
pub mod shard;

pub use query::{
    count, locate, multi_count, multi_search, resolve_doc, sa_range, sa_range_counted,
    search_docs, snippet, DocPointer, MultiCount, QueryError, SaRange, ShardSet,
};
pub use sais::suffix_array;
pub use shard::{verify_shard, OpenMode, Shard, ShardError, ShardIndex, VerifyReport};
