//! Core domain model for the news n-gram corpus tooling: article records
//! and their NDJSON wire form, monthly partitioning, registered-domain
//! extraction, gated language identification, and geographic attribution.

pub mod geo;
pub mod lang;
pub mod partition;
pub mod psl;
pub mod record;

pub use partition::{assign_record_id, month_partition_key, PartitionKey};
pub use record::{parse_record_line, write_record_line, ArticleRecord, RecordError};
