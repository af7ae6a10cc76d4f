//! Monthly partitioning of the corpus by crawl date.

use chrono::{DateTime, Datelike, Utc};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Year-month bucket a record belongs to. Derived from `warc_date`, never
/// from the (optional, noisy) publication date.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartitionKey {
    pub year: i32,
    pub month: u32,
}

impl PartitionKey {
    pub fn new(year: i32, month: u32) -> Result<Self, PartitionError> {
        if !(1..=12).contains(&month) {
            return Err(PartitionError::BadMonth(month));
        }
        Ok(PartitionKey { year, month })
    }

    /// Canonical shard file name for this partition.
    pub fn shard_file_name(&self) -> String {
        format!("shard-{self}.ngix")
    }

    /// Canonical record file name for this partition.
    pub fn records_file_name(&self) -> String {
        format!("records-{self}.jsonl")
    }
}

impl fmt::Display for PartitionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("month out of range: {0}")]
    BadMonth(u32),
    #[error("not a YYYY-MM partition key: {0:?}")]
    BadKey(String),
}

impl FromStr for PartitionKey {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::BadKey(s.to_string());
        let (y, m) = s.split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 {
            return Err(bad());
        }
        let year: i32 = y.parse().map_err(|_| bad())?;
        let month: u32 = m.parse().map_err(|_| bad())?;
        PartitionKey::new(year, month)
    }
}

impl Serialize for PartitionKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartitionKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// (year, month) of the timestamp in UTC.
pub fn month_partition_key(ts: DateTime<Utc>) -> PartitionKey {
    PartitionKey {
        year: ts.year(),
        month: ts.month(),
    }
}

/// Deterministic partition-scoped record identifier: `YYYY-MM/<ordinal>`.
pub fn assign_record_id(partition: PartitionKey, ordinal: u64) -> String {
    format!("{partition}/{ordinal}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    #[test]
    fn partition_of_archive_inception() {
        let ts = Utc.with_ymd_and_hms(2016, 8, 26, 12, 0, 0).unwrap();
        assert_eq!(month_partition_key(ts), PartitionKey::new(2016, 8).unwrap());
    }

    #[test]
    fn partition_of_month_end() {
        let ts = Utc.with_ymd_and_hms(2022, 11, 30, 23, 59, 59).unwrap();
        assert_eq!(month_partition_key(ts), PartitionKey::new(2022, 11).unwrap());
    }

    #[test]
    fn partition_of_leap_day() {
        let ts = Utc.with_ymd_and_hms(2020, 2, 29, 0, 0, 0).unwrap();
        assert_eq!(month_partition_key(ts), PartitionKey::new(2020, 2).unwrap());
    }

    #[test]
    fn record_id_format() {
        assert_eq!(assign_record_id(PartitionKey::new(2022, 6).unwrap(), 0), "2022-06/0");
        assert_eq!(assign_record_id(PartitionKey::new(2016, 8).unwrap(), 41), "2016-08/41");
    }

    #[test]
    fn key_round_trips_through_display() {
        let key = PartitionKey::new(2019, 3).unwrap();
        assert_eq!(key.to_string(), "2019-03");
        assert_eq!("2019-03".parse::<PartitionKey>().unwrap(), key);
        assert!("2019-3".parse::<PartitionKey>().is_err());
        assert!("2019-13".parse::<PartitionKey>().is_err());
    }

    #[test]
    fn keys_order_chronologically() {
        let a = PartitionKey::new(2016, 12).unwrap();
        let b = PartitionKey::new(2017, 1).unwrap();
        assert!(a < b);
    }
}
