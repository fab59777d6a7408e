//! Scan results and their associative merge.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::space::Restriction;
use crate::error::{Error, Result};

/// At most this many counterexamples are kept, lowest masks first.
pub const COUNTEREXAMPLE_CAP: usize = 1000;

pub(crate) mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Conjecture,
    Properties,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Conjecture => "conjecture",
            Self::Properties => "properties",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "conjecture" => Ok(Self::Conjecture),
            "properties" => Ok(Self::Properties),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// Half-open range of enumeration indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRange {
    #[serde(with = "decimal")]
    pub start: u128,
    #[serde(with = "decimal")]
    pub end: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(with = "decimal")]
    pub mask: u128,
    pub kind: String,
    pub detail: String,
}

/// NAA-ending matrices grouped by permutation-similarity class, keyed by the
/// smallest mask in the class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalClass {
    #[serde(with = "decimal")]
    pub mask: u128,
    pub tail: String,
    pub count: u64,
}

/// Result of scanning one contiguous index range.
///
/// Equality ignores `elapsed_ms` and `resumed_from`, so a resumed or sharded
/// run compares equal to a straight one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub version: String,
    pub mode: Mode,
    pub n: usize,
    pub restriction: Restriction,
    pub properties: Vec<String>,
    pub range: IndexRange,
    pub total_examined: u64,
    pub counts: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    pub counterexample_total: u64,
    pub complete: bool,
    pub elapsed_ms: u64,
    pub resumed_from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_classes: Option<Vec<CanonicalClass>>,
}

impl PartialEq for ScanReport {
    fn eq(&self, o: &Self) -> bool {
        self.version == o.version
            && self.mode == o.mode
            && self.n == o.n
            && self.restriction == o.restriction
            && self.properties == o.properties
            && self.range == o.range
            && self.total_examined == o.total_examined
            && self.counts == o.counts
            && self.counterexamples == o.counterexamples
            && self.counterexample_total == o.counterexample_total
            && self.complete == o.complete
            && self.canonical_classes == o.canonical_classes
    }
}

impl Eq for ScanReport {}

impl ScanReport {
    pub fn empty(mode: Mode, n: usize, restriction: Restriction, properties: Vec<String>, start: u128) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            mode,
            n,
            restriction,
            properties,
            range: IndexRange { start, end: start },
            total_examined: 0,
            counts: BTreeMap::new(),
            counterexamples: Vec::new(),
            counterexample_total: 0,
            complete: false,
            elapsed_ms: 0,
            resumed_from: None,
            canonical_classes: None,
        }
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub(crate) fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    /// Makes sure `key` appears in the counts even when it stays zero.
    pub(crate) fn declare(&mut self, key: &str) {
        self.counts.entry(key.to_string()).or_insert(0);
    }

    pub(crate) fn record(&mut self, mask: u128, kind: &str, detail: String) {
        self.counterexample_total += 1;
        // masks arrive in increasing order within one run
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(Counterexample { mask, kind: kind.to_string(), detail });
        }
    }

    pub(crate) fn record_class(&mut self, mask: u128, tail: String) {
        let classes = self.canonical_classes.get_or_insert_with(Vec::new);
        match classes.binary_search_by(|c| c.mask.cmp(&mask)) {
            Ok(i) => classes[i].count += 1,
            Err(i) => classes.insert(i, CanonicalClass { mask, tail, count: 1 }),
        }
    }

    /// No counterexample was found in the scanned range.
    pub fn is_clean(&self) -> bool {
        self.counterexample_total == 0
    }

    /// Concatenates two reports over adjacent ranges (`self` first).
    pub fn merge(self, other: ScanReport) -> Result<ScanReport> {
        if self.range.end != other.range.start {
            return Err(Error::Precondition(format!(
                "cannot merge non-adjacent ranges [{}, {}) and [{}, {})",
                self.range.start, self.range.end, other.range.start, other.range.end
            )));
        }
        self.absorb(other)
    }

    /// Combines the reports of jobs that were stopped early. The ranges have
    /// gaps, so the result covers `[first start, end)` and is never complete;
    /// exact progress lives in the per-job checkpoints.
    pub(crate) fn combine_interrupted(reports: Vec<ScanReport>, end: u128) -> Result<ScanReport> {
        let mut it = reports.into_iter();
        let first = it.next().ok_or_else(|| Error::Precondition("nothing to merge".into()))?;
        let mut out = it.try_fold(first, ScanReport::absorb)?;
        out.range.end = end;
        out.complete = false;
        Ok(out)
    }

    fn absorb(mut self, other: ScanReport) -> Result<ScanReport> {
        if self.mode != other.mode
            || self.n != other.n
            || self.restriction != other.restriction
            || self.properties != other.properties
            || self.version != other.version
        {
            return Err(Error::Precondition("cannot merge reports of different scans".into()));
        }
        self.range.end = other.range.end;
        self.total_examined += other.total_examined;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort();
        self.counterexamples.truncate(COUNTEREXAMPLE_CAP);
        self.counterexample_total += other.counterexample_total;
        self.complete &= other.complete;
        self.elapsed_ms += other.elapsed_ms;
        self.resumed_from = self.resumed_from.or(other.resumed_from);
        self.canonical_classes = match (self.canonical_classes.take(), other.canonical_classes) {
            (None, None) => None,
            (a, b) => {
                let mut merged: BTreeMap<u128, CanonicalClass> = BTreeMap::new();
                for c in a.into_iter().flatten().chain(b.into_iter().flatten()) {
                    merged.entry(c.mask).and_modify(|e| e.count += c.count).or_insert(c);
                }
                Some(merged.into_values().collect())
            }
        };
        Ok(self)
    }

    /// Folds adjacent reports in order.
    pub fn merge_all(reports: impl IntoIterator<Item = ScanReport>) -> Result<ScanReport> {
        let mut it = reports.into_iter();
        let first = it.next().ok_or_else(|| Error::Precondition("nothing to merge".into()))?;
        it.try_fold(first, ScanReport::merge)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
