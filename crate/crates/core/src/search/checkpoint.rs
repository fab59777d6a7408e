//! Resumable scan state on disk.
//!
//! Two lines: a JSON header `{format_version, n, shard, mask_cursor, digest}`
//! and the partial report as compact JSON. The digest is the SHA-256 of the
//! other header fields and the report line, so truncation or edits are caught.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::report::{decimal, ScanReport};
use super::space::Shard;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub format_version: u32,
    pub n: usize,
    pub shard: Shard,
    /// Next enumeration index to visit.
    #[serde(with = "decimal")]
    pub mask_cursor: u128,
    pub digest: String,
}

fn digest(format_version: u32, n: usize, shard: Shard, cursor: u128, report_line: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("{format_version}\n{n}\n{shard}\n{cursor}\n").as_bytes());
    h.update(report_line.as_bytes());
    hex::encode(h.finalize())
}

/// Writes atomically: a temporary sibling file is renamed over `path`.
pub fn save(path: &Path, shard: Shard, cursor: u128, report: &ScanReport) -> Result<()> {
    let report_line = serde_json::to_string(report)?;
    let header = CheckpointHeader {
        format_version: FORMAT_VERSION,
        n: report.n,
        shard,
        mask_cursor: cursor,
        digest: digest(FORMAT_VERSION, report.n, shard, cursor, &report_line),
    };
    let tmp = tmp_path(path);
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{}", serde_json::to_string(&header)?)?;
        writeln!(f, "{report_line}")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

pub fn load(path: &Path) -> Result<(CheckpointHeader, ScanReport)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let corrupt = |why: &str| Error::Checkpoint(format!("{}: {why}", path.display()));
    let header: CheckpointHeader =
        serde_json::from_str(lines.next().ok_or_else(|| corrupt("empty file"))?).map_err(|e| corrupt(&e.to_string()))?;
    if header.format_version != FORMAT_VERSION {
        return Err(corrupt(&format!("unsupported format version {}", header.format_version)));
    }
    let report_line = lines.next().ok_or_else(|| corrupt("missing report"))?;
    let expected = digest(header.format_version, header.n, header.shard, header.mask_cursor, report_line);
    if expected != header.digest {
        return Err(corrupt("digest mismatch"));
    }
    let report: ScanReport = serde_json::from_str(report_line).map_err(|e| corrupt(&e.to_string()))?;
    if report.n != header.n {
        return Err(corrupt("header and report disagree on n"));
    }
    Ok((header, report))
}

/// Per-job checkpoint file for a scan split over `jobs` workers.
pub fn job_path(base: &Path, j: u64, jobs: u64) -> PathBuf {
    if jobs == 1 {
        return base.to_path_buf();
    }
    let mut name = base.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".{j}of{jobs}"));
    base.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::report::Mode;
    use crate::search::space::Restriction;

    #[test]
    fn round_trip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck");
        let mut r = ScanReport::empty(Mode::Conjecture, 4, Restriction::All, vec![], 0);
        r.range.end = 100;
        r.total_examined = 100;
        save(&path, Shard::FULL, 100, &r).unwrap();
        let (h, back) = load(&path).unwrap();
        assert_eq!(h.mask_cursor, 100);
        assert_eq!(back, r);

        let text = fs::read_to_string(&path).unwrap().replace("\"total_examined\":100", "\"total_examined\":101");
        fs::write(&path, text).unwrap();
        assert!(matches!(load(&path), Err(Error::Checkpoint(_))));
    }

    #[test]
    fn job_paths() {
        assert_eq!(job_path(Path::new("/t/ck"), 2, 4), PathBuf::from("/t/ck.2of4"));
        assert_eq!(job_path(Path::new("/t/ck"), 0, 1), PathBuf::from("/t/ck"));
    }
}
