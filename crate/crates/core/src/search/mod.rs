//! Exhaustive, shardable and resumable scans over symmetric 0-1 matrices.

mod canonical;
pub mod checkpoint;
mod pipeline;
mod properties;
mod report;
mod space;

use std::path::PathBuf;
use std::time::Instant;

pub use canonical::{canonical_mask, MAX_CANONICAL_ORDER};
pub use pipeline::{Evaluation, Evaluator};
pub use properties::{Property, PropertySet};
pub use report::{CanonicalClass, Counterexample, IndexRange, Mode, ScanReport, COUNTEREXAMPLE_CAP};
pub use space::{
    check_order, decode, encode, enumerate, fill, mask_bits, EnumerationCursor, Restriction, Shard, MAX_ORDER,
};

use crate::epr;
use crate::error::{Error, Result};
use crate::graph::graph_of;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub n: usize,
    pub mode: Mode,
    pub restriction: Restriction,
    /// Used in properties mode only.
    pub properties: PropertySet,
    pub shard: Shard,
    /// Worker threads; the shard is split into this many equal pieces.
    pub jobs: u64,
    /// Base checkpoint path; with several jobs each writes `PATH.{j}of{jobs}`.
    pub checkpoint: Option<PathBuf>,
    /// Matrices between checkpoint writes.
    pub checkpoint_every: u64,
    pub resume: bool,
    /// Stop each job after examining this many matrices in this run, leaving
    /// an incomplete report (and checkpoint).
    pub stop_after: Option<u64>,
    /// Group `NAA`-enders by permutation-similarity class (`n <= 8`).
    pub canonical: bool,
}

impl ScanConfig {
    pub fn new(n: usize, mode: Mode) -> Self {
        Self {
            n,
            mode,
            restriction: Restriction::All,
            properties: PropertySet::all(),
            shard: Shard::FULL,
            jobs: 1,
            checkpoint: None,
            checkpoint_every: 1 << 20,
            resume: false,
            stop_after: None,
            canonical: false,
        }
    }

    fn property_names(&self) -> Vec<String> {
        match self.mode {
            Mode::Conjecture => Vec::new(),
            Mode::Properties => self.properties.names(),
        }
    }

    fn validate(&self) -> Result<()> {
        check_order(self.n)?;
        if self.mode == Mode::Conjecture && self.n < 3 {
            return Err(Error::OrderOutOfRange { n: self.n, min: 3, max: MAX_ORDER });
        }
        if self.canonical && self.n > MAX_CANONICAL_ORDER {
            return Err(Error::Precondition(format!(
                "canonical classes are limited to n <= {MAX_CANONICAL_ORDER}"
            )));
        }
        if self.jobs == 0 {
            return Err(Error::Precondition("jobs must be at least 1".into()));
        }
        if self.resume && self.checkpoint.is_none() {
            return Err(Error::Precondition("resume needs a checkpoint path".into()));
        }
        Ok(())
    }
}

/// Runs the configured scan, in parallel when `jobs > 1`, and merges the
/// per-job reports in index order.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    if cfg.jobs == 1 {
        return run_job(cfg, cfg.shard, cfg.checkpoint.clone());
    }
    let results: Vec<Result<ScanReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.jobs)
            .map(|j| {
                s.spawn(move || {
                    let shard = cfg.shard.split(j, cfg.jobs)?;
                    let path = cfg.checkpoint.as_ref().map(|p| checkpoint::job_path(p, j, cfg.jobs));
                    run_job(cfg, shard, path)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    if reports.iter().all(|r| r.complete) {
        ScanReport::merge_all(reports)
    } else {
        let total = cfg.restriction.space_size(cfg.n);
        ScanReport::combine_interrupted(reports, cfg.shard.range(total).1)
    }
}

/// Full conjecture scan of one shard, single-threaded.
pub fn scan_conjecture(n: usize, shard: Shard) -> Result<ScanReport> {
    let mut cfg = ScanConfig::new(n, Mode::Conjecture);
    cfg.shard = shard;
    scan(&cfg)
}

pub fn scan_properties(n: usize, properties: PropertySet, restriction: Restriction) -> Result<ScanReport> {
    let mut cfg = ScanConfig::new(n, Mode::Properties);
    cfg.properties = properties;
    cfg.restriction = restriction;
    scan(&cfg)
}

fn run_job(cfg: &ScanConfig, shard: Shard, path: Option<PathBuf>) -> Result<ScanReport> {
    let n = cfg.n;
    let mut cursor = EnumerationCursor::new(n, cfg.restriction, shard)?;
    let mut report = if cfg.resume {
        let path = path.as_ref().expect("validated");
        let (header, r) = checkpoint::load(path)?;
        if header.n != n || r.n != n {
            return Err(Error::Checkpoint(format!("checkpoint is for n = {}, not {n}", header.n)));
        }
        if header.shard != shard {
            return Err(Error::Checkpoint(format!("checkpoint is for shard {}, not {shard}", header.shard)));
        }
        if r.mode != cfg.mode || r.restriction != cfg.restriction || r.properties != cfg.property_names() {
            return Err(Error::Checkpoint("checkpoint belongs to a different kind of scan".into()));
        }
        cursor = cursor.resume_at(header.mask_cursor)?;
        if r.range.end != header.mask_cursor {
            return Err(Error::Checkpoint("report range does not end at the cursor".into()));
        }
        let mut r = r;
        if !r.complete {
            r.resumed_from = Some(header.mask_cursor.to_string());
        }
        r
    } else {
        ScanReport::empty(cfg.mode, n, cfg.restriction, cfg.property_names(), cursor.position())
    };
    if report.complete {
        return Ok(report);
    }

    match cfg.mode {
        Mode::Conjecture => {
            for key in ["nonsingular", "ends_NAA", "equimodular", "equimodular_constant_diagonal"] {
                report.declare(key);
            }
            if n >= 5 {
                report.declare("tail_NSNAA");
                report.declare("tail_SSNAA");
            }
        }
        Mode::Properties => properties::declare_counts(&cfg.properties, n, &mut report),
    }
    if cfg.canonical && report.canonical_classes.is_none() {
        report.canonical_classes = Some(Vec::new());
    }

    let started = Instant::now();
    let base_elapsed = report.elapsed_ms;
    let mut ev = Evaluator::new(n);
    let mut buf = vec![0i64; n * n];
    let mut examined_now = 0u64;
    let mut since_save = 0u64;
    let every = cfg.checkpoint_every.max(1);

    let save = |report: &mut ScanReport, cursor: &EnumerationCursor| -> Result<()> {
        report.range.end = cursor.position();
        report.complete = cursor.is_done();
        report.elapsed_ms = base_elapsed + started.elapsed().as_millis() as u64;
        report.counterexamples.sort();
        if let Some(p) = &path {
            checkpoint::save(p, shard, cursor.position(), report)?;
        }
        Ok(())
    };

    loop {
        if cfg.stop_after.is_some_and(|limit| examined_now >= limit) {
            break;
        }
        let Some(mask) = cursor.advance_into(&mut buf) else { break };
        report.total_examined += 1;
        examined_now += 1;
        match cfg.mode {
            Mode::Conjecture => conjecture_step(&mut ev, &buf, mask, cfg.canonical, &mut report)?,
            Mode::Properties => {
                let m = IntMatrix::new(n, buf.clone())?;
                properties::check_matrix(&cfg.properties, &m, mask, &mut ev, &mut report)?;
                if cfg.canonical && n >= 3 && m.is_symmetric() && epr::tail(&m, 3)? == [epr::Letter::N, epr::Letter::A, epr::Letter::A] {
                    let tail = if n >= 5 { epr::word(&ev.tail5(&buf)) } else { "NAA".into() };
                    report.record_class(canonical::canonical_slice(&buf, n), tail);
                }
            }
        }
        since_save += 1;
        if path.is_some() && since_save >= every {
            save(&mut report, &cursor)?;
            since_save = 0;
        }
    }
    save(&mut report, &cursor)?;
    Ok(report)
}

fn conjecture_step(ev: &mut Evaluator, a: &[i64], mask: u128, canonical: bool, report: &mut ScanReport) -> Result<()> {
    let n = ev.order();
    let e = ev.evaluate(a);
    if !e.nonsingular {
        return Ok(());
    }
    report.bump("nonsingular");
    if e.equimodular {
        report.bump("equimodular");
    }
    let b = e.equimodular_constant_diagonal();
    if b {
        report.bump("equimodular_constant_diagonal");
    }
    if e.ends_naa != b {
        report.record(
            mask,
            "CONJECTURE",
            format!(
                "ends_NAA = {}, equimodular = {}, constant_diagonal = {}",
                e.ends_naa, e.equimodular, e.constant_diagonal
            ),
        );
    }
    if !e.ends_naa {
        return Ok(());
    }
    report.bump("ends_NAA");
    let mut tail = "NAA".to_string();
    if n >= 5 {
        tail = epr::word(&ev.tail5(a));
        match tail.as_str() {
            "NSNAA" => {
                report.bump("tail_NSNAA");
                let m = IntMatrix::new(n, a.to_vec())?;
                let odd_cycle = n % 2 == 1 && m.has_zero_diagonal() && graph_of(&m)?.is_cycle();
                if !odd_cycle {
                    report.record(mask, "DICHOTOMY", "NSNAA but the graph is not an odd n-cycle".into());
                }
            }
            "SSNAA" => report.bump("tail_SSNAA"),
            other => report.record(mask, "DICHOTOMY", format!("tail {other}")),
        }
    }
    if canonical {
        report.record_class(canonical::canonical_slice(a, n), tail);
    }
    Ok(())
}
