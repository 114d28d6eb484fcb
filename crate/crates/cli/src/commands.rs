//! The `blocks`, `verify` and `sweep` commands.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sp_baw::bawcheck::{block_violations, verify_block, AutAction};
use sp_baw::{BlockLabel, LabelSpace};

use crate::report::{BlockRecord, InvariantSummary, Report, Status, MAX_REPORTED_VIOLATIONS};
use crate::{build_space, Checks, Format, RunConfig, UsageError};

/// Equivariance is checked on these generators.
pub const GENERATORS: [AutAction; 2] = [AutAction::Field(1), AutAction::Diagonal];

/// Runs `f` on a pool of `jobs` threads (all cores when `None`).
pub fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool starts");
    pool.install(f)
}

/// Keeps the records up to the first error and marks the report.
fn assemble(space: &LabelSpace, n: u32, results: Vec<Result<BlockRecord, String>>) -> Report {
    let mut blocks = Vec::with_capacity(results.len());
    let mut error = None;
    for r in results {
        match r {
            Ok(rec) => blocks.push(rec),
            Err(e) => {
                error = Some(e);
                break;
            }
        }
    }
    let status = if error.is_some() {
        Status::Incomplete
    } else if blocks.iter().all(BlockRecord::passed) {
        Status::Ok
    } else {
        Status::Failed
    };
    Report {
        context: *space.ctx(),
        n,
        status,
        error,
        blocks,
        invariants: None,
        violations: Vec::new(),
    }
}

fn record(space: &LabelSpace, b: &BlockLabel) -> Result<BlockRecord, String> {
    let w = space.weights(b).map_err(|e| e.to_string())?;
    Ok(BlockRecord::new(b, w))
}

/// The block table: one record per block with its weights.
pub fn cmd_blocks(cfg: &RunConfig) -> Result<Report, UsageError> {
    let (_, space) = build_space(cfg)?;
    Ok(with_pool(cfg.jobs, || {
        let blocks = space.enumerate_blocks();
        let results = blocks.par_iter().map(|b| record(&space, b)).collect();
        assemble(&space, cfg.n, results)
    }))
}

/// The block table with per-block counts and flags, plus global checks.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, UsageError> {
    let (_, space) = build_space(cfg)?;
    let checks = cfg.checks;
    Ok(with_pool(cfg.jobs, || {
        let blocks = space.enumerate_blocks();
        let per_block: Vec<(Result<BlockRecord, String>, Vec<_>)> = blocks
            .par_iter()
            .map(|b| verify_one(&space, b, checks))
            .collect();
        let mut violations = Vec::new();
        let mut results = Vec::with_capacity(per_block.len());
        for (r, v) in per_block {
            results.push(r);
            violations.extend(v);
        }
        let mut report = assemble(&space, cfg.n, results);
        violations.truncate(MAX_REPORTED_VIOLATIONS);
        report.violations = violations;
        if checks.invariants && report.status != Status::Incomplete {
            let summary = invariants(&space, &blocks);
            if !summary.passed() {
                report.status = Status::Failed;
            }
            report.invariants = Some(summary);
        }
        report
    }))
}

fn verify_one(
    space: &LabelSpace,
    b: &BlockLabel,
    checks: Checks,
) -> (
    Result<BlockRecord, String>,
    Vec<sp_baw::bawcheck::Violation>,
) {
    let mut rec = match record(space, b) {
        Ok(r) => r,
        Err(e) => return (Err(e), Vec::new()),
    };
    if checks.counts || checks.bijection {
        match verify_block(space, b) {
            Ok(c) => {
                if checks.counts {
                    rec.n_ibr = Some(c.n_ibr);
                    rec.n_weights = Some(c.n_weights_q);
                    rec.n_weights_k = Some(c.n_weights_k);
                }
                if checks.bijection {
                    rec.bijective = Some(c.bijective && c.k_matches_q);
                    rec.inverse = Some(c.inverse_ok);
                }
            }
            Err(e) => return (Err(e.to_string()), Vec::new()),
        }
    }
    let mut violations = Vec::new();
    if checks.equivariance {
        violations = block_violations(space, b, &GENERATORS);
        rec.equivariant = Some(violations.is_empty());
    }
    (Ok(rec), violations)
}

fn invariants(space: &LabelSpace, blocks: &[BlockLabel]) -> InvariantSummary {
    let universe = space.enumerate_ibr_universe();
    let block_set: BTreeSet<&BlockLabel> = blocks.iter().collect();
    let per_block: Vec<(Vec<_>, bool, bool)> = blocks
        .par_iter()
        .map(|b| {
            let ibr = space.enumerate_ibr(b);
            let own = ibr.iter().all(|x| space.block_of(x) == *b);
            let audit = space
                .enumerate_weights_k(b)
                .is_ok_and(|ws| ws.iter().all(|w| space.dimension_audit(w)));
            (ibr, own, audit)
        })
        .collect();
    let sum_n_ibr = per_block.iter().map(|(v, _, _)| v.len()).sum();
    let enumerated: BTreeSet<_> = per_block.iter().flat_map(|(v, _, _)| v.iter()).collect();
    let universe_set: BTreeSet<_> = universe.iter().collect();
    let partition_ok = per_block.iter().all(|(_, own, _)| *own)
        && enumerated.len() == sum_n_ibr
        && enumerated == universe_set
        && universe
            .iter()
            .all(|x| block_set.contains(&space.block_of(x)));
    InvariantSummary {
        universe_size: universe.len(),
        sum_n_ibr,
        partition_ok,
        dimension_audit_ok: per_block.iter().all(|(_, _, a)| *a),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

/// Writes the rendered report to `out`, or to stdout.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> io::Result<()> {
    let text = render(report, format);
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// A grid of configurations for `sweep`.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub ps: Vec<u64>,
    pub fs: Vec<u32>,
    pub ells: Vec<u64>,
    pub ns: Vec<u32>,
    pub checks: Checks,
    pub jobs: Option<usize>,
    pub work_limit: u64,
    pub cache_dir: PathBuf,
    pub update_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    /// No cached result; one was written.
    New,
    Unchanged,
    /// The result differs from the cache.
    Regression,
    /// The cached result was replaced on request.
    Updated,
    /// The configuration is not valid or exceeds the work limit.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub p: u64,
    pub f: u32,
    pub ell: u64,
    pub n: u32,
    pub cache: CacheStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub passed: bool,
}

/// Verifies every valid configuration of the grid and compares each
/// report with the cached one.
pub fn cmd_sweep(grid: &SweepConfig) -> io::Result<SweepReport> {
    fs::create_dir_all(&grid.cache_dir)?;
    let mut entries = Vec::new();
    for &p in &grid.ps {
        for &f in &grid.fs {
            for &ell in &grid.ells {
                for &n in &grid.ns {
                    let mut cfg = RunConfig::new(p, f, ell, n);
                    cfg.checks = grid.checks;
                    cfg.jobs = grid.jobs;
                    cfg.work_limit = grid.work_limit;
                    let entry = |cache, status, note| SweepEntry {
                        p,
                        f,
                        ell,
                        n,
                        cache,
                        status,
                        note,
                    };
                    let report = match cmd_verify(&cfg) {
                        Ok(r) => r,
                        Err(e) => {
                            entries.push(entry(CacheStatus::Skipped, None, Some(e.0)));
                            continue;
                        }
                    };
                    let text = report.to_json();
                    let path = grid.cache_dir.join(format!("p{p}-f{f}-l{ell}-n{n}.json"));
                    let cache = match fs::read_to_string(&path) {
                        Ok(old) if old == text => CacheStatus::Unchanged,
                        Ok(_) if grid.update_cache => {
                            fs::write(&path, &text)?;
                            CacheStatus::Updated
                        }
                        Ok(_) => CacheStatus::Regression,
                        Err(e) if e.kind() == io::ErrorKind::NotFound => {
                            fs::write(&path, &text)?;
                            CacheStatus::New
                        }
                        Err(e) => return Err(e),
                    };
                    entries.push(entry(cache, Some(report.status), report.error.clone()));
                }
            }
        }
    }
    let passed = entries
        .iter()
        .all(|e| e.cache != CacheStatus::Regression && e.status.is_none_or(|s| s == Status::Ok));
    Ok(SweepReport { entries, passed })
}
