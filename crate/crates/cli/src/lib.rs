//! Batch driver: run enumerations and verifications over `(p, f, ell, n)`
//! configurations and render reports.

pub mod commands;
pub mod report;

use std::path::PathBuf;

use serde::Serialize;
use sp_baw::{make_context, FieldContext, LabelSpace};

/// Default refusal threshold for the estimated enumeration frontier.
pub const DEFAULT_WORK_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub counts: bool,
    pub bijection: bool,
    pub equivariance: bool,
    pub invariants: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        counts: true,
        bijection: true,
        equivariance: true,
        invariants: true,
    };
    pub const NONE: Checks = Checks {
        counts: false,
        bijection: false,
        equivariance: false,
        invariants: false,
    };

    /// Parses a comma-separated subset of `counts,bijection,equivariance,invariants`
    /// (or `all`).
    pub fn parse(s: &str) -> Result<Checks, String> {
        let mut out = Checks::NONE;
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "all" => out = Checks::ALL,
                "counts" => out.counts = true,
                "bijection" => out.bijection = true,
                "equivariance" => out.equivariance = true,
                "invariants" => out.invariants = true,
                other => return Err(format!("unknown check '{other}'")),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u64,
    pub f: u32,
    pub ell: u64,
    pub n: u32,
    pub checks: Checks,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub work_limit: u64,
}

impl RunConfig {
    pub fn new(p: u64, f: u32, ell: u64, n: u32) -> Self {
        RunConfig {
            p,
            f,
            ell,
            n,
            checks: Checks::ALL,
            out: None,
            format: Format::Json,
            jobs: None,
            work_limit: DEFAULT_WORK_LIMIT,
        }
    }
}

/// A configuration problem: bad parameters or a refused workload.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Number of partitions of `m`.
fn partition_count(m: u64) -> u64 {
    let mut p = vec![0u64; m as usize + 1];
    p[0] = 1;
    for part in 1..=m as usize {
        for k in part..=m as usize {
            p[k] = p[k].saturating_add(p[k - part]);
        }
    }
    p[m as usize]
}

/// Estimated enumeration frontier: `q^(2n)` polynomial candidates times
/// `p(2n+1)` partitions.
pub fn estimate_work(q: u64, n: u32) -> u64 {
    q.saturating_pow(2 * n)
        .saturating_mul(partition_count(2 * n as u64 + 1))
}

/// Validates the configuration and builds the label space.
pub fn build_space(cfg: &RunConfig) -> Result<(FieldContext, LabelSpace), UsageError> {
    let ctx = make_context(cfg.p, cfg.f, cfg.ell).map_err(|e| UsageError(e.to_string()))?;
    if cfg.n == 0 {
        return Err(UsageError("rank n must be at least 1".into()));
    }
    let work = estimate_work(ctx.q, cfg.n);
    if work > cfg.work_limit {
        return Err(UsageError(format!(
            "refusing n = {} over F_{}: estimated {work} enumeration items exceeds the work limit {} \
             (raise it with --work-limit)",
            cfg.n, ctx.q, cfg.work_limit
        )));
    }
    let space = LabelSpace::new(&ctx, cfg.n).map_err(|e| UsageError(e.to_string()))?;
    Ok((ctx, space))
}
