//! Command-line front end for `hhh-core`: braid parsing, run
//! configuration, a parallel driver over internal degrees, JSON and text
//! reports, an on-disk result cache and the relation-check suites.

pub mod cache;
pub mod checks;
pub mod parse;
pub mod report;

use std::path::PathBuf;

use hhh_core::braid::BraidWord;
use hhh_core::homology::{HhhPlan, TrigradedDims};
use rayon::prelude::*;

pub use parse::parse_braid;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "HHH_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("computation failed: {0}")]
    Compute(#[from] hhh_core::Error),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::CheckFailed(_) => 4,
            CliError::Compute(_) | CliError::Io(_) | CliError::Json(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub word: BraidWord,
    pub qmax: i32,
    pub reduce: bool,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

/// `4 · (crossings + strands)`, enough for the small knots of interest.
pub fn default_qmax(word: &BraidWord) -> i32 {
    4 * (word.len() + word.strands()) as i32
}

impl RunConfig {
    pub fn new(word: BraidWord, qmax: Option<i32>) -> Result<Self, CliError> {
        let qmax = qmax.unwrap_or_else(|| default_qmax(&word));
        if qmax < 0 || qmax % 2 != 0 {
            return Err(CliError::Parse(format!("qmax must be even and non-negative, got {qmax}")));
        }
        Ok(RunConfig { word, qmax, reduce: true, format: Format::Text, cache_dir: None, jobs: 1 })
    }

    pub fn with_jobs(mut self, jobs: usize) -> Result<Self, CliError> {
        if jobs == 0 {
            return Err(CliError::Parse("--jobs must be at least 1".into()));
        }
        self.jobs = jobs;
        Ok(self)
    }
}

/// Computes the table for `word`, one internal degree per work item.
pub fn compute_dims(word: &BraidWord, qmax: i32, reduce: bool, jobs: usize) -> Result<TrigradedDims, CliError> {
    let plan = HhhPlan::new(word, qmax, reduce)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    let slices: Vec<_> =
        pool.install(|| plan.q_values().into_par_iter().map(|q| plan.compute_q(q)).collect::<Result<_, _>>())?;
    let mut dims = TrigradedDims::new(qmax);
    for (key, dim) in slices.into_iter().flatten() {
        dims.insert(key, dim);
    }
    Ok(dims)
}

/// [`compute_dims`] behind the cache, if one is configured.
pub fn run_hhh(config: &RunConfig) -> Result<TrigradedDims, CliError> {
    let cache = config.cache_dir.as_ref().map(cache::Cache::new);
    if let Some(dims) = cache.as_ref().and_then(|c| c.load(&config.word, config.qmax, config.reduce)) {
        return Ok(dims);
    }
    let dims = compute_dims(&config.word, config.qmax, config.reduce, config.jobs)?;
    if let Some(c) = &cache {
        c.store(&config.word, config.qmax, config.reduce, &dims)?;
    }
    Ok(dims)
}
