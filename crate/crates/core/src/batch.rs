//! Reproducible batch measurement. Sample `i` of a run draws from its own
//! substream keyed by `(seed, i)`, so the output does not depend on the number
//! of worker threads.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complementarity::{
    mdcc_record, measure_state, verify_batch, BoundKind, BoundReport, ClassTag, MeasureRecord,
    RecordOptions, EMPIRICAL_BOUND_TOL, GGM_BOUND_TOL,
};
use crate::error::Result;
use crate::io::Format;
use crate::measures::MeasuredParty;
use crate::party::Party;
use crate::states::SamplerClass;

pub const JOBS_ENV: &str = "MDCCKIT_JOBS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub class_tag: SamplerClass,
    pub count: u64,
    pub base_seed: u64,
    pub with_discord: bool,
    pub sender: Party,
    pub measured: MeasuredParty,
    pub output_path: PathBuf,
    pub format: Format,
}

impl SampleConfig {
    pub fn record_options(&self) -> RecordOptions {
        RecordOptions {
            sender: self.sender,
            with_discord: self.with_discord,
            measured: self.measured,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub points: usize,
    pub with_discord: bool,
    pub sender: Party,
    pub measured: MeasuredParty,
    pub output_path: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, Default)]
pub struct BatchOutput {
    pub records: Vec<MeasureRecord>,
    pub discord_unconverged: usize,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Measure `config.count` samples on `jobs` threads; records come back in index order.
pub fn run_sample(config: &SampleConfig, jobs: usize) -> Result<BatchOutput> {
    let opts = config.record_options();
    let class = config.class_tag;
    let seed = config.base_seed;
    let measured: Vec<_> = pool(jobs).install(|| {
        (0..config.count)
            .into_par_iter()
            .map(|i| {
                let state = class.sample(seed, i)?;
                measure_state(&state, i, ClassTag::from(class), None, &opts)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(collect(measured))
}

pub fn run_curve(config: &CurveConfig, alphas: &[f64], jobs: usize) -> Result<BatchOutput> {
    let opts = RecordOptions {
        sender: config.sender,
        with_discord: config.with_discord,
        measured: config.measured,
    };
    let measured: Vec<_> = pool(jobs).install(|| {
        alphas
            .par_iter()
            .enumerate()
            .map(|(i, &a)| {
                let state = crate::states::mdcc(a)?;
                measure_state(&state, i as u64, ClassTag::Mdcc, Some(a), &opts)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(collect(measured))
}

fn collect(measured: Vec<crate::complementarity::Measured>) -> BatchOutput {
    let discord_unconverged = measured.iter().filter(|m| !m.discord_converged).count();
    BatchOutput {
        records: measured.into_iter().map(|m| m.record).collect(),
        discord_unconverged,
    }
}

/// Reports for the default tolerances: `1e-9` on the GGM bound, `1e-6` on the tangle bound.
pub fn default_reports(records: &[MeasureRecord]) -> Vec<BoundReport> {
    let mut reports = verify_batch(records, &[BoundKind::Ggm], GGM_BOUND_TOL);
    reports.extend(verify_batch(
        records,
        &[BoundKind::Tangle],
        EMPIRICAL_BOUND_TOL,
    ));
    reports
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub rng: String,
    pub records: usize,
    pub wall_time_seconds: f64,
    pub jobs: usize,
    pub discord_unconverged: usize,
    pub violations: Vec<BoundReport>,
}

/// Sidecar path `<out>.manifest.json`.
pub fn manifest_path(out: &std::path::Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Worker count: explicit value, then `MDCCKIT_JOBS`, then available parallelism.
pub fn resolve_jobs(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var(JOBS_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
        })
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Records of a single MDCC state, id 0.
pub fn mdcc_single(alpha: f64, opts: &RecordOptions) -> Result<MeasureRecord> {
    mdcc_record(alpha, 0, opts)
}
