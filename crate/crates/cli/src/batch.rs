use std::time::Instant;

use atlas::derive_seed;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::{run, CliError, Command, Context, ErrorJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JobStatus {
    Ok,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct JobResult {
    pub key: String,
    pub seed: u64,
    pub status: JobStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct BatchSummary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub seed: u64,
    pub jobs: Vec<JobResult>,
    pub summary: BatchSummary,
}

pub fn parse_jobs(json: &str) -> Result<Vec<Command>, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::Usage(format!("job file: {e}")))
}

/// Runs jobs on `config.jobs` workers. Each job's seed hashes the global seed
/// with the job's canonical JSON, so results do not depend on scheduling.
pub fn run_batch(jobs: &[Command], ctx: &Context, timings: bool) -> Result<BatchReport, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.config.jobs)
        .build()
        .map_err(|e| CliError::Resource(format!("thread pool: {e}")))?;
    let results: Vec<JobResult> = pool.install(|| {
        jobs.par_iter()
            .map(|cmd| {
                let key = serde_json::to_string(cmd).unwrap();
                let seed = derive_seed(ctx.config.seed, &key);
                let start = Instant::now();
                let out = run(cmd, ctx, seed);
                let elapsed_ms = timings.then(|| start.elapsed().as_millis() as u64);
                let (status, payload, error) = match out {
                    Ok(o) if o.passed => (JobStatus::Ok, Some(o.value), None),
                    Ok(o) => (JobStatus::Fail, Some(o.value), None),
                    Err(e) => (JobStatus::Error, None, Some(e.to_json())),
                };
                JobResult { key, seed, status, payload, error, elapsed_ms }
            })
            .collect()
    });
    let mut summary = BatchSummary::default();
    for r in &results {
        match r.status {
            JobStatus::Ok => summary.pass += 1,
            JobStatus::Fail => summary.fail += 1,
            JobStatus::Error => summary.error += 1,
        }
    }
    Ok(BatchReport { seed: ctx.config.seed, jobs: results, summary })
}
