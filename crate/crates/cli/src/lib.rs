//! Command-line front end: JSON in, JSON out, one document per invocation.

mod batch;
mod commands;
mod config;
mod error;
mod fetch;

pub use batch::{parse_jobs, run_batch, BatchReport, BatchSummary, JobResult, JobStatus};
pub use commands::{resolve_curve, run, Command, Context, Outcome};
pub use config::{Config, CACHE_DIR_ENV};
pub use error::{CliError, ErrorJson};
pub use fetch::{validate_label, Fetcher, HttpTransport, NoNetwork, Transport, LMFDB_API};
