use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclotors::{parse_jobs, run, run_batch, CliError, Command, Config, Context, Fetcher};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cyclotors", version, about = "Torsion of elliptic curves over cyclotomic and quadratic fields")]
struct Cli {
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Suppress progress output on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Never touch the network; labels resolve from the bundled snapshot only.
    #[arg(long, global = true)]
    offline: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    #[command(flatten)]
    Job(Command),
    /// Runs a JSON array of commands, each an object tagged by "command".
    Batch {
        file: PathBuf,
        #[arg(long)]
        timings: bool,
    },
}

fn execute(cli: Cli) -> Result<(serde_json::Value, bool), CliError> {
    let mut config = Config::load(cli.config.as_deref())?;
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(j) = cli.jobs {
        config.jobs = j;
    }
    config.offline |= cli.offline;
    config.validate()?;
    let fetcher = Fetcher::from_config(&config)?;
    let ctx = Context { config, fetcher, quiet: cli.quiet };
    match cli.cmd {
        Cmd::Job(cmd) => {
            let o = run(&cmd, &ctx, ctx.config.seed)?;
            Ok((o.value, o.passed))
        }
        Cmd::Batch { file, timings } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let jobs = parse_jobs(&text)?;
            ctx.progress(&format!("{} job(s) on {} worker(s)", jobs.len(), ctx.config.jobs));
            let r = run_batch(&jobs, &ctx, timings)?;
            Ok((serde_json::to_value(r).unwrap(), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let quiet = cli.quiet;
    match execute(cli) {
        Ok((value, passed)) => {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&json!({ "error": e.to_json() })).unwrap());
            if !quiet {
                eprintln!("{e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
