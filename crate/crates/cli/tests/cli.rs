use std::process::Command as Proc;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use cyclotors::{
    parse_jobs, run, run_batch, validate_label, CliError, Command, Config, Context, Fetcher, JobStatus, Transport,
};

/// Counts requests and answers each with a fixed body or error.
struct Stub {
    calls: Arc<AtomicUsize>,
    reply: Result<String, String>,
}

impl Transport for Stub {
    fn get(&self, _url: &str) -> Result<String, String> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.reply.clone()
    }
}

fn stub(reply: Result<&str, &str>) -> (Box<dyn Transport>, Arc<AtomicUsize>) {
    let calls = Arc::new(AtomicUsize::new(0));
    let t = Stub { calls: calls.clone(), reply: reply.map(String::from).map_err(String::from) };
    (Box::new(t), calls)
}

fn offline_config() -> Config {
    Config { offline: true, cache_dir: tempfile::tempdir().unwrap().keep(), ..Config::default() }
}

fn context(config: Config) -> Context {
    let (t, _) = stub(Err("network used in a test"));
    Context { fetcher: Fetcher::new(&config, t), config, quiet: true }
}

#[test]
fn labels_are_validated() {
    for ok in ["11.a3", "14450.b2", "26569.a2", "1225.bc1"] {
        validate_label(ok).unwrap();
    }
    for bad in ["0.z9", "11a3", "11.A3", "11.a", "011.a1", "11.a03", "x.a1", ""] {
        assert!(matches!(validate_label(bad), Err(CliError::Domain(_))), "{bad}");
    }
}

#[test]
fn offline_fetch_never_touches_the_network() {
    let config = offline_config();
    let (t, calls) = stub(Ok("{}"));
    let f = Fetcher::new(&config, t);
    let e = f.fetch("11.a3").unwrap();
    assert_eq!(e.conductor, 11);
    assert_eq!(e.a_invariants.len(), 5);
    let err = f.fetch("37.a1").unwrap_err();
    assert!(matches!(&err, CliError::Resource(m) if m.contains("lmfdb_snapshot.json")), "{err}");
    assert!(matches!(f.fetch("0.z9"), Err(CliError::Domain(_))));
    assert_eq!(calls.load(Ordering::SeqCst), 0);
}

#[test]
fn online_fetch_parses_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let config = Config { cache_dir: dir.path().to_path_buf(), ..Config::default() };
    let body = r#"{"data": [{"lmfdb_label": "37.a1", "ainvs": [0, 0, 1, -1, 0], "conductor": 37}]}"#;
    let (t, calls) = stub(Ok(body));
    let e = Fetcher::new(&config, t).fetch("37.a1").unwrap();
    assert_eq!(e.conductor, 37);
    assert_eq!(calls.load(Ordering::SeqCst), 1);
    assert!(dir.path().join("37.a1.json").exists());
    // The second fetcher cannot reach the network, so the answer must come from the cache.
    let (t, calls) = stub(Err("offline"));
    let again = Fetcher::new(&config, t).fetch("37.a1").unwrap();
    assert_eq!(again, e);
    assert_eq!(calls.load(Ordering::SeqCst), 0);
}

#[test]
fn online_fetch_errors() {
    let config = Config { cache_dir: tempfile::tempdir().unwrap().keep(), ..Config::default() };
    let (t, _) = stub(Err("connection refused"));
    let err = Fetcher::new(&config, t).fetch("37.a1").unwrap_err();
    assert!(matches!(&err, CliError::Resource(m) if m.contains("offline")), "{err}");
    let (t, _) = stub(Ok(r#"{"data": []}"#));
    assert!(matches!(Fetcher::new(&config, t).fetch("37.z1"), Err(CliError::Domain(_))));
    let (t, _) = stub(Ok("<html>"));
    assert!(matches!(Fetcher::new(&config, t).fetch("37.a1"), Err(CliError::Resource(_))));
}

#[test]
fn config_parsing() {
    let c = Config::from_json(r#"{"seed": 7, "jobs": 3}"#).unwrap();
    assert_eq!((c.seed, c.jobs, c.hensel_max_bits, c.prime_budget, c.divpoly_cap), (7, 3, 4096, 5, 40));
    assert!(!c.offline);
    assert!(matches!(Config::from_json(r#"{"jobs": 0}"#), Err(CliError::Usage(_))));
    assert!(matches!(Config::from_json(r#"{"divpoly_cap": 0}"#), Err(CliError::Usage(_))));
    assert!(matches!(Config::from_json(r#"{"colour": "blue"}"#), Err(CliError::Usage(_))));
    let t = c.torsion_options(99);
    assert_eq!(t.roots.seed, 99);
    assert_eq!(t.bound.prime_budget, 5);
}

#[test]
fn commands_produce_expected_json() {
    let ctx = context(offline_config());
    let fam = run(&Command::Family { family: "jkl10".into(), t: "-75/242".into() }, &ctx, 0).unwrap();
    assert_eq!(fam.value["d"], serde_json::json!(-59));
    let fam = run(&Command::Family { family: "jkl12".into(), t: "248354/307104".into() }, &ctx, 0).unwrap();
    assert_eq!(fam.value["d"], serde_json::json!(-47));
    let gate = run(&Command::Classify { p: 23 }, &ctx, 0).unwrap();
    assert_eq!(gate.value["groups"].as_array().unwrap().len(), 18);
    let div = run(&Command::Divpoly { curve: "[0, 1]".into(), n: 3 }, &ctx, 0).unwrap();
    // ψ̃_3 = 3x⁴ + 6Ax² + 12Bx − A² for y² = x³ + 1.
    assert_eq!(div.value["coefficients"], serde_json::json!(["0", "12", "0", "0", "3"]));
    let tw = run(&Command::Twist { curve: "[0, 0, 0, -1, 0]".into(), d: -1 }, &ctx, 0).unwrap();
    assert_eq!(tw.value["twist"]["a_invariants"], serde_json::json!(["0", "0", "0", "-1", "0"]));
    let err = run(&Command::Torsion { curve: "[0, 0]".into(), field: "Q".into() }, &ctx, 0).unwrap_err();
    assert!(matches!(err, CliError::Domain(_)));
    let err = run(&Command::Torsion { curve: "[1, 2, 3]".into(), field: "Q".into() }, &ctx, 0).unwrap_err();
    assert!(matches!(err, CliError::Usage(_)));
    let err = run(&Command::Classify { p: 3 }, &ctx, 0).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn torsion_of_a_label() {
    let ctx = context(offline_config());
    let out = run(&Command::Torsion { curve: "11.a3".into(), field: "cyclo:11".into() }, &ctx, 0).unwrap();
    assert_eq!(out.value["torsion"]["invariants"], serde_json::json!([1, 25]));
    assert_eq!(out.value["structure"], "Z/25");
}

#[test]
fn roots_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    // x² + x + 1 splits in Q(√−3) = cyclo:3.
    std::fs::write(&path, "[1, 1, 1]").unwrap();
    let ctx = context(offline_config());
    let out = run(&Command::Roots { poly: path.clone(), field: "cyclo:3".into() }, &ctx, 0).unwrap();
    assert_eq!(out.value["roots"].as_array().unwrap().len(), 2);
    let out = run(&Command::Roots { poly: path.clone(), field: "quad:5".into() }, &ctx, 0).unwrap();
    assert!(out.value["roots"].as_array().unwrap().is_empty());
    std::fs::write(&path, "[0]").unwrap();
    assert!(matches!(run(&Command::Roots { poly: path, field: "Q".into() }, &ctx, 0), Err(CliError::Domain(_))));
}

#[test]
fn batch_records_errors_and_keeps_order() {
    let jobs = parse_jobs(
        r#"[
            {"command": "classify", "p": 5},
            {"command": "torsion", "curve": "[0, 0]", "field": "Q"},
            {"command": "classify", "p": 23},
            {"command": "torsion", "curve": "[0, 1]", "field": "Q"}
        ]"#,
    )
    .unwrap();
    let ctx = context(offline_config());
    let r = run_batch(&jobs, &ctx, false).unwrap();
    let status: Vec<JobStatus> = r.jobs.iter().map(|j| j.status).collect();
    assert_eq!(status, [JobStatus::Ok, JobStatus::Error, JobStatus::Ok, JobStatus::Ok]);
    assert_eq!(r.jobs[0].payload.as_ref().unwrap()["p"], 5);
    assert_eq!(r.jobs[2].payload.as_ref().unwrap()["p"], 23);
    assert_eq!(r.jobs[3].payload.as_ref().unwrap()["torsion"]["invariants"], serde_json::json!([1, 6]));
    assert_eq!(r.jobs[1].error.as_ref().unwrap().kind, "domain");
    assert_ne!(r.jobs[0].seed, r.jobs[2].seed);
    assert_eq!((r.summary.pass, r.summary.error), (3, 1));
}

#[test]
fn batch_is_deterministic_across_workers() {
    let jobs = parse_jobs(
        r#"[
            {"command": "classify", "p": 7},
            {"command": "classify", "p": 11},
            {"command": "classify", "p": 13},
            {"command": "torsion", "curve": "50.b3", "field": "cyclo:5"},
            {"command": "family", "family": "jkl12", "t": "3"}
        ]"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for jobs_n in [1, 3, 1] {
        let ctx = context(Config { jobs: jobs_n, ..offline_config() });
        outputs.push(serde_json::to_string(&run_batch(&jobs, &ctx, false).unwrap()).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    assert!(parse_jobs(r#"[{"command": "nope"}]"#).is_err());
}

fn bin() -> Proc {
    let mut c = Proc::new(env!("CARGO_BIN_EXE_cyclotors"));
    c.env(cyclotors::CACHE_DIR_ENV, std::env::temp_dir().join("cyclotors-test-cache"));
    c
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["--quiet", "classify", "--p", "23"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gate"], "no-3-4-5");
    let out = bin().args(["--quiet", "family", "jkl10", "--t", "-75/242"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], -59);
    assert_eq!(bin().args(["--quiet", "classify", "--p", "4"]).output().unwrap().status.code(), Some(3));
    assert_eq!(bin().args(["--quiet", "--offline", "fetch", "37.a1"]).output().unwrap().status.code(), Some(4));
    assert_eq!(bin().args(["frobnicate"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["classify"]).output().unwrap().status.code(), Some(2));
    let out = bin().args(["--quiet", "verify", "--suite", "nonexistent-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("realizations-small"));
}

#[test]
fn binary_verify_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, r#"{"seed": 3, "jobs": 2, "offline": true}"#).unwrap();
    let out = bin().args(["--quiet", "--config", cfg.to_str().unwrap(), "verify", "--suite", "jkl"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["summary"]["pass"], 4);
    std::fs::write(&cfg, r#"{"jobs": 0}"#).unwrap();
    let out = bin().args(["--config", cfg.to_str().unwrap(), "classify", "--p", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
