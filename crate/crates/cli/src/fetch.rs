use std::path::PathBuf;
use std::time::Duration;

use atlas::{snapshot_lookup, SnapshotEntry, SNAPSHOT_PATH};
use bigmath::Rational;
use serde::Deserialize;

use crate::{CliError, Config};

pub const LMFDB_API: &str = "https://www.lmfdb.org/api/ec_curvedata/";

/// A blocking HTTP GET. Kept behind a trait so tests can forbid the network.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<String, String>;
}

pub struct HttpTransport {
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new() -> Result<Self, CliError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| CliError::Resource(format!("http client: {e}")))?;
        Ok(HttpTransport { client })
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String, String> {
        let resp = self.client.get(url).send().map_err(|e| e.to_string())?;
        let status = resp.status();
        if !status.is_success() {
            return Err(format!("HTTP {status}"));
        }
        resp.text().map_err(|e| e.to_string())
    }
}

/// Refuses every request.
pub struct NoNetwork;

impl Transport for NoNetwork {
    fn get(&self, url: &str) -> Result<String, String> {
        Err(format!("network disabled, refused {url}"))
    }
}

#[derive(Deserialize)]
struct ApiPage {
    data: Vec<ApiCurve>,
}

#[derive(Deserialize)]
struct ApiCurve {
    lmfdb_label: String,
    ainvs: Vec<Rational>,
    conductor: u64,
}

pub struct Fetcher {
    offline: bool,
    cache_dir: PathBuf,
    transport: Box<dyn Transport>,
}

/// Checks the shape N.xK: a positive conductor, an isogeny class letter code, a curve number.
pub fn validate_label(label: &str) -> Result<(), CliError> {
    let bad = || CliError::Domain(format!("'{label}' is not an elliptic curve label over Q"));
    let (n, rest) = label.split_once('.').ok_or_else(bad)?;
    let conductor: u64 = n.parse().map_err(|_| bad())?;
    let split = rest.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (class, idx) = rest.split_at(split);
    if conductor == 0
        || n.starts_with('0')
        || class.is_empty()
        || !class.bytes().all(|b| b.is_ascii_lowercase())
        || idx.starts_with('0')
        || !idx.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    Ok(())
}

impl Fetcher {
    pub fn new(config: &Config, transport: Box<dyn Transport>) -> Self {
        Fetcher { offline: config.offline, cache_dir: config.cache_dir.clone(), transport }
    }

    /// Uses the HTTP transport unless the config is offline.
    pub fn from_config(config: &Config) -> Result<Self, CliError> {
        let transport: Box<dyn Transport> = if config.offline { Box::new(NoNetwork) } else { Box::new(HttpTransport::new()?) };
        Ok(Fetcher::new(config, transport))
    }

    fn cache_path(&self, label: &str) -> PathBuf {
        self.cache_dir.join(format!("{label}.json"))
    }

    /// Bundled snapshot first; online, then the cache and the LMFDB API.
    pub fn fetch(&self, label: &str) -> Result<SnapshotEntry, CliError> {
        validate_label(label)?;
        if let Some(e) = snapshot_lookup(label) {
            return Ok(e.clone());
        }
        if self.offline {
            return Err(CliError::Resource(format!(
                "{label} is not in the bundled snapshot {SNAPSHOT_PATH} and offline mode is set"
            )));
        }
        let path = self.cache_path(label);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(e) = serde_json::from_str::<SnapshotEntry>(&text) {
                if e.label == label {
                    return Ok(e);
                }
            }
        }
        let url = format!("{LMFDB_API}?lmfdb_label={label}&_format=json&_fields=lmfdb_label,ainvs,conductor");
        let body = self.transport.get(&url).map_err(|e| {
            CliError::Resource(format!("fetching {label} failed ({e}); rerun with offline mode to use only {SNAPSHOT_PATH}"))
        })?;
        let page: ApiPage =
            serde_json::from_str(&body).map_err(|e| CliError::Resource(format!("unexpected LMFDB response: {e}")))?;
        let c = page
            .data
            .into_iter()
            .find(|c| c.lmfdb_label == label)
            .ok_or_else(|| CliError::Domain(format!("LMFDB has no curve labelled {label}")))?;
        let a_invariants: [Rational; 5] = c
            .ainvs
            .try_into()
            .map_err(|_| CliError::Resource(format!("LMFDB returned malformed a-invariants for {label}")))?;
        let entry = SnapshotEntry { label: c.lmfdb_label, a_invariants, conductor: c.conductor };
        entry.curve()?;
        // A failed cache write only costs a refetch.
        if std::fs::create_dir_all(&self.cache_dir).is_ok() {
            let _ = std::fs::write(&path, serde_json::to_string_pretty(&entry).unwrap());
        }
        Ok(entry)
    }
}
