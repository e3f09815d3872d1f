use std::path::{Path, PathBuf};

use numberfield::RootOptions;
use serde::{Deserialize, Serialize};
use torsion::TorsionOptions;

use crate::CliError;

/// Overrides `cache_dir` from the config file.
pub const CACHE_DIR_ENV: &str = "CYCLOTORS_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// Precision cap for Hensel lifting, in bits.
    pub hensel_max_bits: u64,
    /// Auxiliary primes used for the torsion bound.
    pub prime_budget: usize,
    /// Largest n whose division polynomial is formed.
    pub divpoly_cap: u32,
    pub jobs: usize,
    pub offline: bool,
    pub cache_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        let cache_dir = std::env::var_os("HOME")
            .map(|h| PathBuf::from(h).join(".cache").join("cyclotors"))
            .unwrap_or_else(|| PathBuf::from(".cyclotors-cache"));
        Config {
            seed: 0,
            hensel_max_bits: 4096,
            prime_budget: 5,
            divpoly_cap: 40,
            jobs: 1,
            offline: false,
            cache_dir,
        }
    }
}

impl Config {
    pub fn from_json(json: &str) -> Result<Self, CliError> {
        let c: Config = serde_json::from_str(json).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    /// Reads `path` if given, then applies the cache directory override from the environment.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut c = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Config::from_json(&text)?
            }
            None => Config::default(),
        };
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            c.cache_dir = PathBuf::from(dir);
        }
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("hensel_max_bits", self.hensel_max_bits),
            ("prime_budget", self.prime_budget as u64),
            ("divpoly_cap", self.divpoly_cap as u64),
            ("jobs", self.jobs as u64),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(CliError::Usage(format!("config: {name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn root_options(&self, seed: u64) -> RootOptions {
        RootOptions { seed, hensel_max_bits: self.hensel_max_bits, ..RootOptions::default() }
    }

    pub fn torsion_options(&self, seed: u64) -> TorsionOptions {
        let mut t = TorsionOptions { roots: self.root_options(seed), divpoly_cap: self.divpoly_cap, ..Default::default() };
        t.bound.prime_budget = self.prime_budget;
        t
    }
}
