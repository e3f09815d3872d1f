use atlas::AtlasError;
use ellcurve::EcError;
use numberfield::NfError;
use serde::Serialize;
use thiserror::Error;
use torsion::TorsionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Resource(_) => "resource",
            CliError::Undecided(_) => "undecided",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Resource(_) | CliError::Undecided(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    pub fn to_json(&self) -> ErrorJson {
        let message = match self {
            CliError::Usage(m)
            | CliError::Domain(m)
            | CliError::Resource(m)
            | CliError::Undecided(m)
            | CliError::Internal(m) => m.clone(),
        };
        ErrorJson { kind: self.kind(), message }
    }
}

impl From<NfError> for CliError {
    fn from(e: NfError) -> Self {
        match e {
            NfError::Domain(m) => CliError::Domain(m),
            NfError::DivisionByZero => CliError::Domain("division by zero".into()),
            NfError::Resource(m) => CliError::Resource(m),
            NfError::Undecided(m) => CliError::Undecided(m),
            NfError::Internal(m) => CliError::Internal(m),
        }
    }
}

impl From<EcError> for CliError {
    fn from(e: EcError) -> Self {
        match e {
            EcError::Resource(m) => CliError::Resource(m),
            EcError::Domain(m) => CliError::Domain(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<TorsionError> for CliError {
    fn from(e: TorsionError) -> Self {
        match e {
            TorsionError::Domain(m) => CliError::Domain(m),
            TorsionError::Resource(m) => CliError::Resource(m),
            TorsionError::Internal(m) => CliError::Internal(m),
            TorsionError::Field(e) => e.into(),
            TorsionError::Curve(e) => e.into(),
        }
    }
}

impl From<AtlasError> for CliError {
    fn from(e: AtlasError) -> Self {
        match e {
            AtlasError::Domain(m) => CliError::Domain(m),
            AtlasError::Resource(m) => CliError::Resource(m),
            AtlasError::Undecided(m) => CliError::Undecided(m),
            AtlasError::Internal(m) => CliError::Internal(m),
            AtlasError::Field(e) => e.into(),
            AtlasError::Curve(e) => e.into(),
            AtlasError::Torsion(e) => e.into(),
        }
    }
}

impl From<bigmath::MathError> for CliError {
    fn from(e: bigmath::MathError) -> Self {
        CliError::Domain(e.to_string())
    }
}
