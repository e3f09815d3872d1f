use std::sync::OnceLock;

use bigmath::Rational;
use ellcurve::{CurveJson, CurveModel};
use numberfield::FieldSpec;
use serde::{Deserialize, Serialize};

use crate::gates::Invariants;
use crate::jkl::{family_curve, Family};
use crate::AtlasError;

const SNAPSHOT_JSON: &str = include_str!("../data/lmfdb_snapshot.json");
const DATASET_JSON: &str = include_str!("../data/dataset.json");

/// Location of the bundled snapshot inside the source tree.
pub const SNAPSHOT_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/lmfdb_snapshot.json");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SnapshotEntry {
    pub label: String,
    pub a_invariants: [Rational; 5],
    pub conductor: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Snapshot {
    pub source: String,
    pub fields: Vec<String>,
    pub curves: Vec<SnapshotEntry>,
}

impl SnapshotEntry {
    pub fn curve(&self) -> Result<CurveModel, AtlasError> {
        Ok(CurveModel::from_a_invariants(self.a_invariants.clone())?.with_label(&self.label))
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            label: Some(self.label.clone()),
            a_invariants: self.a_invariants.clone(),
            conductor: Some(self.conductor.to_string()),
        }
    }
}

pub fn snapshot() -> &'static Snapshot {
    static SNAP: OnceLock<Snapshot> = OnceLock::new();
    SNAP.get_or_init(|| serde_json::from_str(SNAPSHOT_JSON).expect("bundled snapshot is well formed"))
}

pub fn snapshot_lookup(label: &str) -> Option<&'static SnapshotEntry> {
    snapshot().curves.iter().find(|c| c.label == label)
}

/// One checkable statement about a curve.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Check {
    /// E(K)_tors is exactly the given structure.
    Group { field: FieldSpec, expected: Invariants },
    /// E(K) has a point of exact order `order`, fixed by σ_a when `fixed_by` is set.
    Point {
        field: FieldSpec,
        order: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fixed_by: Option<i64>,
    },
    /// Roots of ψ̃_ℓ in K: presence, orbit degree, primes certified ramified.
    Kernel {
        field: FieldSpec,
        ell: u64,
        root: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit_degree: Option<usize>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        ramified: Vec<u64>,
    },
    /// The primes of bad reduction.
    BadPrimes { expected: Vec<u64> },
    /// Squarefree d of a family member and its torsion over Q(√d).
    Family { expected_d: i64, expected: Invariants },
    /// Torsion over Q(ζ_p) agrees with torsion over its quadratic subfield.
    Descent { p: u64 },
    /// A statement about a field outside the constructible families.
    Unverifiable { field: String, statement: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim {
    #[serde(flatten)]
    pub check: Check,
    pub suites: Vec<String>,
    pub note: String,
    /// Long-running; skipped unless stretch targets are enabled.
    #[serde(default)]
    pub stretch: bool,
}

/// A curve of the corpus, given by label or as a family member, with its claims.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Rational>,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteInfo {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Dataset {
    pub suites: Vec<SuiteInfo>,
    pub records: Vec<CurveRecord>,
}

impl CurveRecord {
    pub fn subject(&self) -> String {
        match (&self.label, &self.family, &self.t) {
            (Some(l), _, _) => l.clone(),
            (None, Some(f), Some(t)) => format!("{f}({t})"),
            _ => "unnamed".into(),
        }
    }

    pub fn family(&self) -> Result<Option<Family>, AtlasError> {
        self.family.as_deref().map(str::parse).transpose()
    }

    /// The curve, from the snapshot for labels or from the family formula.
    pub fn curve(&self) -> Result<CurveModel, AtlasError> {
        if let Some(l) = &self.label {
            return snapshot_lookup(l)
                .ok_or_else(|| AtlasError::Internal(format!("label {l} missing from the snapshot")))?
                .curve();
        }
        match (self.family()?, &self.t) {
            (Some(f), Some(t)) => Ok(family_curve(f, t)?.curve),
            _ => Err(AtlasError::Internal("record has neither a label nor a family parameter".into())),
        }
    }

    pub fn conductor(&self) -> Option<u64> {
        self.label.as_deref().and_then(snapshot_lookup).map(|e| e.conductor)
    }
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::Group { .. } => "group",
            Check::Point { .. } => "point",
            Check::Kernel { .. } => "kernel",
            Check::BadPrimes { .. } => "bad-primes",
            Check::Family { .. } => "family",
            Check::Descent { .. } => "descent",
            Check::Unverifiable { .. } => "unverifiable",
        }
    }

    pub fn field(&self) -> String {
        match self {
            Check::Group { field, .. } | Check::Point { field, .. } | Check::Kernel { field, .. } => field.to_string(),
            Check::Unverifiable { field, .. } => field.clone(),
            Check::Descent { p } => format!("cyclo:{p}"),
            Check::BadPrimes { .. } | Check::Family { .. } => "Q".into(),
        }
    }

    pub fn key(&self) -> String {
        match self {
            Check::Kernel { ell, .. } => format!("{}/ell={ell}/{}", self.kind(), self.field()),
            _ => format!("{}/{}", self.kind(), self.field()),
        }
    }
}

impl Dataset {
    pub fn parse(json: &str) -> Result<Self, AtlasError> {
        let d: Dataset = serde_json::from_str(json).map_err(|e| AtlasError::Internal(format!("dataset: {e}")))?;
        for r in &d.records {
            for c in &r.claims {
                for s in &c.suites {
                    if !d.suites.iter().any(|i| &i.name == s) {
                        return Err(AtlasError::Internal(format!("{} names unregistered suite {s}", r.subject())));
                    }
                }
            }
        }
        Ok(d)
    }

    pub fn suite_names(&self) -> Vec<&str> {
        self.suites.iter().map(|s| s.name.as_str()).collect()
    }

    /// (record, claim, id) for every claim in the suite, in dataset order.
    pub fn suite_claims(&self, suite: &str) -> Result<Vec<(&CurveRecord, &Claim, String)>, AtlasError> {
        if !self.suites.iter().any(|s| s.name == suite) {
            return Err(AtlasError::Domain(format!(
                "unknown suite {suite:?}; available: {}",
                self.suite_names().join(", ")
            )));
        }
        Ok(self
            .records
            .iter()
            .flat_map(|r| r.claims.iter().map(move |c| (r, c)))
            .filter(|(_, c)| c.suites.iter().any(|s| s == suite))
            .map(|(r, c)| (r, c, format!("{}/{}", r.subject(), c.check.key())))
            .collect())
    }
}

pub fn dataset() -> &'static Dataset {
    static DATA: OnceLock<Dataset> = OnceLock::new();
    DATA.get_or_init(|| Dataset::parse(DATASET_JSON).expect("bundled dataset is well formed"))
}
