//! Classification gates, the bundled curve corpus, isogeny-kernel field
//! reports, the JKL parametric families and the claim verification harness.

mod corpus;
mod gates;
mod jkl;
mod kernel;
mod ser;
mod verify;

pub use corpus::{dataset, snapshot, snapshot_lookup, Check, Claim, CurveRecord, Dataset, Snapshot, SnapshotEntry, SuiteInfo, SNAPSHOT_PATH};
pub use gates::{allowed_groups, gate_table, AllowedGroup, ClassificationGate, ExceptionalGroup, GateReport, GateTable, Invariants};
pub use jkl::{expected_structure, family_curve, jkl_curve_10, jkl_curve_12, Family, FamilyCurve};
pub use kernel::{isogeny_kernel_field, orbit_degree_divides, KernelOptions, KernelOrbit, KernelReport, PrimeVerdict, DEFAULT_KERNEL_CAP};

pub use verify::{derive_seed, verify_dataset, ClaimResult, Status, Summary, VerificationReport, VerifyOptions, DESCENT_STRUCTURES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] numberfield::NfError),
    #[error(transparent)]
    Curve(#[from] ellcurve::EcError),
    #[error(transparent)]
    Torsion(#[from] torsion::TorsionError),
}
