//! Torsion subgroups of elliptic curves over Q after base change to Q,
//! Q(ζ_{p^k}) or Q(√d): reduction bounds, division-polynomial point search,
//! structure assembly and twist-descent cross-checks.

mod bound;
mod descent;
mod group;

pub use bound::{residue_degree, torsion_bound, BoundOptions, BoundPrime, TorsionBound};
pub use descent::{twist_descent_check, DescentReport};
pub use group::{format_structure, primary_count, torsion_subgroup, PrimaryPart, TorsionGroup, TorsionJson, TorsionOptions};

use num_bigint::BigInt;
use numberfield::{FieldSpec, NfError, NumberField};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Curve(#[from] ellcurve::EcError),
}

/// d with Q(√d) the quadratic subfield of Q(ζ_p): p* = ±p ≡ 1 (mod 4).
pub fn quadratic_subfield_disc(p: u64) -> Result<i64, TorsionError> {
    if p == 2 || !bigmath::is_prime_u64(p) {
        return Err(TorsionError::Domain(format!("{p} is not an odd prime")));
    }
    Ok(if p % 4 == 1 { p as i64 } else { -(p as i64) })
}

/// Whether μ_m ⊆ K, the condition for Z/m × Z/m ⊆ E(K) imposed by the Weil pairing.
pub fn weil_admissible(m: u64, k: &NumberField) -> bool {
    let roots_of_unity = match k.spec() {
        FieldSpec::Rationals => 2,
        FieldSpec::Cyclotomic { p, .. } => {
            let n = k.conductor().unwrap();
            if *p == 2 { n } else { 2 * n }
        }
        FieldSpec::Quadratic { d } => {
            if d == &BigInt::from(-1) {
                4
            } else if d == &BigInt::from(-3) {
                6
            } else {
                2
            }
        }
    };
    m >= 1 && roots_of_unity % m == 0
}
