use bigmath::{jacobi, mult_order, next_prime_u64};
use ellcurve::{order_over_extension, reduce_mod_q, CountOptions, CurveModel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use numberfield::{FieldSpec, NumberField};
use serde::Serialize;

use crate::TorsionError;

#[derive(Clone, Debug)]
pub struct BoundOptions {
    pub prime_budget: usize,
    pub stability_window: usize,
    /// Auxiliary primes are drawn from below this value.
    pub search_cap: u64,
    pub count: CountOptions,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { prime_budget: 5, stability_window: 3, search_cap: 50_000, count: CountOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundPrime {
    pub q: u64,
    pub f: u32,
    pub count: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionBound {
    #[serde(serialize_with = "as_string")]
    pub b: BigInt,
    pub primes: Vec<BoundPrime>,
    pub stable: bool,
}

fn as_string<S: serde::Serializer>(b: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

/// Residue degree of an unramified prime q in K.
pub fn residue_degree(k: &NumberField, q: u64) -> Option<u32> {
    match k.spec() {
        FieldSpec::Rationals => Some(1),
        FieldSpec::Cyclotomic { p, .. } => {
            if q == *p {
                return None;
            }
            let n = k.conductor().unwrap();
            mult_order(&BigInt::from(q), n).ok().map(|f| f as u32)
        }
        FieldSpec::Quadratic { d } => {
            let qb = BigInt::from(q);
            if q == 2 || (d % &qb).is_zero() {
                return None;
            }
            Some(if jacobi(d, &qb).ok()? == 1 { 1 } else { 2 })
        }
    }
}

/// A multiple of |E(K)_tors|: the gcd of |E(F_{q^f})| over good unramified q ≥ 5,
/// taking primes by increasing residue degree so the counts stay small.
pub fn torsion_bound(e: &CurveModel, k: &NumberField, opts: &BoundOptions) -> Result<TorsionBound, TorsionError> {
    let mut cands = Vec::new();
    let mut q = 4;
    loop {
        q = next_prime_u64(q);
        if q >= opts.search_cap.min(opts.count.budget) {
            break;
        }
        if !e.has_good_reduction_at(q) {
            continue;
        }
        if let Some(f) = residue_degree(k, q) {
            cands.push((f, q));
        }
    }
    cands.sort();
    let mut b = BigInt::zero();
    let mut primes = Vec::new();
    let mut unchanged = 0;
    for (f, q) in cands {
        let n = reduce_mod_q(e, q)?.count_points(&opts.count)?;
        let nf = order_over_extension(n, q, f);
        let nb = b.gcd(&nf);
        if nb == b {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        b = nb;
        primes.push(BoundPrime { q, f, count: nf.to_string() });
        if primes.len() >= opts.prime_budget && unchanged >= opts.stability_window {
            return Ok(TorsionBound { b, primes, stable: true });
        }
    }
    if primes.len() < opts.prime_budget {
        return Err(TorsionError::Resource(format!(
            "only {} admissible primes below {}",
            primes.len(),
            opts.search_cap
        )));
    }
    Ok(TorsionBound { b, primes, stable: false })
}
