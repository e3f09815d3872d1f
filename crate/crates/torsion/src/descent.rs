use ellcurve::CurveModel;
use num_bigint::BigInt;
use num_integer::Integer;
use numberfield::{FieldSpec, NumberField};
use serde::Serialize;

use crate::group::{primary_count, TorsionOptions};
use crate::{quadratic_subfield_disc, TorsionError};

#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub p: u64,
    pub q_power: u64,
    pub gcd: u64,
    pub d_star: i64,
    /// |E(Q(ζ_p))[q_power]|
    pub cyclotomic_side: u64,
    /// |E(Q)[q_power]|
    pub rational_side: u64,
    /// |E_{d*}(Q)[q_power]|
    pub twist_side: u64,
    pub consistent: bool,
    pub hypothesis_holds: bool,
    pub flags: Vec<String>,
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = bigmath::factor_u64(n);
    (f.len() == 1).then(|| f[0])
}

/// Compares E(Q(ζ_p))[q] with E(Q)[q] and E_{d*}(Q)[q], where Q(√d*) is the
/// quadratic subfield. When gcd(p − 1, φ(q)) ≤ 2 and the q-part is cyclic,
/// the first must equal the larger of the other two.
pub fn twist_descent_check(
    e: &CurveModel,
    p: u64,
    q_power: u64,
    enforce_hypothesis: bool,
    opts: &TorsionOptions,
) -> Result<DescentReport, TorsionError> {
    let (ell, v) = prime_power(q_power)
        .filter(|(l, _)| *l != 2)
        .ok_or_else(|| TorsionError::Domain(format!("{q_power} is not an odd prime power")))?;
    let phi = (ell - 1) * ell.pow(v - 1);
    let g = (p - 1).gcd(&phi);
    if enforce_hypothesis && g > 2 {
        return Err(TorsionError::Domain(format!("gcd(p − 1, φ({q_power})) = {g} exceeds 2")));
    }
    let d_star = quadratic_subfield_disc(p)?;
    let kp = NumberField::new(FieldSpec::cyclotomic(p))?;
    let q = NumberField::new(FieldSpec::Rationals)?;
    let s = e.short_form();
    let t = e.quadratic_twist(&BigInt::from(d_star))?;
    let ts = t.short_form();
    let side_k = primary_count(&s.a, &s.b, &kp, ell, v, opts)?;
    let side_q = primary_count(&s.a, &s.b, &q, ell, v, opts)?;
    let side_t = primary_count(&ts.a, &ts.b, &q, ell, v, opts)?;
    let last = |c: &[u64]| *c.last().unwrap();
    let (ck, cq, ct) = (last(&side_k.counts), last(&side_q.counts), last(&side_t.counts));
    let cyclic = side_k.a == 0;
    let mut flags: Vec<String> = [side_k.flags, side_q.flags, side_t.flags].concat();
    if !cyclic {
        flags.push(format!("E(Q(ζ_{p}))[{q_power}] is not cyclic"));
    }
    Ok(DescentReport {
        p,
        q_power,
        gcd: g,
        d_star,
        cyclotomic_side: ck,
        rational_side: cq,
        twist_side: ct,
        consistent: ck == cq.max(ct),
        hypothesis_holds: g <= 2 && cyclic,
        flags,
    })
}
