use bigmath::{squarefree_part, Rational};
use ellcurve::CurveModel;
use num_bigint::BigInt;
use serde::Serialize;

use crate::AtlasError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Jkl10,
    Jkl12,
}

impl std::str::FromStr for Family {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, AtlasError> {
        match s {
            "jkl10" => Ok(Family::Jkl10),
            "jkl12" => Ok(Family::Jkl12),
            _ => Err(AtlasError::Domain(format!("unknown family {s:?}; expected jkl10 or jkl12"))),
        }
    }
}

/// A member of a one-parameter family together with the quadratic field Q(√d)
/// over which its torsion grows.
#[derive(Clone, Debug)]
pub struct FamilyCurve {
    pub family: Family,
    pub t: Rational,
    pub curve: CurveModel,
    /// d(t) before removing square factors.
    pub d_value: Rational,
    /// Squarefree integer with Q(√d(t)) = Q(√d).
    pub d: BigInt,
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn squarefree_of(v: &Rational) -> Result<BigInt, AtlasError> {
    if v.is_zero() {
        return Err(AtlasError::Domain("d(t) vanishes".into()));
    }
    squarefree_part(&(v.numer() * v.denom())).map_err(|e| AtlasError::Domain(e.to_string()))
}

/// y² + (1 − c)xy − by = x³ − bx² as a-invariants [1 − c, −b, −b, 0, 0].
fn tate_normal(b: &Rational, c: &Rational) -> Result<CurveModel, AtlasError> {
    let a = [r(1) - c.clone(), -b.clone(), -b.clone(), Rational::zero(), Rational::zero()];
    CurveModel::from_a_invariants(a).map_err(|_| AtlasError::Domain("parameter gives a singular curve".into()))
}

/// The family with Z/2 × Z/10 over Q(√d(t)), d(t) = 8t³ − 8t² + 1.
pub fn jkl_curve_10(t: &Rational) -> Result<FamilyCurve, AtlasError> {
    if t.is_zero() || *t == Rational::frac(1, 2) || *t == r(1) {
        return Err(AtlasError::Domain(format!("t = {t} is excluded (t ∉ {{0, 1/2, 1}})")));
    }
    let t2 = t * t;
    let t3 = &t2 * t;
    let den = t2.clone() - r(3) * t.clone() + r(1);
    if den.is_zero() {
        return Err(AtlasError::Domain(format!("t = {t} is a root of t² − 3t + 1")));
    }
    let s = r(2) * t2.clone() - r(3) * t.clone() + r(1);
    let b = &(&t3 * &s) / &(&den * &den);
    let c = -(&(t * &s) / &den);
    let d_value = r(8) * t3 - r(8) * t2 + r(1);
    let d = squarefree_of(&d_value)?;
    Ok(FamilyCurve { family: Family::Jkl10, t: t.clone(), curve: tate_normal(&b, &c)?, d_value, d })
}

/// The family with Z/2 × Z/12 over Q(√d(t)), d(t) = (t² − 1)/(t² + 3).
pub fn jkl_curve_12(t: &Rational) -> Result<FamilyCurve, AtlasError> {
    if t.is_zero() || *t == r(1) || *t == r(-1) {
        return Err(AtlasError::Domain(format!("t = {t} is excluded (t ∉ {{−1, 0, 1}})")));
    }
    let t2 = t * t;
    let c = &(r(1) - t2.clone()) / &(&t2 * &t2 + r(3) * t2.clone());
    let b = &c + &(&c * &c);
    let d_value = &(t2.clone() - r(1)) / &(t2 + r(3));
    let d = squarefree_of(&d_value)?;
    Ok(FamilyCurve { family: Family::Jkl12, t: t.clone(), curve: tate_normal(&b, &c)?, d_value, d })
}

pub fn family_curve(family: Family, t: &Rational) -> Result<FamilyCurve, AtlasError> {
    match family {
        Family::Jkl10 => jkl_curve_10(t),
        Family::Jkl12 => jkl_curve_12(t),
    }
}

/// The torsion structure every admissible member has over Q(√d).
pub fn expected_structure(family: Family) -> (u64, u64) {
    match family {
        Family::Jkl10 => (2, 10),
        Family::Jkl12 => (2, 12),
    }
}
