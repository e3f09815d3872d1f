use bigmath::{factor, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use numberfield::{NfElem, NumberField};
use polyring::{Rationals, Ring};
use serde::{Deserialize, Serialize};

use crate::weierstrass::{Point, Weierstrass};
use crate::EcError;

/// The integral short model y² = x³ + Ax + B and the substitution
/// x_s = u²(x + b2/12), y_s = u³(y + (a1·x + a3)/2) from the long model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortForm {
    pub a: BigInt,
    pub b: BigInt,
    pub u: BigInt,
    pub shift: Rational,
    pub a1: Rational,
    pub a3: Rational,
}

/// An elliptic curve over Q, used over Q and over its base changes to number fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub label: Option<String>,
    a: [Rational; 5],
    disc: Rational,
    j: Rational,
    short: ShortForm,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub a_invariants: [Rational; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<String>,
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

impl CurveModel {
    pub fn from_a_invariants(a: [Rational; 5]) -> Result<Self, EcError> {
        let e = Weierstrass::new(Rationals, a.clone())?;
        let disc = e.discriminant();
        let j = e.j_invariant();
        let [b2, _, _, _] = e.b_invariants();
        let [c4, c6] = e.c_invariants();
        let a0 = -c4 / Rational::from_int(48);
        let b0 = -c6 / Rational::from_int(864);
        let den = a0.denom().lcm(b0.denom());
        let mut u = BigInt::one();
        for (p, _) in factor(&den.magnitude().clone()) {
            let p = BigInt::from(p);
            let v = |d: &BigInt| {
                let mut d = d.clone();
                let mut e = 0u32;
                while (&d % &p).is_zero() {
                    d /= &p;
                    e += 1;
                }
                e
            };
            let e = ceil_div(v(a0.denom()), 4).max(ceil_div(v(b0.denom()), 6));
            u *= Pow::pow(&p, e);
        }
        let u2 = Rational::from_int(&u * &u);
        let u4 = &u2 * &u2;
        let u6 = &u4 * &u2;
        let sa = &a0 * &u4;
        let sb = &b0 * &u6;
        debug_assert!(sa.is_integer() && sb.is_integer());
        let short = ShortForm {
            a: sa.numer().clone(),
            b: sb.numer().clone(),
            u,
            shift: b2 / Rational::from_int(12),
            a1: a[0].clone() / Rational::from_int(2),
            a3: a[2].clone() / Rational::from_int(2),
        };
        Ok(CurveModel { label: None, a, disc, j, short })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, EcError> {
        Self::from_a_invariants(a.map(Rational::from_int))
    }

    pub fn short_ab(a: i64, b: i64) -> Result<Self, EcError> {
        Self::from_ints([0, 0, 0, a, b])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn from_json(j: &CurveJson) -> Result<Self, EcError> {
        let mut c = Self::from_a_invariants(j.a_invariants.clone())?;
        c.label = j.label.clone();
        Ok(c)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson { label: self.label.clone(), a_invariants: self.a.clone(), conductor: None }
    }

    pub fn a_invariants(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn discriminant(&self) -> &Rational {
        &self.disc
    }

    pub fn j_invariant(&self) -> &Rational {
        &self.j
    }

    pub fn short_form(&self) -> &ShortForm {
        &self.short
    }

    /// −16(4A³ + 27B²), the discriminant of the integral short model.
    pub fn short_discriminant(&self) -> BigInt {
        let (a, b) = (&self.short.a, &self.short.b);
        -(BigInt::from(16)) * (BigInt::from(4) * a * a * a + BigInt::from(27) * b * b)
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    pub fn over(&self, k: &NumberField) -> Weierstrass<NumberField> {
        Weierstrass::new(k.clone(), self.a.clone().map(|c| k.from_rational(&c)))
            .expect("nonsingular over Q stays nonsingular")
    }

    pub fn short_over(&self, k: &NumberField) -> Weierstrass<NumberField> {
        let ab = |n: &BigInt| k.from_bigint(n);
        Weierstrass::short(k.clone(), ab(&self.short.a), ab(&self.short.b)).expect("nonsingular")
    }

    pub fn long_to_short(&self, k: &NumberField, p: &Point<NfElem>) -> Point<NfElem> {
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let s = &self.short;
        let r = |q: &Rational| k.from_rational(q);
        let u2 = k.from_bigint(&(&s.u * &s.u));
        let u3 = k.mul(&u2, &k.from_bigint(&s.u));
        let xs = k.mul(&u2, &k.add(x, &r(&s.shift)));
        let ys = k.mul(&u3, &k.add(&k.add(y, &k.mul(&r(&s.a1), x)), &r(&s.a3)));
        Point::Affine(xs, ys)
    }

    pub fn short_to_long(&self, k: &NumberField, p: &Point<NfElem>) -> Point<NfElem> {
        let (xs, ys) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let s = &self.short;
        let r = |q: &Rational| k.from_rational(q);
        let u2 = k.from_bigint(&(&s.u * &s.u));
        let u3 = k.mul(&u2, &k.from_bigint(&s.u));
        let x = k.sub(&k.div_exact(xs, &u2).unwrap(), &r(&s.shift));
        let y = k.sub(
            &k.sub(&k.div_exact(ys, &u3).unwrap(), &k.mul(&r(&s.a1), &x)),
            &r(&s.a3),
        );
        Point::Affine(x, y)
    }

    /// The twist y² = x³ + d²A·x + d³B of the short model, isomorphic to E
    /// over Q(√d) through (x, y) ↦ (d·x, d^{3/2}·y).
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<CurveModel, EcError> {
        if d.is_zero() {
            return Err(EcError::Domain("twist by d = 0".into()));
        }
        let d2 = d * d;
        let a = &d2 * &self.short.a;
        let b = &d2 * d * &self.short.b;
        let z = Rational::zero();
        CurveModel::from_a_invariants([z.clone(), z.clone(), z, Rational::from_int(a), Rational::from_int(b)])
    }

    /// Primes dividing the short-model discriminant, found by factoring.
    pub fn bad_primes(&self) -> Vec<BigInt> {
        factor(&self.short_discriminant().magnitude().clone())
            .into_iter()
            .map(|(p, _)| BigInt::from(p))
            .collect()
    }

    pub fn has_good_reduction_at(&self, q: u64) -> bool {
        q > 3 && !(self.short_discriminant() % BigInt::from(q)).is_zero()
    }

}
