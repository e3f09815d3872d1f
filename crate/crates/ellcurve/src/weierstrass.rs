use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use polyring::Field;

use crate::EcError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over an arbitrary field.
#[derive(Clone, Debug)]
pub struct Weierstrass<F: Field> {
    field: F,
    a: [F::Elem; 5],
}

impl<F: Field> Weierstrass<F> {
    pub fn new(field: F, a: [F::Elem; 5]) -> Result<Self, EcError> {
        let e = Weierstrass { field, a };
        if e.field.is_zero(&e.discriminant()) {
            return Err(EcError::Singular);
        }
        Ok(e)
    }

    pub fn short(field: F, a: F::Elem, b: F::Elem) -> Result<Self, EcError> {
        let z = field.zero();
        Self::new(field, [z.clone(), z.clone(), z, a, b])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn a_invariants(&self) -> &[F::Elem; 5] {
        &self.a
    }

    /// (b2, b4, b6, b8)
    pub fn b_invariants(&self) -> [F::Elem; 4] {
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let c = |n: i64| k.from_i64(n);
        let b2 = k.add(&k.square(a1), &k.mul(&c(4), a2));
        let b4 = k.add(&k.mul(&c(2), a4), &k.mul(a1, a3));
        let b6 = k.add(&k.square(a3), &k.mul(&c(4), a6));
        let b8 = {
            let t1 = k.mul(&k.square(a1), a6);
            let t2 = k.mul(&c(4), &k.mul(a2, a6));
            let t3 = k.mul(&k.mul(a1, a3), a4);
            let t4 = k.mul(a2, &k.square(a3));
            let t5 = k.square(a4);
            k.sub(&k.add(&k.sub(&k.add(&t1, &t2), &t3), &t4), &t5)
        };
        [b2, b4, b6, b8]
    }

    /// (c4, c6)
    pub fn c_invariants(&self) -> [F::Elem; 2] {
        let k = &self.field;
        let [b2, b4, b6, _] = self.b_invariants();
        let c = |n: i64| k.from_i64(n);
        let c4 = k.sub(&k.square(&b2), &k.mul(&c(24), &b4));
        let c6 = k.sub(
            &k.mul(&c(36), &k.mul(&b2, &b4)),
            &k.add(&k.mul(&k.square(&b2), &b2), &k.mul(&c(216), &b6)),
        );
        [c4, c6]
    }

    pub fn discriminant(&self) -> F::Elem {
        let k = &self.field;
        let [b2, b4, b6, b8] = self.b_invariants();
        let c = |n: i64| k.from_i64(n);
        let t1 = k.mul(&k.square(&b2), &b8);
        let t2 = k.mul(&c(8), &k.mul(&k.square(&b4), &b4));
        let t3 = k.mul(&c(27), &k.square(&b6));
        let t4 = k.mul(&c(9), &k.mul(&k.mul(&b2, &b4), &b6));
        k.add(&k.sub(&k.sub(&k.neg(&t1), &t2), &t3), &t4)
    }

    /// c4³/Δ
    pub fn j_invariant(&self) -> F::Elem {
        let k = &self.field;
        let [c4, _] = self.c_invariants();
        k.div(&k.mul(&k.square(&c4), &c4), &self.discriminant())
    }

    pub fn is_on_curve(&self, p: &Point<F::Elem>) -> bool {
        let (x, y) = match p {
            Point::Infinity => return true,
            Point::Affine(x, y) => (x, y),
        };
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = k.add(&k.square(y), &k.mul(y, &k.add(&k.mul(a1, x), a3)));
        let rhs = k.add(&k.mul(&k.add(&k.mul(&k.add(x, a2), x), a4), x), a6);
        lhs == rhs
    }

    pub fn check(&self, p: &Point<F::Elem>) -> Result<(), EcError> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(EcError::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let k = &self.field;
                let [a1, _, a3, _, _] = &self.a;
                Point::Affine(x.clone(), k.sub(&k.neg(y), &k.add(&k.mul(a1, x), a3)))
            }
        }
    }

    /// Chord-tangent sum; inputs are assumed to lie on the curve.
    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let denom = k.add(&k.add(&k.add(y1, y2), &k.mul(a1, x1)), a3);
            if k.is_zero(&denom) {
                return Point::Infinity;
            }
            let c = |n: i64| k.from_i64(n);
            let x1sq = k.square(x1);
            let num_l = k.sub(
                &k.add(&k.add(&k.mul(&c(3), &x1sq), &k.mul(&c(2), &k.mul(a2, x1))), a4),
                &k.mul(a1, y1),
            );
            let num_n = k.sub(
                &k.add(&k.add(&k.neg(&k.mul(&x1sq, x1)), &k.mul(a4, x1)), &k.mul(&c(2), a6)),
                &k.mul(a3, y1),
            );
            (k.div(&num_l, &denom), k.div(&num_n, &denom))
        } else {
            let dx = k.sub(x2, x1);
            let lambda = k.div(&k.sub(y2, y1), &dx);
            let nu = k.div(&k.sub(&k.mul(y1, x2), &k.mul(y2, x1)), &dx);
            (lambda, nu)
        };
        let x3 = k.sub(&k.sub(&k.sub(&k.add(&k.square(&lambda), &k.mul(a1, &lambda)), a2), x1), x2);
        let y3 = k.sub(&k.sub(&k.neg(&k.mul(&k.add(&lambda, a1), &x3)), &nu), a3);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(p, p)
    }

    /// k·P by double-and-add; negative k uses −P.
    pub fn scalar_mul(&self, n: &BigInt, p: &Point<F::Elem>) -> Point<F::Elem> {
        let base = if n.is_negative() { self.neg(p) } else { p.clone() };
        let n = n.abs();
        let mut acc = Point::Infinity;
        if n.is_zero() {
            return acc;
        }
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    pub fn mul_i64(&self, n: i64, p: &Point<F::Elem>) -> Point<F::Elem> {
        self.scalar_mul(&BigInt::from(n), p)
    }

    /// Order of P if it divides `bound`-many small multiples, by repeated addition.
    pub fn order_upto(&self, p: &Point<F::Elem>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Same curve over a larger field through a coefficient map.
    pub fn base_change<G: Field>(
        &self,
        field: G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> Result<Weierstrass<G>, EcError> {
        let a = [f(&self.a[0]), f(&self.a[1]), f(&self.a[2]), f(&self.a[3]), f(&self.a[4])];
        Weierstrass::new(field, a)
    }
}

/// Points as {"x": …, "y": …} with coordinates in K, or the string "infinity".
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine { x: numberfield::FieldElement, y: numberfield::FieldElement },
    Named(String),
}

impl PointJson {
    pub fn from_point(k: &numberfield::NumberField, p: &Point<numberfield::NfElem>) -> Self {
        use numberfield::FieldElement;
        match p {
            Point::Infinity => PointJson::Named("infinity".into()),
            Point::Affine(x, y) => PointJson::Affine {
                x: FieldElement::from_elem(k, x),
                y: FieldElement::from_elem(k, y),
            },
        }
    }

    pub fn to_point(&self, k: &numberfield::NumberField) -> Result<Point<numberfield::NfElem>, EcError> {
        match self {
            PointJson::Named(s) if s == "infinity" => Ok(Point::Infinity),
            PointJson::Named(s) => Err(EcError::Domain(format!("unrecognized point {s:?}"))),
            PointJson::Affine { x, y } => {
                let conv = |e: &numberfield::FieldElement| e.to_elem(k).map_err(|e| EcError::Domain(e.to_string()));
                Ok(Point::Affine(conv(x)?, conv(y)?))
            }
        }
    }
}
