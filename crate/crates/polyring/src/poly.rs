use num_bigint::BigUint;

use crate::ring::{Field, Ring};
use crate::PolyError;

/// Dense univariate polynomial, coefficients from degree 0 upward. The
/// coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial ring R[x] over a ring context `R`.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
    karatsuba_threshold: usize,
}

pub const DEFAULT_KARATSUBA_THRESHOLD: usize = 32;

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base, karatsuba_threshold: DEFAULT_KARATSUBA_THRESHOLD }
    }

    pub fn with_threshold(base: R, karatsuba_threshold: usize) -> Self {
        PolyRing { base, karatsuba_threshold: karatsuba_threshold.max(2) }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn karatsuba_threshold(&self) -> usize {
        self.karatsuba_threshold
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(&self, cs: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(cs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    /// c·x^n
    pub fn monomial(&self, c: R::Elem, n: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); n];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// x − a
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut v = long.coeffs.clone();
        for (x, y) in v.iter_mut().zip(&short.coeffs) {
            self.base.add_assign(x, y);
        }
        self.from_coeffs(v)
    }

    pub fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            });
        }
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn scale(&self, c: &R::Elem, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// Multiplication by x^n.
    pub fn shift(&self, a: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        let mut v = vec![self.base.zero(); n];
        v.extend(a.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let v = if a.coeffs.len().min(b.coeffs.len()) < self.karatsuba_threshold {
            schoolbook(&self.base, &a.coeffs, &b.coeffs)
        } else {
            karatsuba(&self.base, &a.coeffs, &b.coeffs, self.karatsuba_threshold)
        };
        self.from_coeffs(v)
    }

    pub fn mul_schoolbook(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        self.from_coeffs(schoolbook(&self.base, &a.coeffs, &b.coeffs))
    }

    pub fn square(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Poly<R::Elem>, e: u32) -> Poly<R::Elem> {
        let mut acc = self.one();
        for i in (0..32).rev() {
            acc = self.square(&acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn eval(&self, a: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.base.mul(&acc, x);
            self.base.add_assign(&mut acc, c);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(&self.base.from_i64(i as i64), c))
            .collect();
        self.from_coeffs(v)
    }

    /// Division with remainder; needs the leading coefficient of `b` to be a unit.
    pub fn divrem(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>), PolyError> {
        let lc = b.lc().ok_or(PolyError::DivisionByZero)?;
        let inv = self.base.try_inv(lc).ok_or(PolyError::NonUnitLeading)?;
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut r = a.coeffs.clone();
        let mut q = vec![self.base.zero(); a.coeffs.len() - db];
        for i in (db..r.len()).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = self.base.mul(&r[i], &inv);
            for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                let t = self.base.mul(&c, bj);
                self.base.sub_assign(&mut r[i - db + j], &t);
            }
            r[i] = self.base.zero();
            q[i - db] = c;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>, PolyError> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact division `a / b`; leading coefficients must divide exactly at
    /// each step (so this also works over Z), and the remainder must vanish.
    pub fn div_exact(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>, PolyError> {
        let lc = b.lc().ok_or(PolyError::DivisionByZero)?;
        let db = b.coeffs.len() - 1;
        if a.is_zero() {
            return Ok(Poly::zero());
        }
        if a.coeffs.len() <= db {
            return Err(PolyError::Inexact);
        }
        let mut r = a.coeffs.clone();
        let mut q = vec![self.base.zero(); a.coeffs.len() - db];
        for i in (db..r.len()).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = self.base.div_exact(&r[i], lc).ok_or(PolyError::Inexact)?;
            for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                let t = self.base.mul(&c, bj);
                self.base.sub_assign(&mut r[i - db + j], &t);
            }
            r[i] = self.base.zero();
            q[i - db] = c;
        }
        if r[..db].iter().any(|c| !self.base.is_zero(c)) {
            return Err(PolyError::Inexact);
        }
        Ok(self.from_coeffs(q))
    }

    pub fn mulmod(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>, PolyError> {
        self.rem(&self.mul(a, b), m)
    }

    /// base^e mod m by square-and-multiply.
    pub fn powmod(
        &self,
        base: &Poly<R::Elem>,
        e: &BigUint,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>, PolyError> {
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let b = self.rem(base, m)?;
        let mut acc = self.rem(&self.one(), m)?;
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m)?;
            if e.bit(i) {
                acc = self.mulmod(&acc, &b, m)?;
            }
        }
        Ok(acc)
    }

    /// Applies a coefficient map into another polynomial ring.
    pub fn map_into<S: Ring>(
        &self,
        target: &PolyRing<S>,
        a: &Poly<R::Elem>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(a.coeffs.iter().map(f).collect())
    }
}

impl<R: Field> PolyRing<R> {
    pub fn monic(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        match a.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&self.base.inv(lc), a),
        }
    }

    /// Monic gcd; gcd(f, 0) = monic(f).
    pub fn gcd(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero field divisor");
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }

    /// Returns (g, s, t) with s·a + t·b = g and g monic.
    pub fn xgcd(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> (Poly<R::Elem>, Poly<R::Elem>, Poly<R::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero field divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.inv(lc);
                (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &t0))
            }
        }
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> R::Elem {
        let r = &self.base;
        if a.is_zero() || b.is_zero() {
            return r.zero();
        }
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = r.one();
        loop {
            let da = a.deg().unwrap();
            let db = b.deg().unwrap();
            if db == 0 {
                let lb = b.lc().unwrap();
                return r.mul(&acc, &r.pow(lb, &BigUint::from(da)));
            }
            let rem = self.rem(&a, &b).expect("field");
            if rem.is_zero() {
                return r.zero();
            }
            let dr = rem.deg().unwrap();
            if (da * db) % 2 == 1 {
                acc = r.neg(&acc);
            }
            acc = r.mul(&acc, &r.pow(b.lc().unwrap(), &BigUint::from(da - dr)));
            a = std::mem::replace(&mut b, rem);
        }
    }

    /// Discriminant (−1)^{n(n−1)/2} res(f, f′) / lc(f).
    pub fn discriminant(&self, f: &Poly<R::Elem>) -> Result<R::Elem, PolyError> {
        let n = match f.deg() {
            Some(n) if n >= 1 => n,
            _ => return Err(PolyError::Domain("discriminant needs degree ≥ 1".into())),
        };
        let r = &self.base;
        let res = self.resultant(f, &self.derivative(f));
        let d = r.div(&res, f.lc().unwrap());
        Ok(if (n * (n - 1) / 2) % 2 == 1 { r.neg(&d) } else { d })
    }

    pub fn is_squarefree(&self, f: &Poly<R::Elem>) -> bool {
        self.gcd(f, &self.derivative(f)).deg() == Some(0)
    }
}

fn schoolbook<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = r.mul(x, y);
            r.add_assign(&mut out[i + j], &t);
        }
    }
    out
}

fn add_into<R: Ring>(r: &R, out: &mut [R::Elem], src: &[R::Elem]) {
    for (o, s) in out.iter_mut().zip(src) {
        r.add_assign(o, s);
    }
}

fn sub_into<R: Ring>(r: &R, out: &mut [R::Elem], src: &[R::Elem]) {
    for (o, s) in out.iter_mut().zip(src) {
        r.sub_assign(o, s);
    }
}

fn sum<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut v: Vec<R::Elem> = if a.len() >= b.len() { a.to_vec() } else { b.to_vec() };
    let short = if a.len() >= b.len() { b } else { a };
    add_into(r, &mut v, short);
    v
}

fn karatsuba<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], thr: usize) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < thr {
        return schoolbook(r, a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    if b.len() <= m || a.len() <= m {
        // Unbalanced: split only the longer operand.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut off = 0;
        for chunk in long.chunks(short.len()) {
            let p = karatsuba(r, chunk, short, thr);
            add_into(r, &mut out[off..], &p);
            off += short.len();
        }
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(r, a0, b0, thr);
    let z2 = karatsuba(r, a1, b1, thr);
    let mut z1 = karatsuba(r, &sum(r, a0, a1), &sum(r, b0, b1), thr);
    sub_into(r, &mut z1, &z0);
    sub_into(r, &mut z1, &z2);
    add_into(r, &mut out, &z0);
    add_into(r, &mut out[m..], &z1);
    add_into(r, &mut out[2 * m..], &z2);
    out
}
