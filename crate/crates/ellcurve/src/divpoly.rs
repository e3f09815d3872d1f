use num_bigint::BigInt;
use polyring::{Integers, Poly, PolyRing, Ring};

use crate::EcError;

pub const DEFAULT_DIVPOLY_CAP: u32 = 40;

/// Division polynomials of y² = x³ + Ax + B over Z, stored without y:
/// ψ_n = f_n for odd n and ψ_n = 2y·f_n for even n.
#[derive(Clone, Debug)]
pub struct DivisionPolys {
    a: BigInt,
    b: BigInt,
    f: Vec<Poly<BigInt>>,
}

impl DivisionPolys {
    pub fn new(a: &BigInt, b: &BigInt) -> Self {
        let r = PolyRing::new(Integers);
        let z = |v: Vec<BigInt>| r.from_coeffs(v);
        let i = |n: i64| BigInt::from(n);
        let (a2, b2, ab) = (a * a, b * b, a * b);
        let f0 = Poly::zero();
        let f1 = r.one();
        let f2 = r.one();
        let f3 = z(vec![-&a2, 12 * b, 6 * a, i(0), i(3)]);
        let f4 = z(vec![
            -2 * (8 * &b2 + &a2 * a),
            -8 * &ab,
            -10 * &a2,
            40 * b,
            10 * a,
            i(0),
            i(2),
        ]);
        DivisionPolys { a: a.clone(), b: b.clone(), f: vec![f0, f1, f2, f3, f4] }
    }

    /// x³ + Ax + B
    pub fn cubic(&self) -> Poly<BigInt> {
        PolyRing::new(Integers).from_coeffs(vec![self.b.clone(), self.a.clone(), BigInt::from(0), BigInt::from(1)])
    }

    fn extend_to(&mut self, n: usize) {
        let r = PolyRing::new(Integers);
        let ff16 = r.scale(&BigInt::from(16), &r.square(&self.cubic()));
        while self.f.len() <= n {
            let k = self.f.len();
            let m = k / 2;
            let f = &self.f;
            let next = if k % 2 == 1 {
                let t1 = r.mul(&f[m + 2], &r.mul(&r.square(&f[m]), &f[m]));
                let t2 = r.mul(&f[m - 1], &r.mul(&r.square(&f[m + 1]), &f[m + 1]));
                if m % 2 == 0 {
                    r.sub(&r.mul(&ff16, &t1), &t2)
                } else {
                    r.sub(&t1, &r.mul(&ff16, &t2))
                }
            } else {
                let t1 = r.mul(&f[m + 2], &r.square(&f[m - 1]));
                let t2 = r.mul(&f[m - 2], &r.square(&f[m + 1]));
                r.mul(&f[m], &r.sub(&t1, &t2))
            };
            self.f.push(next);
        }
    }

    /// f_n; ψ_n = f_n (n odd) or 2y·f_n (n even).
    pub fn f(&mut self, n: u32) -> &Poly<BigInt> {
        self.extend_to(n as usize);
        &self.f[n as usize]
    }

    /// ψ_n² as a polynomial in x.
    pub fn psi_squared(&mut self, n: u32) -> Poly<BigInt> {
        let r = PolyRing::new(Integers);
        let c = self.cubic();
        let fn_ = self.f(n).clone();
        let sq = r.square(&fn_);
        if n % 2 == 0 {
            r.scale(&BigInt::from(4), &r.mul(&c, &sq))
        } else {
            sq
        }
    }

    /// Monic-free x-only polynomial whose roots are the x-coordinates of the
    /// nontrivial points killed by n.
    pub fn psi_tilde(&mut self, n: u32) -> Poly<BigInt> {
        let fn_ = self.f(n).clone();
        if n % 2 == 0 {
            PolyRing::new(Integers).mul(&fn_, &self.cubic())
        } else {
            fn_
        }
    }

    /// φ_n = x·ψ_n² − ψ_{n+1}ψ_{n−1}, so x(nP) = φ_n(x)/ψ_n²(x).
    pub fn phi(&mut self, n: u32) -> Poly<BigInt> {
        let r = PolyRing::new(Integers);
        let x = r.x();
        let c = self.cubic();
        self.extend_to(n as usize + 2);
        let (fp, fm) = (self.f[n as usize + 1].clone(), self.f[n as usize - 1].clone());
        let cross = r.mul(&fp, &fm);
        let cross = if n % 2 == 0 { cross } else { r.scale(&BigInt::from(4), &r.mul(&c, &cross)) };
        r.sub(&r.mul(&x, &self.psi_squared(n)), &cross)
    }
}

/// ψ̃_n for y² = x³ + Ax + B, checked against the cap.
pub fn division_poly(a: &BigInt, b: &BigInt, n: u32, cap: u32) -> Result<Poly<BigInt>, EcError> {
    if n == 0 || n > cap {
        return Err(EcError::Domain(format!("division polynomial index {n} outside 1..={cap}")));
    }
    Ok(DivisionPolys::new(a, b).psi_tilde(n))
}

/// Evaluates an integer polynomial in any ring.
pub fn map_poly<R: Ring>(pr: &PolyRing<R>, f: &Poly<BigInt>) -> Poly<R::Elem> {
    pr.from_coeffs(f.coeffs().iter().map(|c| pr.base().from_bigint(c)).collect())
}
