use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::fp::FiniteFieldExt;
use crate::ring::Ring;
use crate::PolyError;

/// The Galois ring (Z/q^k)[t]/(m) where m is monic over Z and irreducible
/// mod q. Elements are coefficient vectors of length deg m in [0, q^k).
#[derive(Clone, Debug)]
pub struct GaloisRing {
    q: u64,
    k: u32,
    modulus: BigInt,
    m: Vec<BigInt>,
    residue: FiniteFieldExt,
}

impl GaloisRing {
    pub fn new(q: u64, k: u32, m: &[BigInt]) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::Domain("precision k must be positive".into()));
        }
        if m.last().map(|c| c.is_one()) != Some(true) || m.len() < 2 {
            return Err(PolyError::Domain("defining polynomial must be monic".into()));
        }
        let qb = BigInt::from(q);
        let residue = FiniteFieldExt::new(
            q,
            m.iter().map(|c| c.mod_floor(&qb).try_into().unwrap()).collect(),
        )?;
        Ok(GaloisRing { q, k, modulus: Pow::pow(&qb, k), m: m.to_vec(), residue })
    }

    pub fn with_precision(&self, k: u32) -> Self {
        let mut g = self.clone();
        g.k = k;
        g.modulus = Pow::pow(&BigInt::from(self.q), k);
        g
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    pub fn residue_field(&self) -> &FiniteFieldExt {
        &self.residue
    }

    pub fn reduce_to_residue(&self, a: &[BigInt]) -> Vec<u64> {
        let q = BigInt::from(self.q);
        a.iter().map(|c| c.mod_floor(&q).try_into().unwrap()).collect()
    }

    pub fn lift_residue(&self, a: &[u64]) -> Vec<BigInt> {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Element from integer coordinates of any length, reduced mod (q^k, m).
    pub fn from_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = c.to_vec();
        self.reduce_poly(&mut v);
        v.resize(self.degree(), BigInt::zero());
        v
    }

    fn reduce_poly(&self, v: &mut Vec<BigInt>) {
        let f = self.degree();
        while v.len() > f {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let base = v.len() - f;
            for (j, mj) in self.m[..f].iter().enumerate() {
                if !mj.is_zero() {
                    v[base + j] -= &c * mj;
                }
            }
        }
        for x in v.iter_mut() {
            *x = x.mod_floor(&self.modulus);
        }
    }
}

impl Ring for GaloisRing {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree()]
    }
    fn one(&self) -> Vec<BigInt> {
        self.from_coords(&[BigInt::one()])
    }
    fn from_bigint(&self, n: &BigInt) -> Vec<BigInt> {
        self.from_coords(std::slice::from_ref(n))
    }
    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.modulus {
                    s - &self.modulus
                } else {
                    s
                }
            })
            .collect()
    }
    fn sub(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x - y;
                if s < BigInt::zero() {
                    s + &self.modulus
                } else {
                    s
                }
            })
            .collect()
    }
    fn neg(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter()
            .map(|x| if x.is_zero() { BigInt::zero() } else { &self.modulus - x })
            .collect()
    }
    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let f = self.degree();
        let mut acc = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc[i + j] += x * y;
            }
        }
        for c in acc.iter_mut() {
            *c = c.mod_floor(&self.modulus);
        }
        self.reduce_poly(&mut acc);
        acc.resize(f, BigInt::zero());
        acc
    }
    fn is_zero(&self, a: &Vec<BigInt>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    /// Units are exactly the elements that are nonzero mod q; the residue
    /// inverse is lifted by Newton iteration u ← u(2 − a·u).
    fn try_inv(&self, a: &Vec<BigInt>) -> Option<Vec<BigInt>> {
        let r = self.reduce_to_residue(a);
        let inv = self.residue.try_inv(&r)?;
        let mut u = self.lift_residue(&inv);
        let two = self.from_i64(2);
        let mut prec = 1u32;
        while prec < self.k {
            u = self.mul(&u, &self.sub(&two, &self.mul(a, &u)));
            prec *= 2;
        }
        debug_assert!(self.is_one(&self.mul(a, &u)));
        Some(u)
    }
}
