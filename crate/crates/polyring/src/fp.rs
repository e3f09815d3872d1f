use bigmath::{inv_mod_u64, is_prime_u64, mul_mod_u64};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};
use crate::PolyError;

/// A finite field with a way to draw random elements.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn ext_degree(&self) -> u32;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Every element, for exhaustive checks on small fields.
    fn elements(&self) -> Vec<Self::Elem>;

    fn size(&self) -> BigUint {
        num_traits::Pow::pow(BigUint::from(self.characteristic()), self.ext_degree())
    }
}

/// Prime field F_p with p < 2^62.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if !is_prime_u64(p) || p >= 1 << 62 {
            return Err(PolyError::Domain(format!("{p} is not a supported prime")));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    pub fn pow_u64(&self, a: u64, e: u64) -> u64 {
        bigmath::pow_mod_u64(a, e, self.p)
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || self.pow_u64(a, (self.p - 1) / 2) == 1
    }

    /// Some square root of `a`, if it exists (Tonelli–Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow_u64(z, q);
        let mut t = self.pow_u64(a, q);
        let mut r = self.pow_u64(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod_u64(tt, tt, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod_u64(b, b, p);
            }
            m = i;
            c = mul_mod_u64(b, b, p);
            t = mul_mod_u64(t, c, p);
            r = mul_mod_u64(r, b, p);
        }
        Some(r)
    }
}

impl Ring for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn try_inv(&self, a: &u64) -> Option<u64> {
        inv_mod_u64(*a, self.p)
    }
}

impl Field for Fp {}

impl FiniteField for Fp {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn ext_degree(&self) -> u32 {
        1
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
}

/// F_p[t]/(m̄) for a monic irreducible m̄ of degree f; elements are
/// coefficient vectors of length f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldExt {
    fp: Fp,
    modulus: Vec<u64>,
}

impl FiniteFieldExt {
    /// `modulus` lists coefficients from degree 0 and must be monic and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self, PolyError> {
        let fp = Fp::new(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(PolyError::Domain("modulus must be monic of degree ≥ 1".into()));
        }
        let pr = PolyRing::new(fp);
        let m = pr.from_coeffs(modulus.clone());
        if !is_irreducible(&pr, &m) {
            return Err(PolyError::Domain(format!("modulus {modulus:?} is reducible mod {p}")));
        }
        Ok(FiniteFieldExt { fp, modulus })
    }

    /// First monic irreducible polynomial of degree f in lexicographic order.
    pub fn find(p: u64, f: u32) -> Result<Self, PolyError> {
        let fp = Fp::new(p)?;
        let pr = PolyRing::new(fp);
        let f = f as usize;
        let mut digits = vec![0u64; f];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let m = pr.from_coeffs(c.clone());
            if is_irreducible(&pr, &m) {
                return Ok(FiniteFieldExt { fp, modulus: c });
            }
            let mut i = 0;
            loop {
                if i == f {
                    return Err(PolyError::Domain("no irreducible polynomial found".into()));
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn prime_field(&self) -> Fp {
        self.fp
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a % self.fp.p;
        v
    }

    /// Element from an arbitrary-length coefficient list, reduced mod m̄.
    pub fn from_poly(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.fp.p).collect();
        self.reduce_in_place(&mut v);
        v.resize(self.degree(), 0);
        v
    }

    /// The class of t.
    pub fn gen(&self) -> Vec<u64> {
        self.from_poly(&[0, 1])
    }

    fn reduce_in_place(&self, v: &mut Vec<u64>) {
        let p = self.fp.p;
        let f = self.degree();
        while v.len() > f {
            let c = v.pop().unwrap();
            if c == 0 {
                continue;
            }
            let base = v.len() - f;
            for (j, mj) in self.modulus[..f].iter().enumerate() {
                let t = mul_mod_u64(c, *mj, p);
                let x = &mut v[base + j];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
    }
}

impl Ring for FiniteFieldExt {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_bigint(&self, n: &BigInt) -> Vec<u64> {
        self.embed(self.fp.reduce_bigint(n))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.fp.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.fp.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.fp.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = self.degree();
        let p = self.fp.p as u128;
        // Products accumulate in u128 and are reduced once per slot.
        let mut acc = vec![0u128; 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc[i + j] += (*x as u128) * (*y as u128);
                if acc[i + j] >= 1u128 << 120 {
                    acc[i + j] %= p;
                }
            }
        }
        let mut v: Vec<u64> = acc.into_iter().map(|c| (c % p) as u64).collect();
        self.reduce_in_place(&mut v);
        v.resize(f, 0);
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn try_inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let pr = PolyRing::new(self.fp);
        let (g, s, _) = pr.xgcd(&pr.from_coeffs(a.clone()), &pr.from_coeffs(self.modulus.clone()));
        debug_assert_eq!(g.deg(), Some(0));
        Some(self.from_poly(s.coeffs()))
    }
}

impl Field for FiniteFieldExt {}

impl FiniteField for FiniteFieldExt {
    fn characteristic(&self) -> u64 {
        self.fp.p
    }
    fn ext_degree(&self) -> u32 {
        self.degree() as u32
    }
    fn random(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.degree()).map(|_| rng.gen_range(0..self.fp.p)).collect()
    }
    fn elements(&self) -> Vec<Vec<u64>> {
        let f = self.degree();
        let total = self.size().to_u64().expect("small field");
        (0..total)
            .map(|mut n| {
                (0..f)
                    .map(|_| {
                        let d = n % self.fp.p;
                        n /= self.fp.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }
}

/// Rabin's irreducibility test over F_p.
pub fn is_irreducible(pr: &PolyRing<Fp>, m: &Poly<u64>) -> bool {
    let n = match m.deg() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let m = pr.monic(m);
    let p = BigUint::from(pr.base().p());
    let x = pr.x();
    let frob_iter = |k: usize| -> Poly<u64> {
        let mut h = x.clone();
        for _ in 0..k {
            h = pr.powmod(&h, &p, &m).expect("nonzero modulus");
        }
        h
    };
    if !pr.sub(&frob_iter(n), &pr.rem(&x, &m).unwrap()).is_zero() {
        return false;
    }
    for (r, _) in bigmath::factor_u64(n as u64) {
        let h = frob_iter(n / r as usize);
        let g = pr.gcd(&m, &pr.sub(&h, &x));
        if g.deg() != Some(0) {
            return false;
        }
    }
    true
}
