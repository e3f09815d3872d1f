use std::collections::HashMap;

use bigmath::factor_u64;
use num_bigint::BigInt;
use num_traits::{One, Pow};
use polyring::{FiniteField, Fp, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::CurveModel;
use crate::weierstrass::{Point, Weierstrass};
use crate::EcError;

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    /// Above this q, counts use baby-step giant-step on random points.
    pub bsgs_above: u64,
    /// Largest q accepted at all; exhaustive counting is the fallback up to here.
    pub budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { bsgs_above: 1_000, budget: 1_000_000 }
    }
}

/// The short model reduced at a good prime q > 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCurve {
    pub q: u64,
    pub a: u64,
    pub b: u64,
}

pub fn reduce_mod_q(e: &CurveModel, q: u64) -> Result<ReducedCurve, EcError> {
    if q <= 3 {
        return Err(EcError::Domain(format!("reduction at q = {q} needs q > 3")));
    }
    let fp = Fp::new(q).map_err(|_| EcError::Domain(format!("{q} is not prime")))?;
    if !e.has_good_reduction_at(q) {
        return Err(EcError::Domain(format!("{q} divides the discriminant {}", e.short_discriminant())));
    }
    let s = e.short_form();
    Ok(ReducedCurve { q, a: fp.reduce_bigint(&s.a), b: fp.reduce_bigint(&s.b) })
}

impl ReducedCurve {
    pub fn fp(&self) -> Fp {
        Fp::new(self.q).unwrap()
    }

    pub fn curve(&self) -> Weierstrass<Fp> {
        Weierstrass::short(self.fp(), self.a, self.b).expect("good reduction")
    }

    fn rhs(&self, fp: &Fp, x: u64) -> u64 {
        fp.add(&fp.mul(&fp.add(&fp.mul(&x, &x), &self.a), &x), &self.b)
    }

    fn count_exhaustive(&self) -> u64 {
        let fp = self.fp();
        let e = (self.q - 1) / 2;
        let mut n = 1u64;
        for x in 0..self.q {
            let r = self.rhs(&fp, x);
            n += if r == 0 {
                1
            } else if fp.pow_u64(r, e) == 1 {
                2
            } else {
                0
            };
        }
        n
    }

    fn random_point(&self, fp: &Fp, rng: &mut ChaCha8Rng) -> Point<u64> {
        loop {
            let x = rng.gen_range(0..self.q);
            if let Some(y) = fp.sqrt(self.rhs(fp, x)) {
                return Point::Affine(x, y);
            }
        }
    }

    /// Every m in [lo, hi] with m·P = O.
    fn annihilators(&self, e: &Weierstrass<Fp>, p: &Point<u64>, lo: u64, hi: u64) -> Vec<u64> {
        let w = ((hi - lo + 1) as f64).sqrt().ceil() as u64;
        let mut baby: HashMap<Point<u64>, Vec<u64>> = HashMap::new();
        let mut jp = Point::Infinity;
        for j in 0..w {
            baby.entry(jp.clone()).or_default().push(j);
            jp = e.add(&jp, p);
        }
        // jp = w·P now; look for j·P = −(lo + i·w)·P.
        let step = e.neg(&jp);
        let mut g = e.neg(&e.mul_i64(lo as i64, p));
        let mut out = Vec::new();
        let mut i = 0;
        while lo + i * w <= hi {
            if let Some(js) = baby.get(&g) {
                out.extend(js.iter().map(|j| lo + i * w + j).filter(|&m| m <= hi));
            }
            g = e.add(&g, &step);
            i += 1;
        }
        out.sort();
        out
    }

    fn order_from_multiple(&self, e: &Weierstrass<Fp>, p: &Point<u64>, m: u64) -> u64 {
        let mut n = m;
        for (l, _) in factor_u64(m) {
            while n % l == 0 && e.mul_i64((n / l) as i64, p).is_infinity() {
                n /= l;
            }
        }
        n
    }

    fn count_bsgs(&self) -> Option<u64> {
        let fp = self.fp();
        let e = self.curve();
        let q = self.q;
        let s = 2 * (q as f64).sqrt().floor() as u64 + 2;
        let (lo, hi) = ((q + 1).saturating_sub(s).max(1), q + 1 + s);
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        let mut l = 1u64;
        for _ in 0..12 {
            let p = self.random_point(&fp, &mut rng);
            let ms = self.annihilators(&e, &p, lo, hi);
            let ord = self.order_from_multiple(&e, &p, *ms.first()?);
            l = num_integer::lcm(l, ord);
            let cands: Vec<u64> = (lo.div_ceil(l)..=hi / l)
                .map(|k| k * l)
                .filter(|&n| (n as i128 - (q as i128 + 1)).pow(2) <= 4 * q as i128)
                .collect();
            if cands.len() == 1 {
                return Some(cands[0]);
            }
        }
        None
    }

    /// |E(F_q)| including the point at infinity.
    pub fn count_points(&self, opts: &CountOptions) -> Result<u64, EcError> {
        if self.q > opts.budget {
            return Err(EcError::Resource(format!("q = {} exceeds the counting budget {}", self.q, opts.budget)));
        }
        if self.q <= opts.bsgs_above {
            return Ok(self.count_exhaustive());
        }
        Ok(self.count_bsgs().unwrap_or_else(|| self.count_exhaustive()))
    }
}

/// |E(F_{q^f})| from N = |E(F_q)| by s_{k+1} = a·s_k − q·s_{k−1}, a = q + 1 − N.
pub fn order_over_extension(n: u64, q: u64, f: u32) -> BigInt {
    let a = BigInt::from(q) + BigInt::one() - BigInt::from(n);
    let qb = BigInt::from(q);
    let (mut s0, mut s1) = (BigInt::from(2), a.clone());
    for _ in 1..f {
        let s2 = &a * &s1 - &qb * &s0;
        s0 = s1;
        s1 = s2;
    }
    let s = if f == 0 { s0 } else { s1 };
    Pow::pow(&qb, f) + BigInt::one() - s
}

/// All points of a curve over a (small) finite field, by enumeration.
pub fn enumerate_points<F: FiniteField>(e: &Weierstrass<F>) -> Vec<Point<F::Elem>> {
    let k = e.field();
    let elems = k.elements();
    let mut pts = vec![Point::Infinity];
    for x in &elems {
        for y in &elems {
            let p = Point::Affine(x.clone(), y.clone());
            if e.is_on_curve(&p) {
                pts.push(p);
            }
        }
    }
    pts
}
