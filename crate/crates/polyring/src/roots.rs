use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::RngCore;

use crate::fp::{FiniteField, FiniteFieldExt, Fp};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};
use crate::PolyError;

/// Below this field size roots are found by evaluating at every element.
const EXHAUSTIVE_FIELD_SIZE: u64 = 64;

/// Roots of `f` in the finite field, each with its multiplicity, sorted.
/// Squarefree part of the split, gcd with x^Q − x, then equal-degree splitting.
pub fn roots_in_finite_field<F: FiniteField>(
    pr: &PolyRing<F>,
    f: &Poly<F::Elem>,
    rng: &mut dyn RngCore,
) -> Result<Vec<(F::Elem, usize)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Domain("roots of the zero polynomial".into()));
    }
    if f.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let g = split_part(pr, f)?;
    let mut roots = split_linear(pr, &g, rng);
    roots.sort();
    Ok(roots
        .into_iter()
        .map(|r| {
            let m = multiplicity(pr, f, &r);
            (r, m)
        })
        .collect())
}

/// gcd(f, x^Q − x): the product of the distinct linear factors of f.
pub fn split_part<F: FiniteField>(
    pr: &PolyRing<F>,
    f: &Poly<F::Elem>,
) -> Result<Poly<F::Elem>, PolyError> {
    let f = pr.monic(f);
    let x = pr.x();
    let xq = pr.powmod(&x, &pr.base().size(), &f)?;
    Ok(pr.gcd(&f, &pr.sub(&xq, &x)))
}

fn multiplicity<R: Field>(pr: &PolyRing<R>, f: &Poly<R::Elem>, r: &R::Elem) -> usize {
    let lin = pr.linear(r);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rem) = pr.divrem(&g, &lin).expect("monic divisor");
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// Roots of a monic squarefree polynomial that splits into distinct linear factors.
pub fn split_linear<F: FiniteField>(
    pr: &PolyRing<F>,
    g: &Poly<F::Elem>,
    rng: &mut dyn RngCore,
) -> Vec<F::Elem> {
    let k = pr.base();
    let g = pr.monic(g);
    let d = match g.deg() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if d == 1 {
        return vec![k.neg(&g.coeffs()[0])];
    }
    if k.size().to_u64().is_some_and(|q| q <= EXHAUSTIVE_FIELD_SIZE) {
        return k.elements().into_iter().filter(|a| k.is_zero(&pr.eval(&g, a))).collect();
    }
    let q = k.size();
    let p = k.characteristic();
    loop {
        let delta = k.random(rng);
        let h = if p == 2 {
            // Trace of δx: Σ (δx)^{2^i}, i < log2 Q.
            let dx = pr.scale(&delta, &pr.x());
            let mut t = pr.rem(&dx, &g).unwrap();
            let mut acc = t.clone();
            for _ in 1..k.ext_degree() {
                t = pr.mulmod(&t, &t, &g).unwrap();
                acc = pr.add(&acc, &t);
            }
            acc
        } else {
            let e = (&q - BigUint::one()) >> 1;
            let base = pr.from_coeffs(vec![delta, k.one()]);
            pr.sub(&pr.powmod(&base, &e, &g).unwrap(), &pr.one())
        };
        let s = pr.gcd(&g, &h);
        let ds = s.deg().unwrap_or(0);
        if ds > 0 && ds < d {
            let (rest, _) = pr.divrem(&g, &s).unwrap();
            let mut out = split_linear(pr, &s, rng);
            out.extend(split_linear(pr, &rest, rng));
            return out;
        }
    }
}

/// Distinct-degree factorization of a monic squarefree f over F_p, keeping
/// only degrees that divide `n`. Returns (e, product of degree-e factors).
pub fn ddf_dividing(
    pr: &PolyRing<Fp>,
    f: &Poly<u64>,
    n: usize,
) -> Vec<(usize, Poly<u64>)> {
    let p = BigUint::from(pr.base().p());
    let x = pr.x();
    let mut g = pr.monic(f);
    let mut h = pr.rem(&x, &g).unwrap();
    let mut out = Vec::new();
    for e in 1..=n {
        if g.deg().unwrap_or(0) < e {
            break;
        }
        h = pr.powmod(&h, &p, &g).unwrap();
        let d = pr.gcd(&g, &pr.sub(&h, &x));
        if d.deg().unwrap_or(0) > 0 {
            g = pr.divrem(&g, &d).unwrap().0;
            h = pr.rem(&h, &g).unwrap_or_else(|_| Poly::zero());
            if n % e == 0 {
                out.push((e, d));
            }
        }
    }
    out
}

/// Splits a product of distinct irreducible degree-e factors over F_p.
pub fn edf(pr: &PolyRing<Fp>, g: &Poly<u64>, e: usize, rng: &mut dyn RngCore) -> Vec<Poly<u64>> {
    let g = pr.monic(g);
    let d = g.deg().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    if d == e {
        return vec![g];
    }
    let fp = pr.base();
    let p = fp.p();
    loop {
        let a = pr.from_coeffs((0..d).map(|_| fp.random(rng)).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let h = if p == 2 {
            let mut t = pr.rem(&a, &g).unwrap();
            let mut acc = t.clone();
            for _ in 1..e {
                t = pr.mulmod(&t, &t, &g).unwrap();
                acc = pr.add(&acc, &t);
            }
            acc
        } else {
            let exp = (num_traits::Pow::pow(BigUint::from(p), e) - BigUint::one()) >> 1;
            pr.sub(&pr.powmod(&a, &exp, &g).unwrap(), &pr.one())
        };
        let s = pr.gcd(&g, &h);
        let ds = s.deg().unwrap_or(0);
        if ds > 0 && ds < d {
            let rest = pr.divrem(&g, &s).unwrap().0;
            let mut out = edf(pr, &s, e, rng);
            out.extend(edf(pr, &rest, e, rng));
            return out;
        }
    }
}

/// Distinct roots in F_{p^n} = `ext` of a polynomial with F_p coefficients.
/// Works over F_p until the last step: each irreducible factor of degree e | n
/// is split over the extension by equal-degree splitting.
pub fn roots_in_extension(
    f: &Poly<u64>,
    ext: &FiniteFieldExt,
    rng: &mut dyn RngCore,
) -> Result<Vec<Vec<u64>>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Domain("roots of the zero polynomial".into()));
    }
    let fp = ext.prime_field();
    let pr = PolyRing::new(fp);
    let n = ext.degree();
    let f = pr.monic(f);
    if f.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let g = frobenius_split_part(&pr, &f, n)?;
    let mut roots = Vec::new();
    if g.deg().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let epr = PolyRing::new(ext.clone());
    for (e, prod) in ddf_dividing(&pr, &g, n) {
        for h in edf(&pr, &prod, e, rng) {
            if e == 1 {
                roots.push(ext.embed(fp.neg(&h.coeffs()[0])));
            } else {
                let he = pr.map_into(&epr, &h, |c| ext.embed(*c));
                roots.extend(split_linear(&epr, &he, rng));
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// gcd(f, x^{p^n} − x) over F_p, computed by n Frobenius steps.
pub fn frobenius_split_part(
    pr: &PolyRing<Fp>,
    f: &Poly<u64>,
    n: usize,
) -> Result<Poly<u64>, PolyError> {
    let p = BigUint::from(pr.base().p());
    let x = pr.x();
    let mut h = pr.rem(&x, f)?;
    for _ in 0..n {
        h = pr.powmod(&h, &p, f)?;
    }
    Ok(pr.gcd(f, &pr.sub(&h, &x)))
}
