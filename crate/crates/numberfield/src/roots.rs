use bigmath::{ceil_nth_root, is_primitive_root, jacobi, next_prime_u64, rational_reconstruct_bounds, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polyring::{
    roots_in_extension, roots_in_finite_field, FiniteFieldExt, Fp, GaloisRing, Poly, PolyRing,
    Ring,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::{FieldSpec, NfElem, NumberField};
use crate::NfError;

#[derive(Clone, Debug)]
pub struct RootOptions {
    pub seed: u64,
    /// Precision cap for Hensel lifting, in bits of q^k.
    pub hensel_max_bits: u64,
    /// Skip this many admissible auxiliary primes before using one.
    pub aux_skip: usize,
    /// Admissible primes tried for a residue-level emptiness certificate.
    pub emptiness_tries: usize,
    /// Largest auxiliary prime considered.
    pub aux_search_cap: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            seed: 0,
            hensel_max_bits: 4096,
            aux_skip: 0,
            emptiness_tries: 4,
            aux_search_cap: 100_000,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RootReport {
    #[serde(skip)]
    pub roots: Vec<NfElem>,
    /// Prime whose residue roots were lifted, or which certified emptiness.
    pub aux_prime: Option<u64>,
    pub aux_primes_tried: Vec<u64>,
    pub residue_roots: usize,
    /// Residue roots proven not to come from a root in K.
    pub rejected: usize,
    /// Residue roots that could be neither confirmed nor excluded.
    pub undecided: usize,
    pub precision_bits: u64,
}

/// Whether q stays prime in K, so the residue ring at q is F_{q^deg}.
pub fn is_inert(k: &NumberField, q: u64) -> bool {
    match k.spec() {
        FieldSpec::Rationals => true,
        FieldSpec::Cyclotomic { p, .. } => {
            let n = k.conductor().unwrap();
            if n == 2 {
                return true;
            }
            q != *p && is_primitive_root(&BigInt::from(q), n).unwrap_or(false)
        }
        FieldSpec::Quadratic { d } => {
            q != 2
                && !(d % BigInt::from(q)).is_zero()
                && jacobi(d, &BigInt::from(q)).map(|j| j == -1).unwrap_or(false)
        }
    }
}

/// Integer coordinate vectors for the coefficients of f after clearing all denominators.
fn integral_coeffs(k: &NumberField, f: &Poly<NfElem>) -> Vec<Vec<BigInt>> {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.den()));
    f.coeffs()
        .iter()
        .map(|c| {
            let s = &l / c.den();
            let mut v: Vec<BigInt> = c.num().iter().map(|x| x * &s).collect();
            v.resize(k.degree(), BigInt::zero());
            v
        })
        .collect()
}

fn reduce_u64(v: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    v.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect()
}

/// Provable numerator and denominator bounds (N, D) for the coordinates of
/// every root of f in K. Fujiwara's bound R holds for all complex roots of
/// every conjugate of the monic g = f/lc; D0·α is integral when D0 clears
/// the denominators of g; integral coordinates are then bounded through traces.
pub fn coordinate_bounds(k: &NumberField, f: &Poly<NfElem>) -> (BigInt, BigInt) {
    let n = f.deg().unwrap();
    let inv = k.try_inv(f.lc().unwrap()).expect("nonzero leading coefficient");
    let g: Vec<NfElem> = f.coeffs().iter().map(|c| k.mul(c, &inv)).collect();
    let d0 = g.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.den()));
    let s = k.gen_abs_bound();
    let height = |c: &NfElem| -> BigUint {
        let mut acc = BigInt::zero();
        let mut sp = BigInt::one();
        for x in c.num() {
            acc += x.abs() * &sp;
            sp *= &s;
        }
        let (q, r) = acc.div_rem(c.den());
        let q = if r.is_zero() { q } else { q + 1 };
        q.to_biguint().unwrap()
    };
    let mut r = BigUint::one();
    for i in 1..=n {
        let mut h = height(&g[n - i]);
        if i == n {
            h = (h + 1u32) >> 1;
        }
        let c = ceil_nth_root(&h, i as u32);
        if c > r {
            r = c;
        }
    }
    let r = BigInt::from(r) * 2;
    match (k.spec(), k.degree()) {
        (_, 1) => (&d0 * &r, d0),
        (FieldSpec::Quadratic { .. }, _) => (&d0 * &r * 2, d0 * 2),
        _ => (&d0 * &r * 2, d0),
    }
}

/// Evaluates the integral polynomial `c` at num/den exactly; returns true iff zero.
fn vanishes_at(k: &NumberField, c: &[Vec<BigInt>], beta: &NfElem) -> bool {
    let deg = c.len() - 1;
    let mut acc = c[deg].clone();
    let mut dp = BigInt::one();
    for j in (0..deg).rev() {
        dp *= beta.den();
        acc = k.mul_int(&acc, beta.num());
        for (a, x) in acc.iter_mut().zip(&c[j]) {
            if !x.is_zero() {
                *a += x * &dp;
            }
        }
    }
    acc.iter().all(|x| x.is_zero())
}

fn gr_eval(gr: &GaloisRing, c: &[Vec<BigInt>], x: &Vec<BigInt>) -> Vec<BigInt> {
    let mut acc = gr.zero();
    for cj in c.iter().rev() {
        acc = gr.mul(&acc, x);
        acc = gr.add(&acc, &gr.from_coords(cj));
    }
    acc
}

/// Newton lifting of a simple residue root to precision q^k, doubling each step.
fn hensel_lift(
    gr: &GaloisRing,
    c: &[Vec<BigInt>],
    dc: &[Vec<BigInt>],
    root: &[u64],
) -> Option<Vec<BigInt>> {
    let target = gr.precision();
    let mut schedule = vec![target];
    while *schedule.last().unwrap() > 1 {
        let last = *schedule.last().unwrap();
        schedule.push(last.div_ceil(2));
    }
    schedule.reverse();
    let mut alpha = gr.lift_residue(root);
    for &kp in schedule.iter().skip(1) {
        let r = gr.with_precision(kp);
        let fx = gr_eval(&r, c, &alpha);
        let dfx = gr_eval(&r, dc, &alpha);
        let inv = r.try_inv(&dfx)?;
        alpha = r.sub(&r.from_coords(&alpha), &r.mul(&fx, &inv));
    }
    Some(alpha)
}

fn residue_roots(
    k: &NumberField,
    c: &[Vec<BigInt>],
    rational: bool,
    q: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(FiniteFieldExt, Vec<Vec<u64>>, bool), NfError> {
    let mbar: Vec<u64> = reduce_u64(k.modulus(), q);
    let ext = FiniteFieldExt::new(q, mbar).map_err(|e| NfError::Internal(e.to_string()))?;
    if rational {
        let fp = Fp::new(q).unwrap();
        let pr = PolyRing::new(fp);
        let fbar = pr.from_coeffs(c.iter().map(|v| fp.reduce_bigint(&v[0])).collect());
        let sqfree = pr.is_squarefree(&fbar);
        let roots = roots_in_extension(&fbar, &ext, rng).map_err(|e| NfError::Internal(e.to_string()))?;
        Ok((ext, roots, sqfree))
    } else {
        let pr = PolyRing::new(ext.clone());
        let fbar = pr.from_coeffs(c.iter().map(|v| ext.from_poly(&reduce_u64(v, q))).collect());
        let sqfree = pr.is_squarefree(&fbar);
        let roots = roots_in_finite_field(&pr, &fbar, rng)
            .map_err(|e| NfError::Internal(e.to_string()))?
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        Ok((ext, roots, sqfree))
    }
}

/// Exactly the roots of f lying in K.
///
/// Residue roots at an inert auxiliary prime q are Newton-lifted in the
/// Galois ring (Z/q^k)[t]/(m), reconstructed coordinatewise and verified
/// exactly. With q^k > 2ND a failed reconstruction or verification proves
/// the residue root does not come from K; past the precision cap such a
/// candidate is reported as undecided.
pub fn roots_in_field(
    k: &NumberField,
    f: &Poly<NfElem>,
    opts: &RootOptions,
) -> Result<RootReport, NfError> {
    if f.is_zero() {
        return Err(NfError::Domain("roots of the zero polynomial".into()));
    }
    if f.deg() == Some(0) {
        return Ok(RootReport::default());
    }
    let c = integral_coeffs(k, f);
    let rational = c.iter().all(|v| v.iter().skip(1).all(|x| x.is_zero()));
    let lc = c.last().unwrap().clone();

    let mut report = RootReport::default();
    let mut skipped = 0;
    let mut best: Option<(u64, FiniteFieldExt, Vec<Vec<u64>>)> = None;
    let mut tried_sqfree = 0;
    let mut q = 1u64;
    loop {
        q = next_prime_u64(q);
        if q > opts.aux_search_cap {
            break;
        }
        if !is_inert(k, q) || reduce_u64(&lc, q).iter().all(|&x| x == 0) {
            continue;
        }
        if skipped < opts.aux_skip {
            skipped += 1;
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ q.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let (ext, roots, sqfree) = residue_roots(k, &c, rational, q, &mut rng)?;
        report.aux_primes_tried.push(q);
        if roots.is_empty() {
            report.aux_prime = Some(q);
            return Ok(report);
        }
        if sqfree {
            tried_sqfree += 1;
            let better = match &best {
                None => true,
                Some((_, _, r)) => roots.len() < r.len(),
            };
            if better {
                best = Some((q, ext, roots));
            }
        }
        if report.aux_primes_tried.len() >= opts.emptiness_tries && tried_sqfree > 0 {
            break;
        }
        if report.aux_primes_tried.len() >= 30 {
            break;
        }
    }
    let (q, _, roots) = match best {
        Some(b) => b,
        None if report.aux_primes_tried.len() >= 30 => {
            // Every reduction tried was inseparable: pass to the squarefree part.
            let pk = PolyRing::new(k.clone());
            let g = pk.gcd(f, &pk.derivative(f));
            if g.deg() == Some(0) {
                return Err(NfError::Resource(
                    "no auxiliary prime gives a squarefree reduction".into(),
                ));
            }
            let sf = pk.divrem(f, &g).map_err(|e| NfError::Internal(e.to_string()))?.0;
            return roots_in_field(k, &sf, opts);
        }
        None => {
            return Err(NfError::Resource(format!(
                "no inert auxiliary prime below {} for {}",
                opts.aux_search_cap,
                k.spec()
            )))
        }
    };
    report.aux_prime = Some(q);
    report.residue_roots = roots.len();

    let (nb, db) = coordinate_bounds(k, f);
    let needed = (BigInt::from(2) * &nb * &db).bits() + 1;
    let bits = needed.max(128);
    let proven = bits <= opts.hensel_max_bits;
    let bits = bits.min(opts.hensel_max_bits);
    let logq = (q as f64).log2();
    let prec = ((bits as f64) / logq).ceil() as u32 + 1;
    let gr = GaloisRing::new(q, prec, k.modulus()).map_err(|e| NfError::Internal(e.to_string()))?;
    let modulus = gr.modulus().clone();
    report.precision_bits = modulus.bits();
    let (nb, db) = if proven {
        (nb, db)
    } else {
        let s = (&modulus / 2u32).sqrt();
        (s.clone(), s)
    };
    let dc: Vec<Vec<BigInt>> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v.iter().map(|x| x * i).collect())
        .collect();
    let mut found = Vec::new();
    for r in &roots {
        let lifted = match hensel_lift(&gr, &c, &dc, r) {
            Some(l) => l,
            None => {
                report.undecided += 1;
                continue;
            }
        };
        let mut coords = Vec::with_capacity(k.degree());
        for x in &lifted {
            match rational_reconstruct_bounds(x, &modulus, &nb, &db) {
                Ok(Some(v)) => coords.push(v),
                _ => break,
            }
        }
        let ok = coords.len() == k.degree() && {
            let beta = k.from_rationals(&coords);
            let v = vanishes_at(k, &c, &beta);
            if v {
                found.push(beta);
            }
            v
        };
        if !ok {
            if proven {
                report.rejected += 1;
            } else {
                report.undecided += 1;
            }
        }
    }
    found.sort();
    found.dedup();
    report.roots = found;
    Ok(report)
}

/// Roots in K of a polynomial with rational coefficients.
pub fn roots_of_rational_poly(
    k: &NumberField,
    f: &Poly<Rational>,
    opts: &RootOptions,
) -> Result<RootReport, NfError> {
    let pk = PolyRing::new(k.clone());
    let fk = pk.from_coeffs(f.coeffs().iter().map(|c| k.from_rational(c)).collect());
    roots_in_field(k, &fk, opts)
}

/// A square root of β in K, if one exists.
pub fn is_square(k: &NumberField, beta: &NfElem, opts: &RootOptions) -> Result<Option<NfElem>, NfError> {
    if k.is_zero(beta) {
        return Ok(Some(beta.clone()));
    }
    let pk = PolyRing::new(k.clone());
    let f = pk.from_coeffs(vec![k.neg(beta), k.zero(), k.one()]);
    let rep = roots_in_field(k, &f, opts)?;
    if rep.undecided > 0 && rep.roots.is_empty() {
        return Err(NfError::Undecided("square root candidate past the precision cap".into()));
    }
    Ok(rep.roots.into_iter().next())
}
