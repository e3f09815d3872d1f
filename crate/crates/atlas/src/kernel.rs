use bigmath::{factor, is_prime_u64, Rational};
use ellcurve::{division_poly, CurveModel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use numberfield::{
    dedekind_ramified, is_square, roots_of_rational_poly, DedekindVerdict, FieldElement, FieldSpec, NfError, NumberField,
    RootOptions,
};
use polyring::{PolyRing, Rationals, Ring};
use serde::Serialize;

use crate::AtlasError;

/// Division polynomials above this index are refused unless the cap is raised.
pub const DEFAULT_KERNEL_CAP: u32 = 19;

/// Discriminant cofactors up to this size are factored completely.
const FULL_FACTOR_BITS: u64 = 160;

#[derive(Clone, Debug)]
pub struct KernelOptions {
    pub cap: u32,
    pub roots: RootOptions,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { cap: DEFAULT_KERNEL_CAP, roots: RootOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    pub verdict: DedekindVerdict,
    /// Generator whose order decided the verdict: "x" or "period:j".
    pub generator: String,
}

/// One Galois orbit of x-coordinates of ℓ-torsion points lying in K.
#[derive(Clone, Debug, Serialize)]
pub struct KernelOrbit {
    /// x-coordinates on the integral short model.
    pub roots: Vec<FieldElement>,
    pub orbit_degree: usize,
    /// Minimal polynomial over Q, constant term first.
    pub minpoly: Vec<Rational>,
    /// D such that D^n·m(x/D) is monic with integer coefficients.
    #[serde(serialize_with = "crate::ser::display")]
    pub scale: BigInt,
    pub dedekind: Vec<PrimeVerdict>,
    /// Bits of the discriminant cofactor left unfactored, if any.
    pub unfactored_bits: u64,
    pub y_in_field: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ell: u64,
    pub field: String,
    pub divpoly_degree: usize,
    pub has_root: bool,
    pub orbits: Vec<KernelOrbit>,
    pub aux_prime: Option<u64>,
    pub aux_primes_tried: Vec<u64>,
    pub precision_bits: u64,
    pub flags: Vec<String>,
}

impl KernelOrbit {
    pub fn verdict(&self, p: u64) -> Option<DedekindVerdict> {
        self.dedekind.iter().find(|v| v.p == p).map(|v| v.verdict)
    }
}

/// Prime factors of n: trial division by `hints` and small primes, then a
/// full factorization of the cofactor when it is small enough.
fn prime_factors(n: &BigInt, hints: &[u64]) -> (Vec<u64>, u64) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let strip = |p: u64, rest: &mut BigInt, out: &mut Vec<u64>| {
        let pb = BigInt::from(p);
        if (&*rest % &pb).is_zero() {
            out.push(p);
            while (&*rest % &pb).is_zero() {
                *rest /= &pb;
            }
        }
    };
    for &p in hints {
        strip(p, &mut rest, &mut out);
    }
    let mut p = 2u64;
    while p < 10_000 {
        strip(p, &mut rest, &mut out);
        p = bigmath::next_prime_u64(p);
    }
    let mut unfactored = 0;
    if !rest.is_one() && !rest.is_zero() {
        if rest.bits() <= FULL_FACTOR_BITS {
            for (q, _) in factor(&rest.magnitude().clone()) {
                match q.to_u64() {
                    Some(q) => out.push(q),
                    None => unfactored = unfactored.max(q.bits()),
                }
            }
        } else {
            unfactored = rest.bits();
        }
    }
    out.sort_unstable();
    out.dedup();
    (out, unfactored)
}

/// D^n·m(x/D) for a monic rational m, with D the lcm of the coefficient denominators.
fn integral_model(m: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let d = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let n = m.len() - 1;
    let mut dp = BigInt::one();
    let mut g = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        let c = &m[n - i] * &Rational::from_int(dp.clone());
        g[n - i] = c.numer().clone();
        dp *= &d;
    }
    (d, g)
}

/// Integral generators of Q(x) other than x itself, used when Z[x] is not
/// p-maximal: for cyclotomic K the periods Tr_{K/Q(x)}(t^j), for quadratic
/// K the element (1 + √d)/2 when it is integral.
fn alternate_generators(
    k: &NumberField,
    x: &numberfield::NfElem,
    deg: usize,
) -> Result<Vec<(String, Vec<BigInt>)>, AtlasError> {
    let mut out = Vec::new();
    if deg == 1 {
        return Ok(out);
    }
    let group = k.galois_group();
    let mut stab = Vec::new();
    for &a in &group {
        if &k.galois_apply(a, x)? == x {
            stab.push(a);
        }
    }
    let mut candidates: Vec<(String, numberfield::NfElem)> = Vec::new();
    match k.spec() {
        FieldSpec::Cyclotomic { .. } => {
            let t = k.gen();
            let mut tj = k.one();
            for j in 1..=k.degree() {
                tj = k.mul(&tj, &t);
                let mut eta = k.zero();
                for &a in &stab {
                    eta = k.add(&eta, &k.galois_apply(a, &tj)?);
                }
                candidates.push((format!("period:{j}"), eta));
            }
        }
        FieldSpec::Quadratic { d } => {
            candidates.push(("sqrt".into(), k.gen()));
            if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
                let half = k.from_rational(&Rational::frac(1, 2));
                candidates.push(("half-integral".into(), k.mul(&half, &k.add(&k.one(), &k.gen()))));
            }
        }
        FieldSpec::Rationals => {}
    }
    for (name, beta) in candidates {
        let (d, m) = k.galois_orbit_minpoly(&beta)?;
        let mc = m.into_coeffs();
        if d == deg && mc.iter().all(|c| c.is_integer()) {
            out.push((name, mc.iter().map(|c| c.numer().clone()).collect()));
        }
    }
    Ok(out)
}

/// Dedekind's criterion on the orbit polynomial, retried on the alternate
/// generators while the order stays non-maximal at p.
fn field_verdict(g: &[BigInt], alternates: &[(String, Vec<BigInt>)], p: u64) -> Result<PrimeVerdict, AtlasError> {
    let v = dedekind_ramified(g, p)?;
    if v != DedekindVerdict::Indeterminate {
        return Ok(PrimeVerdict { p, verdict: v, generator: "x".into() });
    }
    for (name, h) in alternates {
        let v = dedekind_ramified(h, p)?;
        if v != DedekindVerdict::Indeterminate {
            return Ok(PrimeVerdict { p, verdict: v, generator: name.clone() });
        }
    }
    Ok(PrimeVerdict { p, verdict: DedekindVerdict::Indeterminate, generator: "x".into() })
}

/// Where the x-coordinates of ℓ-torsion points of E lie relative to K: the
/// roots of ψ̃_ℓ in K, their Galois orbits over Q, and Dedekind ramification
/// verdicts for the primes dividing each orbit's discriminant.
pub fn isogeny_kernel_field(
    e: &CurveModel,
    ell: u64,
    k: &NumberField,
    opts: &KernelOptions,
) -> Result<KernelReport, AtlasError> {
    if ell == 2 || !is_prime_u64(ell) {
        return Err(AtlasError::Domain(format!("ℓ = {ell} is not an odd prime")));
    }
    if ell > opts.cap as u64 {
        return Err(AtlasError::Resource(format!(
            "ℓ = {ell} exceeds the division-polynomial cap {}",
            opts.cap
        )));
    }
    let s = e.short_form();
    let psi = division_poly(&s.a, &s.b, ell as u32, opts.cap)?;
    let pq = PolyRing::new(Rationals);
    let fq = pq.from_coeffs(psi.coeffs().iter().map(|c| Rational::from(c.clone())).collect());
    let rep = roots_of_rational_poly(k, &fq, &opts.roots)?;
    let mut flags = Vec::new();
    if rep.undecided > 0 {
        flags.push(format!("{} residue roots undecided past the precision cap", rep.undecided));
    }

    let mut hints: Vec<u64> = vec![ell];
    for (p, _) in factor(&e.short_discriminant().magnitude().clone()) {
        if let Some(p) = p.to_u64() {
            hints.push(p);
        }
    }
    let cubic = |x: &numberfield::NfElem| {
        let a = k.from_rational(&Rational::from(s.a.clone()));
        let b = k.from_rational(&Rational::from(s.b.clone()));
        k.add(&k.mul(&k.add(&k.mul(x, x), &a), x), &b)
    };

    let mut orbits: Vec<KernelOrbit> = Vec::new();
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for x in &rep.roots {
        let (deg, m) = k.galois_orbit_minpoly(x)?;
        let mc = m.into_coeffs();
        if let Some(i) = seen.iter().position(|s| s == &mc) {
            orbits[i].roots.push(FieldElement::from_elem(k, x));
            continue;
        }
        let (scale, g) = integral_model(&mc);
        let (primes, unfactored_bits) = if g.len() > 2 {
            let pz = PolyRing::new(Rationals);
            let gq = pz.from_coeffs(g.iter().map(|c| Rational::from(c.clone())).collect());
            let disc = pz.discriminant(&gq).map_err(|e| AtlasError::Internal(e.to_string()))?;
            prime_factors(disc.numer(), &hints)
        } else {
            (Vec::new(), 0)
        };
        let alternates = alternate_generators(k, x, deg)?;
        let mut dedekind = Vec::new();
        for p in primes {
            dedekind.push(field_verdict(&g, &alternates, p)?);
        }
        let y_in_field = match is_square(k, &cubic(x), &opts.roots) {
            Ok(y) => y.is_some(),
            Err(NfError::Undecided(_)) => {
                flags.push("y-coordinate membership undecided".into());
                false
            }
            Err(e) => return Err(e.into()),
        };
        seen.push(mc.clone());
        orbits.push(KernelOrbit {
            roots: vec![FieldElement::from_elem(k, x)],
            orbit_degree: deg,
            minpoly: mc,
            scale,
            dedekind,
            unfactored_bits,
            y_in_field,
        });
    }
    Ok(KernelReport {
        label: e.label.clone(),
        ell,
        field: k.spec().to_string(),
        divpoly_degree: psi.deg().unwrap_or(0),
        has_root: !rep.roots.is_empty(),
        orbits,
        aux_prime: rep.aux_prime,
        aux_primes_tried: rep.aux_primes_tried,
        precision_bits: rep.precision_bits,
        flags,
    })
}

/// Whether the orbit degree divides |Gal(K/Q)|, as it must for a subfield of K.
pub fn orbit_degree_divides(k: &NumberField, deg: usize) -> bool {
    let g = k.galois_group().len();
    g % deg == 0
}
