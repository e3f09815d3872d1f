use bigmath::{factor, Rational};
use ellcurve::{CurveModel, DivisionPolys, Point, PointJson, Weierstrass, DEFAULT_DIVPOLY_CAP};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use numberfield::{is_square, roots_in_field, roots_of_rational_poly, NfElem, NumberField, RootOptions};
use polyring::{Poly, PolyRing, Rationals, Ring};
use serde::Serialize;

use crate::bound::{torsion_bound, BoundOptions, TorsionBound};
use crate::{weil_admissible, TorsionError};

#[derive(Clone, Debug)]
pub struct TorsionOptions {
    pub bound: BoundOptions,
    pub roots: RootOptions,
    /// Largest n whose division polynomial is formed; deeper levels divide points instead.
    pub divpoly_cap: u32,
    /// Highest 2-power level searched; 32 is the ceiling for abelian fields.
    pub two_primary_cap: u64,
    /// Primes whose levels are never searched directly.
    pub skip_primes: Vec<u64>,
}

impl Default for TorsionOptions {
    fn default() -> Self {
        TorsionOptions {
            bound: BoundOptions::default(),
            roots: RootOptions::default(),
            divpoly_cap: DEFAULT_DIVPOLY_CAP,
            two_primary_cap: 32,
            skip_primes: vec![43, 67, 163],
        }
    }
}

/// E(K)[ℓ^∞] as Z/ℓ^a × Z/ℓ^b (a ≤ b), with points listed by exact order.
#[derive(Clone, Debug)]
pub struct PrimaryPart {
    pub ell: u64,
    /// counts[k] = |E(K)[ℓ^k]|, counts[0] = 1.
    pub counts: Vec<u64>,
    /// levels[k−1] holds the points of exact order ℓ^k (short model).
    pub levels: Vec<Vec<Point<NfElem>>>,
    pub a: u32,
    pub b: u32,
    pub flags: Vec<String>,
    pub aux_primes: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct TorsionGroup {
    /// (m, mn) for Z/m × Z/mn.
    pub invariants: (u64, u64),
    /// Generators on the input model: one of order mn, then one of order m if m > 1.
    pub generators: Vec<Point<NfElem>>,
    pub bound: TorsionBound,
    pub primary: Vec<PrimaryPart>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionJson {
    pub invariants: [u64; 2],
    pub generators: Vec<PointJson>,
    pub bound: String,
    pub aux_primes: Vec<u64>,
    pub flags: Vec<String>,
}

impl TorsionGroup {
    pub fn order(&self) -> u64 {
        self.invariants.0 * self.invariants.1
    }

    pub fn is_resolved(&self) -> bool {
        self.flags.is_empty()
    }

    /// "Z/25", "Z/2 x Z/14", or "trivial".
    pub fn structure(&self) -> String {
        format_structure(self.invariants)
    }

    pub fn to_json(&self, k: &NumberField) -> TorsionJson {
        TorsionJson {
            invariants: [self.invariants.0, self.invariants.1],
            generators: self.generators.iter().map(|g| PointJson::from_point(k, g)).collect(),
            bound: self.bound.b.to_string(),
            aux_primes: self.bound.primes.iter().map(|p| p.q).collect(),
            flags: self.flags.clone(),
        }
    }
}

pub fn format_structure((m, mn): (u64, u64)) -> String {
    match (m, mn) {
        (1, 1) => "trivial".into(),
        (1, n) => format!("Z/{n}"),
        (m, n) => format!("Z/{m} x Z/{n}"),
    }
}

fn point_key(k: &NumberField, p: &Point<NfElem>) -> (Vec<Rational>, Vec<Rational>) {
    match p {
        Point::Infinity => (Vec::new(), Vec::new()),
        Point::Affine(x, y) => (k.coords(x), k.coords(y)),
    }
}

/// Search context for one curve over one field, on the integral short model.
pub(crate) struct Searcher<'a> {
    pub k: &'a NumberField,
    pub e: Weierstrass<NumberField>,
    pub a: BigInt,
    pub b: BigInt,
    pub dp: DivisionPolys,
    pub opts: &'a TorsionOptions,
}

impl<'a> Searcher<'a> {
    pub fn new(k: &'a NumberField, a: &BigInt, b: &BigInt, opts: &'a TorsionOptions) -> Self {
        let e = Weierstrass::short(k.clone(), k.from_bigint(a), k.from_bigint(b)).expect("nonsingular");
        Searcher { k, e, a: a.clone(), b: b.clone(), dp: DivisionPolys::new(a, b), opts }
    }

    fn to_q(f: &Poly<BigInt>) -> Poly<Rational> {
        PolyRing::new(Rationals).from_coeffs(f.coeffs().iter().map(|c| Rational::from_int(c.clone())).collect())
    }

    /// Points with the given x-coordinates, with y found in K when it exists.
    fn lift_x(&self, xs: &[NfElem], part: &mut PrimaryPart) -> Result<Vec<Point<NfElem>>, TorsionError> {
        let k = self.k;
        let mut pts = Vec::new();
        for x in xs {
            let rhs = k.add(&k.mul(&k.add(&k.square(x), &k.from_bigint(&self.a)), x), &k.from_bigint(&self.b));
            match is_square(k, &rhs, &self.opts.roots) {
                Ok(Some(y)) => {
                    let ny = k.neg(&y);
                    pts.push(Point::Affine(x.clone(), y.clone()));
                    if ny != y {
                        pts.push(Point::Affine(x.clone(), ny));
                    }
                }
                Ok(None) => {}
                Err(numberfield::NfError::Undecided(m)) => part.flags.push(format!("unresolved y-coordinate at ℓ = {}: {m}", part.ell)),
                Err(e) => return Err(e.into()),
            }
        }
        Ok(pts)
    }

    fn roots(&self, f: &Poly<Rational>, part: &mut PrimaryPart, level: &str) -> Result<Vec<NfElem>, TorsionError> {
        let rep = roots_of_rational_poly(self.k, f, &self.opts.roots)?;
        if let Some(q) = rep.aux_prime {
            part.aux_primes.push(q);
        }
        if rep.undecided > 0 {
            part.flags.push(format!("unresolved candidates at level {level}"));
        }
        Ok(rep.roots)
    }

    /// Points of exact order ℓ^k, given those of exact order ℓ^{k−1}.
    fn level(&mut self, ell: u64, k: u32, prev: &[Point<NfElem>], part: &mut PrimaryPart) -> Result<Option<Vec<Point<NfElem>>>, TorsionError> {
        let n = ell.pow(k);
        let label = format!("{n}");
        if ell == 2 && k == 1 {
            let xs = self.roots(&Self::to_q(&self.dp.cubic()), part, &label)?;
            return Ok(Some(xs.into_iter().map(|x| Point::Affine(x, self.k.zero())).collect()));
        }
        if n <= self.opts.divpoly_cap as u64 {
            let top = Self::to_q(&self.dp.psi_tilde(n as u32));
            let prim = if k == 1 {
                top
            } else {
                let low = Self::to_q(&self.dp.psi_tilde((n / ell) as u32));
                let pq = PolyRing::new(Rationals);
                pq.div_exact(&top, &low).map_err(|e| TorsionError::Internal(format!("ψ̃ quotient: {e}")))?
            };
            let xs = self.roots(&prim, part, &label)?;
            return Ok(Some(self.lift_x(&xs, part)?));
        }
        if k == 1 {
            part.flags.push(format!("ℓ = {ell} exceeds the division polynomial cap"));
            return Ok(None);
        }
        // ℓ-division of each point of order ℓ^{k−1}: x(Q) is a root of φ_ℓ − x(P)·ψ_ℓ².
        let phi = self.dp.phi(ell as u32);
        let psi2 = self.dp.psi_squared(ell as u32);
        let pk = PolyRing::new(self.k.clone());
        let lift = |f: &Poly<BigInt>| pk.from_coeffs(f.coeffs().iter().map(|c| self.k.from_bigint(c)).collect());
        let (phik, psi2k) = (lift(&phi), lift(&psi2));
        let mut out = Vec::new();
        for p in prev {
            let xp = p.x().unwrap();
            let g = pk.sub(&phik, &pk.scale(xp, &psi2k));
            let rep = roots_in_field(self.k, &g, &self.opts.roots)?;
            if rep.undecided > 0 {
                part.flags.push(format!("unresolved candidates dividing a point at level {label}"));
            }
            for q in self.lift_x(&rep.roots, part)? {
                if &self.e.mul_i64(ell as i64, &q) == p {
                    out.push(q);
                }
            }
        }
        out.sort_by_key(|p| point_key(self.k, p));
        out.dedup();
        Ok(Some(out))
    }

    /// E(K)[ℓ^∞], searching level k only while ℓ·|E(K)[ℓ^{k−1}]| divides `limit`.
    pub fn primary(&mut self, ell: u64, limit: &BigInt, max_level: u32) -> Result<PrimaryPart, TorsionError> {
        let mut part = PrimaryPart { ell, counts: vec![1], levels: Vec::new(), a: 0, b: 0, flags: Vec::new(), aux_primes: Vec::new() };
        if self.opts.skip_primes.contains(&ell) {
            part.flags.push(format!("ℓ = {ell} is not searched"));
            return Ok(part);
        }
        let mut prev = vec![Point::Infinity];
        for k in 1..=max_level {
            let s = *part.counts.last().unwrap();
            if prev.is_empty() || !(limit % BigInt::from(s * ell)).is_zero() {
                break;
            }
            if ell == 2 && 2u64.pow(k) > self.opts.two_primary_cap {
                break;
            }
            let pts = match self.level(ell, k, &prev, &mut part)? {
                Some(p) => p,
                None => break,
            };
            part.counts.push(s + pts.len() as u64);
            part.levels.push(pts.clone());
            prev = pts;
        }
        while part.counts.len() > 1 && part.levels.last().is_some_and(|l| l.is_empty()) {
            part.counts.pop();
            part.levels.pop();
        }
        for w in part.counts.windows(2) {
            let r = ratio_log(w[1] / w[0], ell);
            if r >= 1 {
                part.b += 1;
            }
            if r == 2 {
                part.a += 1;
            }
        }
        Ok(part)
    }

    /// Lexicographically least generators for the ℓ-primary part.
    fn primary_generators(&self, part: &PrimaryPart) -> Result<(Option<Point<NfElem>>, Option<Point<NfElem>>), TorsionError> {
        if part.b == 0 {
            return Ok((None, None));
        }
        let least = |pts: &[Point<NfElem>]| pts.iter().min_by_key(|p| point_key(self.k, p)).cloned();
        let g1 = least(&part.levels[part.b as usize - 1]).unwrap();
        if part.a == 0 {
            return Ok((Some(g1), None));
        }
        let ell = part.ell as i64;
        let t1 = self.e.mul_i64(ell.pow(part.b - 1), &g1);
        let socle: Vec<Point<NfElem>> = (0..ell).map(|j| self.e.mul_i64(j, &t1)).collect();
        let mut cands = part.levels[part.a as usize - 1].clone();
        cands.sort_by_key(|p| point_key(self.k, p));
        for g2 in cands {
            let t2 = self.e.mul_i64(ell.pow(part.a - 1), &g2);
            if !socle.contains(&t2) {
                return Ok((Some(g1), Some(g2)));
            }
        }
        Err(TorsionError::Internal(format!("no independent generator for ℓ = {}", part.ell)))
    }
}

fn ratio_log(mut r: u64, ell: u64) -> u32 {
    let mut e = 0;
    while r > 1 {
        r /= ell;
        e += 1;
    }
    e
}

/// Largest k with ℓ^k | n.
fn valuation(n: &BigInt, ell: u64) -> u32 {
    let l = BigInt::from(ell);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &l).is_zero() {
        n /= &l;
        v += 1;
    }
    v
}

fn order_is_exact(e: &Weierstrass<NumberField>, p: &Point<NfElem>, n: u64) -> bool {
    if !e.mul_i64(n as i64, p).is_infinity() {
        return false;
    }
    bigmath::factor_u64(n).iter().all(|(l, _)| !e.mul_i64((n / l) as i64, p).is_infinity())
}

/// E(K)_tors for E/Q and K = Q, Q(ζ_{p^k}) or Q(√d).
pub fn torsion_subgroup(e: &CurveModel, k: &NumberField, opts: &TorsionOptions) -> Result<TorsionGroup, TorsionError> {
    let bound = torsion_bound(e, k, &opts.bound)?;
    let s = e.short_form();
    let mut search = Searcher::new(k, &s.a, &s.b, opts);
    let mut primary = Vec::new();
    let mut flags = Vec::new();
    for (ell, _) in factor(&bound.b.magnitude().clone()) {
        let ell = ell.to_u64().ok_or_else(|| TorsionError::Resource(format!("bound {} has a huge prime factor", bound.b)))?;
        let v = valuation(&bound.b, ell);
        let part = search.primary(ell, &bound.b, v)?;
        flags.extend(part.flags.iter().cloned());
        primary.push(part);
    }
    let (mut m, mut mn) = (1u64, 1u64);
    let mut g1 = Point::Infinity;
    let mut g2 = Point::Infinity;
    for part in &primary {
        m *= part.ell.pow(part.a);
        mn *= part.ell.pow(part.b);
        let (a, b) = search.primary_generators(part)?;
        if let Some(a) = a {
            g1 = search.e.add(&g1, &a);
        }
        if let Some(b) = b {
            g2 = search.e.add(&g2, &b);
        }
    }
    let long = e.over(k);
    let mut generators = Vec::new();
    for (g, n) in [(g1, mn), (g2, m)] {
        if n == 1 {
            continue;
        }
        let gl = e.short_to_long(k, &g);
        if !long.is_on_curve(&gl) || !order_is_exact(&long, &gl, n) {
            return Err(TorsionError::Internal(format!("generator failed the order-{n} check")));
        }
        generators.push(gl);
    }
    if !weil_admissible(m, k) {
        flags.push(format!("Z/{m} x Z/{m} violates the Weil pairing constraint"));
    }
    if !(&bound.b % BigInt::from(m * mn)).is_zero() {
        flags.push("group order does not divide the reduction bound".into());
    }
    Ok(TorsionGroup { invariants: (m, mn), generators, bound, primary, flags })
}

/// |E(K)[ℓ^v]| for the short model y² = x³ + Ax + B, searching all levels up to v.
pub fn primary_count(a: &BigInt, b: &BigInt, k: &NumberField, ell: u64, v: u32, opts: &TorsionOptions) -> Result<PrimaryPart, TorsionError> {
    let mut s = Searcher::new(k, a, b, opts);
    let limit = BigInt::from(ell).pow(2 * v);
    s.primary(ell, &limit, v)
}
