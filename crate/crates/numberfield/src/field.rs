use std::fmt;
use std::str::FromStr;

use bigmath::{is_prime_u64, squarefree_part, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use polyring::{Field, Poly, PolyRing, Rationals, Ring};
use serde::{Deserialize, Serialize};

use crate::NfError;

/// Which field: Q, Q(ζ_{p^k}), or Q(√d) with d squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic { p: u64, k: u32 },
    Quadratic { d: BigInt },
}

impl FieldSpec {
    pub fn cyclotomic(p: u64) -> Self {
        FieldSpec::Cyclotomic { p, k: 1 }
    }

    pub fn quadratic(d: i64) -> Self {
        FieldSpec::Quadratic { d: BigInt::from(d) }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Cyclotomic { p, k: 1 } => write!(f, "cyclo:{p}"),
            FieldSpec::Cyclotomic { p, k } => write!(f, "cyclo:{p}^{k}"),
            FieldSpec::Quadratic { d } => write!(f, "quad:{d}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = NfError;

    fn from_str(s: &str) -> Result<Self, NfError> {
        let bad = || NfError::Domain(format!("unrecognized field spec {s:?}"));
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("cyclo:") {
            let (p, k) = match rest.split_once('^') {
                Some((p, k)) => (p, k.parse::<u32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            return Ok(FieldSpec::Cyclotomic { p: p.parse().map_err(|_| bad())?, k });
        }
        if let Some(rest) = s.strip_prefix("quad:") {
            return Ok(FieldSpec::Quadratic { d: rest.parse().map_err(|_| bad())? });
        }
        Err(bad())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Element of Q[t]/(m) stored as integer coordinates over a common positive
/// denominator, reduced so that gcd(content, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            return NfElem { num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        NfElem { num, den }
    }
}

/// Monogenic number field Q[t]/(m) with m monic over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    spec: FieldSpec,
    m: Vec<BigInt>,
}

pub fn cyclotomic_poly_prime_power(p: u64, k: u32) -> Vec<BigInt> {
    // Φ_{p^k}(t) = Φ_p(t^{p^{k−1}})
    let step = p.pow(k - 1) as usize;
    let mut v = vec![BigInt::zero(); (p as usize - 1) * step + 1];
    for i in 0..p as usize {
        v[i * step] = BigInt::one();
    }
    v
}

impl NumberField {
    pub fn new(spec: FieldSpec) -> Result<Self, NfError> {
        match spec {
            FieldSpec::Rationals => {
                Ok(NumberField { spec, m: vec![BigInt::zero(), BigInt::one()] })
            }
            FieldSpec::Cyclotomic { p, k } => {
                if !is_prime_u64(p) {
                    return Err(NfError::Domain(format!("cyclotomic conductor base {p} is not prime")));
                }
                if k == 0 {
                    return Err(NfError::Domain("cyclotomic exponent must be ≥ 1".into()));
                }
                if (p as f64).powi(k as i32) > 1e6 {
                    return Err(NfError::Domain(format!("conductor {p}^{k} too large")));
                }
                Ok(NumberField { spec, m: cyclotomic_poly_prime_power(p, k) })
            }
            FieldSpec::Quadratic { d } => {
                if d.is_zero() {
                    return Err(NfError::Domain("quadratic field with d = 0".into()));
                }
                let d = squarefree_part(&d).map_err(|e| NfError::Domain(e.to_string()))?;
                if d.is_one() {
                    return Err(NfError::Domain("d is a perfect square; the field is Q".into()));
                }
                Ok(NumberField {
                    m: vec![-d.clone(), BigInt::zero(), BigInt::one()],
                    spec: FieldSpec::Quadratic { d },
                })
            }
        }
    }

    /// Q(√d), or Q itself when d is a perfect square.
    pub fn quadratic_or_rational(d: &BigInt) -> Result<Self, NfError> {
        if d.is_zero() {
            return Err(NfError::Domain("quadratic field with d = 0".into()));
        }
        let s = squarefree_part(d).map_err(|e| NfError::Domain(e.to_string()))?;
        if s.is_one() {
            NumberField::new(FieldSpec::Rationals)
        } else {
            NumberField::new(FieldSpec::Quadratic { d: s })
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    /// Defining polynomial coefficients, degree 0 first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.m
    }

    pub fn defining_poly(&self) -> Poly<Rational> {
        PolyRing::new(Rationals).from_coeffs(self.m.iter().map(|c| Rational::from(c.clone())).collect())
    }

    /// p^k for cyclotomic fields.
    pub fn conductor(&self) -> Option<u64> {
        match &self.spec {
            FieldSpec::Cyclotomic { p, k } => Some(p.pow(*k)),
            _ => None,
        }
    }

    pub fn quadratic_d(&self) -> Option<&BigInt> {
        match &self.spec {
            FieldSpec::Quadratic { d } => Some(d),
            _ => None,
        }
    }

    pub fn gen(&self) -> NfElem {
        if self.degree() == 1 {
            // t ≡ −m_0
            return self.from_rational(&Rational::from(-self.m[0].clone()));
        }
        let mut num = vec![BigInt::zero(); self.degree()];
        num[1] = BigInt::one();
        NfElem { num, den: BigInt::one() }
    }

    pub fn from_rational(&self, r: &Rational) -> NfElem {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        NfElem { num, den: r.denom().clone() }
    }

    pub fn from_rationals(&self, coords: &[Rational]) -> NfElem {
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        self.reduce_poly(&mut num);
        NfElem::normalized(num, den)
    }

    pub fn from_int_coords(&self, num: Vec<BigInt>, den: BigInt) -> NfElem {
        let mut num = num;
        self.reduce_poly(&mut num);
        NfElem::normalized(num, den)
    }

    pub fn coords(&self, a: &NfElem) -> Vec<Rational> {
        a.num.iter().map(|c| Rational::new(c.clone(), a.den.clone()).unwrap()).collect()
    }

    pub fn is_rational(&self, a: &NfElem) -> bool {
        a.num.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self, a: &NfElem) -> Option<Rational> {
        self.is_rational(a).then(|| Rational::new(a.num[0].clone(), a.den.clone()).unwrap())
    }

    /// Reduces an integer coefficient vector modulo the monic m, in place.
    pub fn reduce_poly(&self, v: &mut Vec<BigInt>) {
        let n = self.degree();
        while v.len() > n {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let base = v.len() - n;
            for (j, mj) in self.m[..n].iter().enumerate() {
                if !mj.is_zero() {
                    v[base + j] -= &c * mj;
                }
            }
        }
        v.resize(n, BigInt::zero());
    }

    /// Product of integer coordinate vectors reduced mod m.
    pub fn mul_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut acc = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        self.reduce_poly(&mut acc);
        acc
    }

    /// Elements of the Galois group as exponents: t ↦ t^a for cyclotomic
    /// fields, a = ±1 for quadratic fields, a = 1 for Q.
    pub fn galois_group(&self) -> Vec<i64> {
        match &self.spec {
            FieldSpec::Rationals => vec![1],
            FieldSpec::Quadratic { .. } => vec![1, -1],
            FieldSpec::Cyclotomic { .. } => {
                let n = self.conductor().unwrap() as i64;
                (1..n).filter(|a| a.gcd(&n) == 1).collect()
            }
        }
    }

    /// σ_a(α).
    pub fn galois_apply(&self, a: i64, alpha: &NfElem) -> Result<NfElem, NfError> {
        match &self.spec {
            FieldSpec::Rationals => {
                if a != 1 && a != -1 {
                    return Err(NfError::Domain(format!("{a} is not a Galois element of Q")));
                }
                Ok(alpha.clone())
            }
            FieldSpec::Quadratic { .. } => match a {
                1 => Ok(alpha.clone()),
                -1 => {
                    let mut num = alpha.num.clone();
                    num[1] = -&num[1];
                    Ok(NfElem { num, den: alpha.den.clone() })
                }
                _ => Err(NfError::Domain(format!("{a} is not ±1"))),
            },
            FieldSpec::Cyclotomic { .. } => {
                let n = self.conductor().unwrap() as i64;
                if a.gcd(&n) != 1 {
                    return Err(NfError::Domain(format!("{a} is not a unit mod {n}")));
                }
                let a = a.rem_euclid(n) as usize;
                let mut v = vec![BigInt::zero(); n as usize];
                for (i, c) in alpha.num.iter().enumerate() {
                    v[(i * a) % n as usize] += c;
                }
                Ok(self.from_int_coords(v, alpha.den.clone()))
            }
        }
    }

    /// Degree of Q(α)/Q and the minimal polynomial Π (x − β) over the orbit.
    pub fn galois_orbit_minpoly(&self, alpha: &NfElem) -> Result<(usize, Poly<Rational>), NfError> {
        let mut orbit: Vec<NfElem> = self
            .galois_group()
            .into_iter()
            .map(|a| self.galois_apply(a, alpha))
            .collect::<Result<_, _>>()?;
        orbit.sort();
        orbit.dedup();
        let pk = PolyRing::new(self.clone());
        let mut prod = pk.one();
        for b in &orbit {
            prod = pk.mul(&prod, &pk.linear(b));
        }
        let mut coeffs = Vec::new();
        for c in prod.coeffs() {
            coeffs.push(self.to_rational(c).ok_or_else(|| {
                NfError::Internal("orbit polynomial has a non-rational coefficient".into())
            })?);
        }
        Ok((orbit.len(), PolyRing::new(Rationals).from_coeffs(coeffs)))
    }

    /// Norm N(α) as the product over the Galois orbit with multiplicity.
    pub fn norm(&self, alpha: &NfElem) -> Result<Rational, NfError> {
        let mut acc = self.one();
        for a in self.galois_group() {
            acc = self.mul(&acc, &self.galois_apply(a, alpha)?);
        }
        self.to_rational(&acc).ok_or_else(|| NfError::Internal("norm is not rational".into()))
    }

    /// Upper bound on |σ(t)| over all complex embeddings σ.
    pub fn gen_abs_bound(&self) -> BigInt {
        match &self.spec {
            FieldSpec::Rationals => BigInt::zero(),
            FieldSpec::Cyclotomic { .. } => BigInt::one(),
            FieldSpec::Quadratic { d } => {
                let s = d.abs().sqrt();
                if &(&s * &s) == &d.abs() {
                    s
                } else {
                    s + 1
                }
            }
        }
    }
}

impl Ring for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }
    fn one(&self) -> NfElem {
        self.from_rational(&Rational::one())
    }
    fn from_bigint(&self, n: &BigInt) -> NfElem {
        self.from_rational(&Rational::from(n.clone()))
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return NfElem::normalized(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        NfElem::normalized(num, &a.den * &b.den)
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|c| -c).collect(), den: a.den.clone() }
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem::normalized(self.mul_int(&a.num, &b.num), &a.den * &b.den)
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.num.iter().all(|c| c.is_zero())
    }
    fn try_inv(&self, a: &NfElem) -> Option<NfElem> {
        if self.is_zero(a) {
            return None;
        }
        let pq = PolyRing::new(Rationals);
        let ap = pq.from_coeffs(self.coords(a));
        let (g, s, _) = pq.xgcd(&ap, &self.defining_poly());
        debug_assert_eq!(g.deg(), Some(0));
        let mut c = s.into_coeffs();
        c.resize(self.degree(), Rational::zero());
        Some(self.from_rationals(&c))
    }
}

impl Field for NumberField {}

/// JSON form of a field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElement {
    pub field: FieldSpec,
    pub coords: Vec<Rational>,
}

impl FieldElement {
    pub fn from_elem(k: &NumberField, a: &NfElem) -> Self {
        FieldElement { field: k.spec().clone(), coords: k.coords(a) }
    }

    pub fn to_elem(&self, k: &NumberField) -> Result<NfElem, NfError> {
        if &self.field != k.spec() {
            return Err(NfError::Domain(format!("element of {} used in {}", self.field, k.spec())));
        }
        if self.coords.len() != k.degree() {
            return Err(NfError::Domain("coordinate count does not match degree".into()));
        }
        Ok(k.from_rationals(&self.coords))
    }
}
