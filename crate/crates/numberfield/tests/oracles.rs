use bigmath::Rational;
use num_bigint::BigInt;
use numberfield::{
    dedekind_ramified, is_square, roots_in_field, roots_of_rational_poly, DedekindVerdict,
    FieldElement, FieldSpec, NfElem, NumberField, RootOptions,
};
use polyring::{Poly, PolyRing, Ring};
use proptest::prelude::*;

fn field(s: &str) -> NumberField {
    NumberField::new(s.parse().unwrap()).unwrap()
}

fn ints(k: &NumberField, v: &[i64]) -> NfElem {
    k.from_int_coords(v.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(1))
}

fn qpoly(v: &[i64]) -> Poly<Rational> {
    PolyRing::new(polyring::Rationals).from_i64s(v)
}

#[test]
fn field_construction() {
    let k = field("cyclo:5");
    assert_eq!(k.degree(), 4);
    let k = NumberField::new(FieldSpec::quadratic(12)).unwrap();
    assert_eq!(k.spec().to_string(), "quad:3");
    let k = field("cyclo:3^2");
    assert_eq!(k.degree(), 6);
    let m: Vec<i64> = k.modulus().iter().map(|c| i64::try_from(c).unwrap()).collect();
    assert_eq!(m, vec![1, 0, 0, 1, 0, 0, 1]);
    assert!("cyclo:15".parse::<FieldSpec>().and_then(NumberField::new).is_err());
    assert!(NumberField::new(FieldSpec::quadratic(0)).is_err());
}

#[test]
fn inverses() {
    let k = field("cyclo:3");
    let a = ints(&k, &[1, 1]);
    assert_eq!(k.try_inv(&a).unwrap(), ints(&k, &[0, -1]));
    let k5 = field("cyclo:5");
    assert_eq!(k5.try_inv(&k5.gen()).unwrap(), ints(&k5, &[-1, -1, -1, -1]));
    assert!(k5.try_inv(&k5.zero()).is_none());
    let q = field("Q");
    assert_eq!(q.try_inv(&q.from_i64(2)).unwrap(), q.from_rational(&Rational::frac(1, 2)));
}

#[test]
fn galois_action_examples() {
    let k = field("cyclo:5");
    let z = k.gen();
    assert_eq!(k.galois_apply(2, &z).unwrap(), ints(&k, &[0, 0, 1]));
    let s = k.add(&z, &k.try_inv(&z).unwrap());
    assert_eq!(k.galois_apply(3, &s).unwrap(), ints(&k, &[0, 0, 1, 1]));
    assert!(k.galois_apply(5, &z).is_err());
    let r = k.from_rational(&Rational::frac(7, 3));
    assert_eq!(k.galois_apply(4, &r).unwrap(), r);

    let k11 = field("cyclo:11");
    let z = k11.gen();
    let a = k11.add(&z, &k11.try_inv(&z).unwrap());
    assert_eq!(k11.galois_orbit_minpoly(&a).unwrap().0, 5);
    let (d, mp) = k.galois_orbit_minpoly(&k.gen()).unwrap();
    assert_eq!(d, 4);
    assert_eq!(mp, qpoly(&[1, 1, 1, 1, 1]));
    let (d, mp) = k.galois_orbit_minpoly(&r).unwrap();
    assert_eq!(d, 1);
    assert_eq!(mp.coeffs()[0], Rational::frac(-7, 3));
}

#[test]
fn root_examples() {
    let k = field("cyclo:5");
    let o = RootOptions::default();
    let rep = roots_of_rational_poly(&k, &qpoly(&[-1, 1, 1]), &o).unwrap();
    let mut expect = vec![ints(&k, &[-1, 0, -1, -1]), ints(&k, &[0, 0, 1, 1])];
    expect.sort();
    assert_eq!(rep.roots, expect);
    let rep = roots_of_rational_poly(&k, &qpoly(&[1, 1, 1, 1, 1]), &o).unwrap();
    let mut expect = vec![ints(&k, &[0, 1]), ints(&k, &[0, 0, 1]), ints(&k, &[0, 0, 0, 1]), ints(&k, &[-1, -1, -1, -1])];
    expect.sort();
    assert_eq!(rep.roots, expect);
    let rep = roots_of_rational_poly(&k, &qpoly(&[-2, 0, 1]), &o).unwrap();
    assert!(rep.roots.is_empty());
    assert_eq!(rep.undecided, 0);
}

#[test]
fn square_root_examples() {
    let k = field("cyclo:5");
    let o = RootOptions::default();
    let r = is_square(&k, &k.from_i64(5), &o).unwrap().unwrap();
    // ±(ζ − ζ² − ζ³ + ζ⁴), written in the basis 1, ζ, ζ², ζ³.
    let g = ints(&k, &[-1, 0, -2, -2]);
    assert!(r == g || r == k.neg(&g));
    let q = field("Q");
    let r = is_square(&q, &q.from_i64(4), &o).unwrap().unwrap();
    assert!(r == q.from_i64(2) || r == q.from_i64(-2));
    let k = NumberField::new(FieldSpec::quadratic(5)).unwrap();
    assert!(is_square(&k, &k.from_i64(-1), &o).unwrap().is_none());
}

#[test]
fn nonrational_coefficients_and_denominators() {
    // (x − (ζ/3 + 2))(x − ζ²/5)(x² + 5) over Q(ζ_7); √−5 is not in Q(ζ_7).
    let k = field("cyclo:7");
    let pk = PolyRing::new(k.clone());
    let a = k.from_rationals(&[Rational::from_int(2), Rational::frac(1, 3)]);
    let b = k.from_rationals(&[Rational::zero(), Rational::zero(), Rational::frac(1, 5)]);
    let f = pk.mul(&pk.linear(&a), &pk.linear(&b));
    let f = pk.mul(&f, &pk.from_coeffs(vec![k.from_i64(5), k.zero(), k.one()]));
    let rep = roots_in_field(&k, &f, &RootOptions::default()).unwrap();
    let mut expect = vec![a, b];
    expect.sort();
    assert_eq!(rep.roots, expect);
}

#[test]
fn repeated_roots_use_squarefree_part() {
    let k = NumberField::new(FieldSpec::quadratic(-3)).unwrap();
    // (x² + 3)² (x − 1)
    let f = PolyRing::new(polyring::Rationals);
    let g = f.mul(&f.pow(&qpoly(&[3, 0, 1]), 2), &qpoly(&[-1, 1]));
    let rep = roots_of_rational_poly(&k, &g, &RootOptions::default()).unwrap();
    assert_eq!(rep.roots.len(), 3);
}

#[test]
fn dedekind_examples() {
    let z = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    assert_eq!(dedekind_ramified(&z(&[-5, 0, 1]), 5).unwrap(), DedekindVerdict::Ramified);
    assert_eq!(dedekind_ramified(&z(&[1; 7]), 3).unwrap(), DedekindVerdict::Unramified);
    assert_eq!(dedekind_ramified(&z(&[1, 0, 1]), 2).unwrap(), DedekindVerdict::Ramified);
    assert!(dedekind_ramified(&z(&[1, 0, 2]), 2).is_err());
    // Φ_2 = x + 1 defines Q itself, so conductors start at 3.
    let primes: Vec<u64> = (2..=50).filter(|&n| bigmath::is_prime_u64(n)).collect();
    for &p in &primes[1..] {
        let phi = z(&vec![1; p as usize]);
        assert_eq!(dedekind_ramified(&phi, p).unwrap(), DedekindVerdict::Ramified);
        for &q in &primes {
            if q != p {
                assert_eq!(dedekind_ramified(&phi, q).unwrap(), DedekindVerdict::Unramified, "Φ_{p} at {q}");
            }
        }
    }
}

#[test]
fn serialization_shape() {
    let k = field("quad:-59");
    let e = FieldElement::from_elem(&k, &k.from_rationals(&[Rational::frac(1, 2), Rational::frac(-3, 2)]));
    let j = serde_json::to_string(&e).unwrap();
    assert_eq!(j, r#"{"field":"quad:-59","coords":["1/2","-3/2"]}"#);
    let back: FieldElement = serde_json::from_str(&j).unwrap();
    assert_eq!(back, e);
}

#[test]
fn unreachable_inert_prime_is_a_resource_error() {
    // (Z/16)* is not cyclic, so no prime is inert in Q(ζ_16).
    let k = field("cyclo:2^4");
    let opts = RootOptions { aux_search_cap: 2000, ..RootOptions::default() };
    let err = roots_of_rational_poly(&k, &qpoly(&[-2, 0, 1]), &opts).unwrap_err();
    assert!(matches!(err, numberfield::NfError::Resource(_)));
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    // Products of linear and quadratic factors make roots likely.
    (prop::collection::vec((-6i64..=6, -6i64..=6), 1..4), -3i64..=3)
        .prop_map(|(fs, c)| {
            let r = PolyRing::new(polyring::Integers);
            let mut acc = r.from_i64s(&[1]);
            for (a, b) in fs {
                acc = r.mul(&acc, &r.from_i64s(&[a, b, 1]));
            }
            acc = r.mul(&acc, &r.from_i64s(&[c, 1]));
            acc.coeffs().iter().map(|x| i64::try_from(x).unwrap()).collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn roots_independent_of_aux_prime(v in small_poly(), which in 0usize..3) {
        let spec = ["cyclo:5", "quad:-7", "cyclo:3"][which];
        let k = field(spec);
        let f = qpoly(&v);
        let a = roots_of_rational_poly(&k, &f, &RootOptions::default()).unwrap();
        let b = roots_of_rational_poly(&k, &f, &RootOptions { aux_skip: 2, seed: 9, ..RootOptions::default() }).unwrap();
        prop_assert_eq!(&a.roots, &b.roots);
        prop_assert_eq!(a.undecided, 0);
        let pk = PolyRing::new(k.clone());
        let fk = pk.from_coeffs(f.coeffs().iter().map(|c| k.from_rational(c)).collect());
        for r in &a.roots {
            prop_assert!(k.is_zero(&pk.eval(&fk, r)));
        }
        // Galois conjugation permutes the roots of a rational polynomial.
        for g in k.galois_group() {
            let mut img: Vec<NfElem> = a.roots.iter().map(|r| k.galois_apply(g, r).unwrap()).collect();
            img.sort();
            prop_assert_eq!(&img, &a.roots);
        }
    }

    #[test]
    fn orbit_degree_divides_field_degree(c in prop::collection::vec(-4i64..=4, 6)) {
        let k = field("cyclo:7");
        let a = ints(&k, &c);
        let (d, mp) = k.galois_orbit_minpoly(&a).unwrap();
        prop_assert_eq!(6 % d, 0);
        let pk = PolyRing::new(k.clone());
        let mk = pk.from_coeffs(mp.coeffs().iter().map(|x| k.from_rational(x)).collect());
        prop_assert!(k.is_zero(&pk.eval(&mk, &a)));
    }

    #[test]
    fn inverse_roundtrip(c in prop::collection::vec(-9i64..=9, 4), d in 1i64..20) {
        let k = field("cyclo:5");
        let a = k.from_rationals(&c.iter().map(|&x| Rational::frac(x, d)).collect::<Vec<_>>());
        prop_assume!(!k.is_zero(&a));
        prop_assert!(k.is_one(&k.mul(&a, &k.try_inv(&a).unwrap())));
    }
}
