use bigmath::Rational;
use num_bigint::{BigInt, BigUint};
use polyring::{
    roots_in_extension, roots_in_finite_field, split_part, FiniteField, FiniteFieldExt, Fp,
    Integers, Poly, PolyRing, Rationals, Ring,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly<F: FiniteField>(pr: &PolyRing<F>, deg: usize, rng: &mut ChaCha8Rng) -> Poly<F::Elem> {
    let k = pr.base();
    let mut c: Vec<F::Elem> = (0..deg).map(|_| k.random(rng)).collect();
    c.push(k.one());
    pr.from_coeffs(c)
}

// Exhaustive oracle: distinct roots by evaluating at every element.
fn brute_roots<F: FiniteField>(pr: &PolyRing<F>, f: &Poly<F::Elem>) -> Vec<F::Elem> {
    let k = pr.base();
    let mut v: Vec<F::Elem> = k.elements().into_iter().filter(|a| k.is_zero(&pr.eval(f, a))).collect();
    v.sort();
    v
}

fn check_field<F: FiniteField>(k: F, seed: u64) {
    let pr = PolyRing::new(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..40 {
        let deg = rng.gen_range(1..9);
        let mut f = random_poly(&pr, deg, &mut rng);
        if rng.gen_bool(0.3) {
            // plant a repeated root
            let r = pr.base().random(&mut rng);
            f = pr.mul(&f, &pr.pow(&pr.linear(&r), 2));
        }
        let want = brute_roots(&pr, &f);
        assert_eq!(split_part(&pr, &f).unwrap().deg().unwrap(), want.len());
        let got = roots_in_finite_field(&pr, &f, &mut rng).unwrap();
        let got_roots: Vec<F::Elem> = got.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(got_roots, want);
        let total: usize = got.iter().map(|(_, m)| m).sum();
        assert!(total <= f.deg().unwrap());
        for (r, m) in &got {
            assert!(pr.base().is_zero(&pr.eval(&f, r)));
            let mut g = f.clone();
            for _ in 0..*m {
                g = pr.div_exact(&g, &pr.linear(r)).unwrap();
            }
            assert!(!pr.base().is_zero(&pr.eval(&g, r)));
        }
    }
}

#[test]
fn frobenius_root_counts_match_exhaustive() {
    for p in [2u64, 3, 5, 7, 13, 31, 101, 1021] {
        check_field(Fp::new(p).unwrap(), p);
    }
    for (p, f) in [(2u64, 3u32), (2, 8), (2, 10), (3, 2), (3, 5), (5, 3), (7, 2), (31, 2)] {
        check_field(FiniteFieldExt::find(p, f).unwrap(), p * 100 + f as u64);
    }
}

#[test]
fn extension_fast_path_matches_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, n) in [(2u64, 4u32), (2, 6), (3, 4), (5, 2), (7, 3), (11, 2)] {
        let fp = Fp::new(p).unwrap();
        let pr = PolyRing::new(fp);
        let ext = FiniteFieldExt::find(p, n).unwrap();
        let epr = PolyRing::new(ext.clone());
        for _ in 0..25 {
            let deg = rng.gen_range(1..12);
            let f = random_poly(&pr, deg, &mut rng);
            let fe = pr.map_into(&epr, &f, |c| ext.embed(*c));
            assert_eq!(roots_in_extension(&f, &ext, &mut rng).unwrap(), brute_roots(&epr, &fe));
        }
    }
}

#[test]
fn splitting_is_deterministic_under_seed() {
    let k = FiniteFieldExt::find(3, 7).unwrap();
    let pr = PolyRing::new(k);
    let mut gen = ChaCha8Rng::seed_from_u64(3);
    let f = random_poly(&pr, 12, &mut gen);
    let a = roots_in_finite_field(&pr, &f, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
    let b = roots_in_finite_field(&pr, &f, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn documented_examples() {
    let f5 = PolyRing::new(Fp::new(5).unwrap());
    assert_eq!(f5.gcd(&f5.from_i64s(&[1, 0, 1]), &f5.from_i64s(&[2, 1])), f5.from_i64s(&[2, 1]));
    let f2 = PolyRing::new(Fp::new(2).unwrap());
    let x5 = f2.powmod(&f2.x(), &BigUint::from(5u32), &f2.from_i64s(&[1, 1, 1])).unwrap();
    assert_eq!(x5, f2.from_i64s(&[1, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let k = FiniteFieldExt::find(5, 3).unwrap();
    let pk = PolyRing::new(k.clone());
    let r = roots_in_finite_field(&pk, &pk.linear(&k.one()), &mut rng).unwrap();
    assert_eq!(r, vec![(k.one(), 1)]);
}

proptest! {
    #[test]
    fn karatsuba_matches_schoolbook(a in prop::collection::vec(-1000i64..1000, 0..90),
                                    b in prop::collection::vec(-1000i64..1000, 0..90),
                                    thr in 2usize..40) {
        let pr = PolyRing::with_threshold(Integers, thr);
        let (pa, pb) = (pr.from_i64s(&a), pr.from_i64s(&b));
        prop_assert_eq!(pr.mul(&pa, &pb), pr.mul_schoolbook(&pa, &pb));
    }

    #[test]
    fn cubic_discriminant(a in -50i64..50, b in -50i64..50) {
        let pr = PolyRing::new(Rationals);
        let f = pr.from_i64s(&[b, a, 0, 1]);
        let want = Rational::from(-4 * a * a * a - 27 * b * b);
        prop_assert_eq!(pr.discriminant(&f).unwrap(), want);
    }

    #[test]
    fn divrem_identity(a in prop::collection::vec(-30i64..30, 0..20),
                       b in prop::collection::vec(-30i64..30, 1..8)) {
        let pr = PolyRing::new(Rationals);
        let (pa, pb) = (pr.from_i64s(&a), pr.from_i64s(&b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pr.divrem(&pa, &pb).unwrap();
        prop_assert_eq!(pr.add(&pr.mul(&q, &pb), &r), pa);
        prop_assert!(r.deg().map_or(true, |d| d < pb.deg().unwrap()));
    }

    #[test]
    fn xgcd_bezout(a in prop::collection::vec(-9i64..9, 1..8), b in prop::collection::vec(-9i64..9, 1..8)) {
        let pr = PolyRing::new(Fp::new(101).unwrap());
        let (pa, pb) = (pr.from_i64s(&a), pr.from_i64s(&b));
        prop_assume!(!pa.is_zero() || !pb.is_zero());
        let (g, s, t) = pr.xgcd(&pa, &pb);
        prop_assert_eq!(pr.add(&pr.mul(&s, &pa), &pr.mul(&t, &pb)), g.clone());
        prop_assert_eq!(g, pr.gcd(&pa, &pb));
    }
}

#[test]
fn integer_eval_matches_rational_eval() {
    let zi = PolyRing::new(Integers);
    let f = zi.from_i64s(&[5, -3, 0, 2]);
    assert_eq!(zi.eval(&f, &BigInt::from(-2)), BigInt::from(-5));
}
