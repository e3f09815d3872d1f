use bigmath::{
    euler_phi_u64, is_prime_u64, mult_order, rational_reconstruct, rational_reconstruct_bounds,
    squarefree_part, BigInt, Rational,
};
use proptest::prelude::*;

// Brute-force oracle: every pair |n| ≤ b, 1 ≤ d ≤ b with n ≡ r·d (mod m), reduced.
fn brute_reconstruct(r: i64, m: i64, b: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=b {
        if num_integer::gcd(d, m) != 1 {
            continue;
        }
        for n in -b..=b {
            if (n - r * d).rem_euclid(m) == 0 && num_integer::gcd(n.abs(), d) == 1 {
                out.push(Rational::frac(n, d));
            }
        }
    }
    out
}

#[test]
fn reconstruct_matches_exhaustive_search() {
    for m in [97i64, 101, 128, 221, 1000] {
        let b = ((m / 2) as f64).sqrt() as i64;
        for r in 0..m {
            let got = rational_reconstruct(&BigInt::from(r), &BigInt::from(m), Some(&BigInt::from(b)))
                .unwrap();
            let want = brute_reconstruct(r, m, b);
            assert!(want.len() <= 1, "uniqueness failed for r={r} m={m}");
            assert_eq!(got, want.first().cloned(), "r={r} m={m}");
        }
    }
}

#[test]
fn order_divides_phi_exhaustive() {
    for n in 2u64..200 {
        let phi = euler_phi_u64(n);
        for a in 1..n {
            if num_integer::gcd(a, n) != 1 {
                continue;
            }
            let k = mult_order(&BigInt::from(a), n).unwrap();
            assert_eq!(phi % k, 0);
            // oracle: direct power enumeration
            let mut x = a % n;
            let mut e = 1;
            while x != 1 {
                x = x * a % n;
                e += 1;
            }
            assert_eq!(k, e, "a={a} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn reconstruct_round_trip(n in -10_000i64..10_000, d in 1i64..10_000, extra in 0u32..64) {
        let m = BigInt::from(2) * BigInt::from(10_000) * BigInt::from(10_000) + BigInt::from(extra) + 1;
        let r0 = Rational::frac(n, d);
        let dd = r0.denom().clone();
        prop_assume!(num_integer::Integer::gcd(&dd, &m) == BigInt::from(1));
        let inv = num_integer::Integer::extended_gcd(&dd, &m).x;
        let res = r0.numer() * inv;
        let got = rational_reconstruct_bounds(&res, &m, &BigInt::from(10_000), &BigInt::from(10_000)).unwrap();
        prop_assert_eq!(got, Some(r0));
    }

    #[test]
    fn squarefree_part_properties(n in -1_000_000i64..1_000_000) {
        prop_assume!(n != 0);
        let n = BigInt::from(n);
        let s = squarefree_part(&n).unwrap();
        let q = &n / &s;
        prop_assert_eq!(&q * &s, n.clone());
        prop_assert_eq!(q.sqrt().pow(2), q);
        prop_assert_eq!(squarefree_part(&s).unwrap(), s.clone());
        prop_assert_eq!(s.sign(), n.sign());
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..100_000) {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime_u64(n), trial);
    }
}

#[test]
fn rational_json_accepts_strings_and_integers() {
    let v: Vec<Rational> = serde_json::from_str(r#"["-75/242", 3, "6/4", -2]"#).unwrap();
    assert_eq!(v, vec![Rational::frac(-75, 242), Rational::from_int(3), Rational::frac(3, 2), Rational::from_int(-2)]);
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"["-75/242","3","3/2","-2"]"#);
    assert!(serde_json::from_str::<Rational>(r#""1/0""#).is_err());
    assert!(serde_json::from_str::<Rational>("1.5").is_err());
}
