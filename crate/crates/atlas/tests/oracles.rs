use atlas::{
    allowed_groups, dataset, gate_table, isogeny_kernel_field, jkl_curve_10, jkl_curve_12, orbit_degree_divides,
    snapshot, snapshot_lookup, verify_dataset, AtlasError, Check, GateTable, KernelOptions, Status, VerifyOptions,
};
use bigmath::{squarefree_part, Rational};
use ellcurve::{division_poly, CurveModel, Point};
use num_bigint::BigInt;
use numberfield::{DedekindVerdict, FieldSpec, NumberField};
use polyring::Ring;
use proptest::prelude::*;
use torsion::{primary_count, TorsionOptions};

fn field(s: &str) -> NumberField {
    NumberField::new(s.parse().unwrap()).unwrap()
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn rational_list() -> Vec<[u64; 2]> {
    let mut v: Vec<[u64; 2]> = (1..=10).map(|n| [1, n]).collect();
    v.push([1, 12]);
    v.extend((1..=4).map(|n| [2, 2 * n]));
    v
}

#[test]
fn gate_for_23_adds_three_groups() {
    let r = allowed_groups(23).unwrap();
    assert_eq!(r.gate, "no-3-4-5");
    let mut groups: Vec<[u64; 2]> = r.groups.iter().map(|g| g.group).collect();
    groups.sort();
    let mut expected = rational_list();
    expected.extend([[2, 10], [2, 12], [1, 16]]);
    expected.sort();
    assert_eq!(groups, expected);
    assert_eq!(r.groups.len(), 18);
}

#[test]
fn gate_for_11_has_side_condition() {
    let r = allowed_groups(11).unwrap();
    assert_eq!(r.gate, "no-3-4");
    let z11 = r.groups.iter().find(|g| g.group == [1, 11]).unwrap();
    assert_eq!(z11.only_p, Some(11));
    for g in [[1, 16], [1, 25], [2, 10], [2, 12]] {
        assert!(r.groups.iter().any(|a| a.group == g && a.only_p.is_none()));
    }
    assert_eq!(r.groups.len(), 20);
}

#[test]
fn gate_selection_by_divisibility() {
    assert_eq!(allowed_groups(13).unwrap().gate, "general");
    assert_eq!(allowed_groups(7).unwrap().gate, "general");
    assert_eq!(allowed_groups(5).unwrap().gate, "no-3");
    assert_eq!(allowed_groups(41).unwrap().gate, "no-3");
    assert_eq!(allowed_groups(59).unwrap().gate, "no-3-4-5");
    assert!(matches!(allowed_groups(3), Err(AtlasError::Domain(_))));
    assert!(matches!(allowed_groups(2), Err(AtlasError::Domain(_))));
    assert!(matches!(allowed_groups(9), Err(AtlasError::Domain(_))));
}

#[test]
fn side_conditions_are_enforced() {
    let t = gate_table();
    assert!(t.is_allowed(11, [1, 11]).unwrap());
    assert!(!t.is_allowed(23, [1, 11]).unwrap());
    assert!(t.is_allowed(7, [1, 14]).unwrap());
    assert!(!t.is_allowed(13, [1, 14]).unwrap());
    assert!(t.is_allowed(5, [5, 5]).unwrap());
    assert!(!t.is_allowed(7, [1, 15]).unwrap());
    assert!(t.is_allowed(19, [1, 19]).unwrap());
    assert!(!t.is_allowed(23, [1, 13]).unwrap());
    assert!(t.is_allowed(23, [2, 8]).unwrap());
    assert!(!t.is_allowed(13, [1, 17]).unwrap());
    assert!(t.in_master_list([1, 37]));
    assert!(!t.in_master_list([1, 20]));
}

#[test]
fn broken_nesting_is_rejected() {
    let mut t: serde_json::Value = serde_json::to_value(gate_table()).unwrap();
    t["gates"][0]["exceptional"].as_array_mut().unwrap().push(serde_json::json!({ "group": [1, 20] }));
    assert!(GateTable::parse(&t.to_string()).is_err());
    // Dropping Z/16 from the second gate breaks containment of the first.
    let mut t: serde_json::Value = serde_json::to_value(gate_table()).unwrap();
    let mut g1 = t["gates"][1]["exceptional"].as_array().unwrap().clone();
    g1.retain(|e| e["group"] != serde_json::json!([1, 16]));
    t["gates"][1]["exceptional"] = g1.into();
    assert!(GateTable::parse(&t.to_string()).is_err());
}

#[test]
fn jkl10_examples() {
    let c = jkl_curve_10(&q("-75/242")).unwrap();
    assert_eq!(c.d, BigInt::from(-59));
    let c = jkl_curve_10(&q("2")).unwrap();
    assert_eq!(c.d_value, Rational::from_int(33));
    assert_eq!(c.d, BigInt::from(33));
    for t in ["0", "1/2", "1"] {
        assert!(matches!(jkl_curve_10(&q(t)), Err(AtlasError::Domain(_))));
    }
}

#[test]
fn jkl12_examples() {
    let c = jkl_curve_12(&q("248354/307104")).unwrap();
    assert_eq!(c.d, BigInt::from(-47));
    let c = jkl_curve_12(&q("3")).unwrap();
    assert_eq!(c.d_value, q("2/3"));
    assert_eq!(c.d, BigInt::from(6));
    for t in ["-1", "0", "1"] {
        assert!(matches!(jkl_curve_12(&q(t)), Err(AtlasError::Domain(_))));
    }
}

/// Rational roots of an integer polynomial by the rational root test.
fn rational_roots(c: &[BigInt]) -> Vec<Rational> {
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.magnitude().clone();
        let mut out = Vec::new();
        let mut d = num_bigint::BigUint::from(1u32);
        while &d * &d <= n {
            if (&n % &d) == num_bigint::BigUint::from(0u32) {
                out.push(BigInt::from(d.clone()));
                out.push(BigInt::from(&n / &d));
            }
            d += 1u32;
        }
        out
    };
    let mut c = c.to_vec();
    let mut roots = Vec::new();
    while c[0] == BigInt::from(0) {
        roots.push(Rational::zero());
        c.remove(0);
    }
    for p in divisors(&c[0]) {
        for qd in divisors(c.last().unwrap()) {
            for s in [1, -1] {
                let r = Rational::new(&p * s, qd.clone()).unwrap();
                let v = c.iter().rev().fold(Rational::zero(), |acc, a| acc * r.clone() + Rational::from(a.clone()));
                if v.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[test]
fn kernel_over_q_matches_rational_root_test() {
    let e = CurveModel::short_ab(0, 1).unwrap();
    for ell in [3u64, 5, 7] {
        let r = isogeny_kernel_field(&e, ell, &field("Q"), &KernelOptions::default()).unwrap();
        let s = e.short_form();
        let psi = division_poly(&s.a, &s.b, ell as u32, 40).unwrap();
        let expected = rational_roots(psi.coeffs());
        let mut got: Vec<Rational> = r.orbits.iter().flat_map(|o| o.roots.iter().map(|x| x.coords[0].clone())).collect();
        got.sort();
        assert_eq!(got, expected, "ℓ = {ell}");
        assert_eq!(r.has_root, !expected.is_empty());
    }
}

#[test]
fn kernel_field_for_121c1() {
    let e = snapshot_lookup("121.c1").unwrap().curve().unwrap();
    let r = isogeny_kernel_field(&e, 11, &field("cyclo:11"), &KernelOptions::default()).unwrap();
    assert!(r.has_root);
    assert_eq!(r.orbits.len(), 1);
    let o = &r.orbits[0];
    assert_eq!(o.orbit_degree, 5);
    assert_eq!(o.roots.len(), 5);
    assert_eq!(o.verdict(11), Some(DedekindVerdict::Ramified));
    assert_eq!(o.verdict(2), Some(DedekindVerdict::Unramified));
    let none = isogeny_kernel_field(&e, 11, &field("cyclo:5"), &KernelOptions::default()).unwrap();
    assert!(!none.has_root);
}

#[test]
fn kernel_field_rejections() {
    let e = snapshot_lookup("14450.b2").unwrap().curve().unwrap();
    let k = field("cyclo:5");
    let small = KernelOptions { cap: 13, ..Default::default() };
    assert!(matches!(isogeny_kernel_field(&e, 17, &k, &small), Err(AtlasError::Resource(_))));
    let r = isogeny_kernel_field(&e, 17, &k, &KernelOptions::default()).unwrap();
    assert!(!r.has_root);
    assert!(matches!(isogeny_kernel_field(&e, 9, &k, &KernelOptions::default()), Err(AtlasError::Domain(_))));
    assert!(matches!(isogeny_kernel_field(&e, 2, &k, &KernelOptions::default()), Err(AtlasError::Domain(_))));
}

/// j-invariants of the isogeny curves as listed for each labeled row.
const LISTED_J: &[(&str, &str)] = &[
    ("121.c1", "-24729001"),
    ("121.b2", "-32768"),
    ("121.a1", "-121"),
    ("49.a2", "-3375"),
    ("49.a1", "16581375"),
    ("50.a3", "-25/2"),
    ("450.g1", "-349938025/8"),
    ("50.b3", "-121945/32"),
    ("50.b4", "46969655/32768"),
    ("14450.b2", "-297756989/2"),
    ("14450.o2", "-882216989/131072"),
    ("361.a2", "-884736"),
    ("162.c3", "-140625/8"),
    ("162.b4", "3375/2"),
    ("162.c2", "-1159088625/2097152"),
    ("162.b1", "-189613868625/128"),
    ("27.a2", "-12288000"),
    ("1225.b2", "-9317"),
    ("1225.b1", "-162677523113838677"),
    ("1849.b2", "-884736000"),
    ("4489.b2", "-147197952000"),
    ("26569.a2", "-262537412640768000"),
];

#[test]
fn snapshot_matches_listed_j_invariants() {
    for (label, j) in LISTED_J {
        let e = snapshot_lookup(label).unwrap().curve().unwrap();
        assert_eq!(e.j_invariant(), &q(j), "{label}");
    }
    // Products of the listed factorizations.
    assert_eq!(q("-24729001"), Rational::from_int(-11 * 131i64.pow(3)));
    assert_eq!(q("-162677523113838677"), Rational::from_int(-7 * 137i64.pow(3) * 2083i64.pow(3)));
}

#[test]
fn snapshot_conductors_match_bad_primes() {
    for c in &snapshot().curves {
        let e = c.curve().unwrap();
        let disc = e.discriminant();
        assert!(disc.is_integer(), "{}", c.label);
        let mut bad: Vec<u64> = bigmath::factor(&disc.numer().magnitude().clone())
            .into_iter()
            .map(|(p, _)| p.try_into().unwrap())
            .collect();
        bad.sort();
        let from_n: Vec<u64> = bigmath::factor_u64(c.conductor).into_iter().map(|(p, _)| p).collect();
        assert_eq!(bad, from_n, "{}", c.label);
    }
}

#[test]
fn dataset_claims_are_well_formed() {
    let d = dataset();
    for r in &d.records {
        let e = r.curve().unwrap();
        assert!(!e.discriminant().is_zero());
        for c in &r.claims {
            match &c.check {
                Check::Unverifiable { field, .. } => {
                    // Composite conductors are not constructible; the prime ones are far too large to search.
                    let usable = field.parse::<FieldSpec>().ok().and_then(|s| NumberField::new(s).ok());
                    assert!(usable.map_or(true, |k| k.degree() > 40), "{field}");
                }
                Check::Group { field, .. } | Check::Point { field, .. } | Check::Kernel { field, .. } => {
                    NumberField::new(field.clone()).unwrap();
                }
                _ => {}
            }
        }
    }
    let err = dataset().suite_claims("nonexistent-suite").unwrap_err();
    assert!(matches!(err, AtlasError::Domain(ref m) if m.contains("realizations-small")));
    assert!(matches!(verify_dataset("nonexistent-suite", &VerifyOptions::default()), Err(AtlasError::Domain(_))));
    assert_eq!(dataset().suite_claims("realizations-small").unwrap().len(), 8);
    assert_eq!(dataset().suite_claims("lemma-17-37").unwrap().len(), 8);
    assert_eq!(dataset().suite_claims("kernel-fields").unwrap().len(), 12);
}

#[test]
fn jkl_suite_passes_and_is_order_stable() {
    let one = verify_dataset("jkl", &VerifyOptions { jobs: 1, ..Default::default() }).unwrap();
    assert!(one.passed(), "{}", one.to_table());
    assert_eq!(one.summary.pass, 4);
    let two = verify_dataset("jkl", &VerifyOptions { jobs: 2, ..Default::default() }).unwrap();
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&two).unwrap());
}

#[test]
fn stretch_claims_skip_by_default() {
    let r = verify_dataset("stretch", &VerifyOptions::default()).unwrap();
    assert!(r.claims.iter().all(|c| c.status == Status::Skip));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jkl10_members_have_rational_10_torsion(n in -40i64..40, m in 1i64..40) {
        let t = Rational::frac(n, m);
        prop_assume!(jkl_curve_10(&t).is_ok());
        let c = jkl_curve_10(&t).unwrap();
        let e = c.curve.over(&field("Q"));
        let k = field("Q");
        let origin = Point::Affine(k.zero(), k.zero());
        prop_assert_eq!(e.order_upto(&origin, 20), Some(10));
        // Q(E[2]) = Q(√d): the discriminant has squarefree part d.
        let disc = c.curve.discriminant();
        prop_assert_eq!(squarefree_part(&(disc.numer() * disc.denom())).unwrap(), c.d.clone());
    }

    #[test]
    fn jkl12_members_have_rational_6_torsion(n in -40i64..40, m in 1i64..40) {
        let t = Rational::frac(n, m);
        prop_assume!(jkl_curve_12(&t).is_ok());
        let c = jkl_curve_12(&t).unwrap();
        let e = c.curve.over(&field("Q"));
        let k = field("Q");
        let origin = Point::Affine(k.zero(), k.zero());
        // Over Q the point (0,0) has order 6; order 12 appears only over Q(√d).
        prop_assert_eq!(e.order_upto(&origin, 24), Some(6));
        let (num, den) = c.d_value.clone().into_parts();
        prop_assert_eq!(squarefree_part(&(num * den)).unwrap(), c.d.clone());
    }

    #[test]
    fn family_twist_identity_on_odd_part(n in 1i64..12, m in 1i64..12, which in 0usize..2) {
        let t = Rational::frac(n, m);
        let fam = if which == 0 { jkl_curve_10(&t) } else { jkl_curve_12(&t) };
        prop_assume!(fam.is_ok());
        let c = fam.unwrap();
        let ell = if which == 0 { 5 } else { 3 };
        let opts = TorsionOptions::default();
        let s = c.curve.short_form();
        let kd = NumberField::quadratic_or_rational(&c.d).unwrap();
        let big = primary_count(&s.a, &s.b, &kd, ell, 1, &opts).unwrap().counts.last().copied().unwrap();
        let base = primary_count(&s.a, &s.b, &field("Q"), ell, 1, &opts).unwrap().counts.last().copied().unwrap();
        let tw = c.curve.quadratic_twist(&c.d).unwrap();
        let ts = tw.short_form();
        let twist = primary_count(&ts.a, &ts.b, &field("Q"), ell, 1, &opts).unwrap().counts.last().copied().unwrap();
        prop_assert_eq!(big, base * twist);
    }

    #[test]
    fn orbit_degrees_divide_galois_order(a in -6i64..6, b in -6i64..6, idx in 0usize..3) {
        let e = CurveModel::short_ab(a, b);
        prop_assume!(e.is_ok());
        let e = e.unwrap();
        let ell = [3u64, 5, 7][idx];
        let k = NumberField::new(FieldSpec::cyclotomic(ell)).unwrap();
        let r = isogeny_kernel_field(&e, ell, &k, &KernelOptions::default()).unwrap();
        for o in &r.orbits {
            prop_assert!(orbit_degree_divides(&k, o.orbit_degree));
            prop_assert_eq!((ell as usize - 1) % o.orbit_degree, 0);
        }
    }
}
