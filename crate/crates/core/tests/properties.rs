use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use proptest::prelude::*;

use dioph_core::param::{self, FamilyParams, TripleParams};
use dioph_core::rational::{solve_quadratic, Rational};
use dioph_core::tuple::{
    classify_elements, combinations, extend_quadruple_regular, extend_triple_regular,
    is_regular_quadruple, quadruple_extension_coefficients, quintuple_condition, set_eq,
    verify_tuple, DioTuple, QUINTUPLE_SPLITS,
};

fn rat(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    rat(max_num, max_den).prop_filter("nonzero", |r| !r.is_zero())
}

fn triple_params() -> impl Strategy<Value = TripleParams> {
    (nonzero(12, 9), nonzero(12, 9), nonzero(12, 9))
        .prop_map(|(a, b, c)| TripleParams::new(a, b, c))
}

fn hash_of(r: &Rational) -> u64 {
    let mut h = DefaultHasher::new();
    r.hash(&mut h);
    h.finish()
}

proptest! {
    #[test]
    fn sqrt_exact_is_a_nonnegative_root(q in rat(10_000, 10_000)) {
        if let Some(r) = q.sqrt_exact() {
            prop_assert!(!r.is_negative());
            prop_assert_eq!(r.square(), q);
        }
    }

    #[test]
    fn squares_have_their_root(x in rat(100_000, 100_000)) {
        prop_assert_eq!(x.square().sqrt_exact(), Some(x.abs()));
    }

    #[test]
    fn sqrt_multiplicative_on_squares(x in nonzero(1000, 1000), q in rat(500, 500)) {
        let s = x.square();
        prop_assert_eq!((&s * &q).sqrt_exact().is_some(), q.sqrt_exact().is_some());
    }

    #[test]
    fn solve_quadratic_finds_planted_roots(r1 in rat(40, 20), r2 in rat(40, 20), k in nonzero(9, 5)) {
        // k (x - r1)(x - r2)
        let b = -(&k) * (&r1 + &r2);
        let c = &k * &r1 * &r2;
        let roots = solve_quadratic(&k, &b, &c).unwrap();
        let mut expected = vec![r1.clone(), r2.clone()];
        expected.sort();
        expected.dedup();
        prop_assert_eq!(roots, expected);
    }

    #[test]
    fn solve_quadratic_roots_are_roots(a in rat(30, 6), b in rat(30, 6), c in rat(30, 6)) {
        if let Ok(roots) = solve_quadratic(&a, &b, &c) {
            for x in roots {
                prop_assert!((&a * x.square() + &b * &x + &c).is_zero());
            }
        }
    }

    #[test]
    fn canonical_form(n in -500i64..500, d in 1i64..500, k in 1i64..50) {
        let a = Rational::new(n, d);
        let b = Rational::new(n * k, d * k);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(hash_of(&a), hash_of(&b));
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn regular_quadruple_is_order_free(v in proptest::array::uniform4(rat(20, 9))) {
        let reference = is_regular_quadruple(&v[0], &v[1], &v[2], &v[3]);
        for p in permutations4() {
            prop_assert_eq!(is_regular_quadruple(&v[p[0]], &v[p[1]], &v[p[2]], &v[p[3]]), reference);
        }
    }

    #[test]
    fn regular_quadruples_from_extension_are_order_free(p in triple_params()) {
        let Ok(t) = param::lasic_triple(&p) else { return Ok(()) };
        let Ok([d, _]) = extend_triple_regular(&t[0], &t[1], &t[2]) else { return Ok(()) };
        let v = [t[0].clone(), t[1].clone(), t[2].clone(), d];
        for p in permutations4() {
            prop_assert!(is_regular_quadruple(&v[p[0]], &v[p[1]], &v[p[2]], &v[p[3]]));
        }
    }

    #[test]
    fn triple_extensions_are_regular_quadruples(p in triple_params()) {
        let Ok([a, b, c]) = param::lasic_triple(&p) else { return Ok(()) };
        let roots = extend_triple_regular(&a, &b, &c).unwrap();
        for d in roots {
            let quad = [a.clone(), b.clone(), c.clone(), d.clone()];
            if d.is_zero() || quad[..3].contains(&d) {
                continue;
            }
            prop_assert!(DioTuple::new(&quad).unwrap().is_diophantine());
            prop_assert!(is_regular_quadruple(&a, &b, &c, &d));
        }
    }

    #[test]
    fn quadruple_extensions_satisfy_the_quintuple_condition(p in triple_params()) {
        let Ok([a, b, c]) = param::lasic_triple(&p) else { return Ok(()) };
        let Ok([d, _]) = param::regular_pair_from_params(&p) else { return Ok(()) };
        if d.is_zero() || [&a, &b, &c].contains(&&d) {
            return Ok(());
        }
        let Ok(roots) = extend_quadruple_regular(&a, &b, &c, &d) else { return Ok(()) };
        let (qa, qb, qc) = quadruple_extension_coefficients(&a, &b, &c, &d);
        for e in roots {
            prop_assert!((&qa * e.square() + &qb * &e + &qc).is_zero());
            prop_assert!(quintuple_residual(&a, &b, &c, &d, &e).is_zero());
            prop_assert!(quintuple_condition(&a, &b, &c, &d, &e));
        }
    }

    #[test]
    fn lasic_triples_have_square_witnesses(p in triple_params()) {
        let Ok([a1, a2, a3]) = param::lasic_triple(&p) else { return Ok(()) };
        let one = Rational::one();
        for (x, y) in [(&a1, &a2), (&a1, &a3), (&a2, &a3)] {
            prop_assert!((x * y + &one).is_square());
        }
        let (rn, rd) = param::formulas::lasic_r(&p.t1, &p.t2, &p.t3);
        prop_assert_eq!((rn / rd).square(), &a1 * &a2 + &one);
    }

    #[test]
    fn lasic_inverse_round_trip(p in triple_params(), signs in 0u8..8) {
        let Ok([a1, a2, a3]) = param::lasic_triple(&p) else { return Ok(()) };
        let one = Rational::one();
        let root = |x: &Rational, y: &Rational, neg: bool| {
            let r = (x * y + &one).sqrt_exact().unwrap();
            if neg { -r } else { r }
        };
        let r = root(&a1, &a2, signs & 1 != 0);
        let s = root(&a1, &a3, signs & 2 != 0);
        let w = root(&a2, &a3, signs & 4 != 0);
        let Ok(back) = param::lasic_inverse(&a1, &a2, &a3, &r, &s, &w) else { return Ok(()) };
        let Ok(again) = param::lasic_values(&back) else { return Ok(()) };
        prop_assert_eq!(again, [a1, a2, a3]);
        let t = (&w - &one) / (&s - &one);
        prop_assert_eq!(-(&back.t2 * &back.t3), t);
    }

    #[test]
    fn regular_pair_matches_roots(p in triple_params()) {
        let Ok([a, b, c]) = param::lasic_triple(&p) else { return Ok(()) };
        let pair = param::regular_pair_from_params(&p).unwrap();
        let roots = extend_triple_regular(&a, &b, &c).unwrap();
        prop_assert!(set_eq(&pair, &roots));
    }

    #[test]
    fn p_poly_tracks_a4a5_condition(p in triple_params()) {
        let Ok([a4, a5]) = param::regular_pair_from_params(&p) else { return Ok(()) };
        let cond = &a4 * &a5 + Rational::one();
        let poly = param::p_poly(&p);
        prop_assert!(!(&poly * &cond).is_negative());
        if !cond.is_zero() && !poly.is_zero() {
            prop_assert!((poly / cond).is_square());
        }
    }

    #[test]
    fn p1_vanishes_on_the_substitution(u in nonzero(60, 60)) {
        let Ok((t2, t3)) = param::params_from_u(&u) else { return Ok(()) };
        prop_assert!(param::p1_poly(&t2, &t3).is_zero());
    }

    #[test]
    fn classification_matches_direct_enumeration(v in proptest::collection::vec(nonzero(30, 12), 4..7)) {
        check_classification(&v)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_members_are_sextuples(u in nonzero(40, 40)) {
        let Ok(values) = param::sextuple_of_u(&u) else { return Ok(()) };
        prop_assert!(verify_tuple(&values).unwrap().is_diophantine());
        let profile = classify_elements(&values);
        prop_assert!(profile.has_quadruple([0, 1, 2, 3]));
        prop_assert!(profile.has_quadruple([0, 1, 2, 4]));
        prop_assert!(profile.has_quintuple([0, 2, 3, 4, 5]));
        check_classification(&values)?;
    }

    #[test]
    fn pipeline_agrees_with_display(u in nonzero(40, 40)) {
        let Ok(display) = param::sextuple_of_u(&u) else { return Ok(()) };
        prop_assert_eq!(param::sextuple_from(&FamilyParams::one_parameter(u)).unwrap(), display);
    }
}

fn check_classification(v: &[Rational]) -> Result<(), TestCaseError> {
    let profile = classify_elements(v);
    let quads: Vec<[usize; 4]> = combinations::<4>(v.len())
        .into_iter()
        .filter(|i| is_regular_quadruple(&v[i[0]], &v[i[1]], &v[i[2]], &v[i[3]]))
        .collect();
    prop_assert_eq!(&profile.regular_quadruples, &quads);
    let mut quints = Vec::new();
    for idx in combinations::<5>(v.len()) {
        let splits: Vec<[usize; 2]> = QUINTUPLE_SPLITS
            .iter()
            .filter(|[d, e]| {
                let abc: Vec<usize> = (0..5).filter(|k| k != d && k != e).collect();
                quintuple_residual(
                    &v[idx[abc[0]]],
                    &v[idx[abc[1]]],
                    &v[idx[abc[2]]],
                    &v[idx[*d]],
                    &v[idx[*e]],
                )
                .is_zero()
            })
            .map(|&[d, e]| [idx[d], idx[e]])
            .collect();
        if !splits.is_empty() {
            quints.push((idx, splits));
        }
    }
    let got: Vec<_> = profile
        .regular_quintuples
        .iter()
        .map(|h| (h.indices, h.splits.clone()))
        .collect();
    prop_assert_eq!(got, quints);
    prop_assert_eq!(
        profile.is_diophantine,
        verify_tuple(v).unwrap().is_diophantine()
    );
    Ok(())
}

/// `(abcde + 2abc + a + b + c − d − e)² − 4(ab+1)(ac+1)(bc+1)(de+1)`, written out
/// independently of the library.
fn quintuple_residual(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
) -> Rational {
    let one = Rational::one();
    let abc = a * b * c;
    let s = &abc * d * e + &abc + &abc + a + b + c - d - e;
    s.square()
        - Rational::from(4) * (a * b + &one) * (a * c + &one) * (b * c + &one) * (d * e + &one)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
