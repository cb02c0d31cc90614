mod common;

use common::*;
use heyde::charfn::CharFnExpr;
use heyde::constructions::{gaussian_sym_pair, lemma2_construct};
use heyde::finmodel::{charfn_to_pmf, pmf_to_charfn, FiniteModel, Pmf};
use heyde::group::{DualElement, Host, PrimeProfile};
use heyde::value::Cyclo;
use heyde::verify::{
    check_lemma6_implication, lemma8_extract, symmetry_holds_for_gaussians, verify_equation, EquationSpec,
    GridSpec,
};
use heyde::Rational;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| r(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.recip().unwrap(), Rational::one());
        }
        let f = a.fract_mod1();
        prop_assert!(!f.is_negative() && f < Rational::one());
        prop_assert!((f - a).is_integer());
    }

    #[test]
    fn cyclotomic_arithmetic_matches_complex(
        a in (0i64..24, 1i64..24), b in (0i64..24, 1i64..24), s in small_rational()
    ) {
        let x = Cyclo::root_of_unity(&r(a.0, a.1)).scale(&s);
        let y = Cyclo::root_of_unity(&r(b.0, b.1)).add(&Cyclo::rational(s.clone()));
        let exact = x.mul(&y).add(&y.conj()).to_complex();
        let float = x.to_complex() * y.to_complex() + y.to_complex().conj();
        prop_assert!((exact - float).norm() < 1e-9);
        let re = x.add(&x.conj());
        prop_assert!((re.to_complex().im).abs() < 1e-12);
    }

    #[test]
    fn automorphisms_are_multiplicative(m in 1i64..200, n in 1i64..200, mask in 0u8..32) {
        let primes: Vec<u64> = [2u64, 3, 5, 7, 11].iter().enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let profile = PrimeProfile::infinite(&primes).unwrap();
        let aut = |k: i64| profile.is_automorphism(k).unwrap();
        prop_assert_eq!(aut(m * n), aut(m) && aut(n));
        prop_assert_eq!(aut(-m), aut(m));
        let expected = prime_factors(m).iter().all(|p| primes.contains(&(*p as u64)));
        prop_assert_eq!(aut(m), expected);
    }

    #[test]
    fn dual_elements_form_a_group(a in small_rational(), b in small_rational(), k in -5i64..=5, l in -5i64..=5) {
        let host = Host::ha(PrimeProfile::universal());
        let (u, v) = (host.element(a.clone()).unwrap(), host.element(b.clone()).unwrap());
        let w = DualElement::lin(k, &u, l, &v).unwrap();
        prop_assert_eq!(w.value(), &(a.mul_int(k) + b.mul_int(l)));
        prop_assert!(u.sub(&u).unwrap().is_zero());
        let torus = Host::prufer_product(&[2, 3, 5, 7, 11]).unwrap();
        let t = torus.element(r(k, 840)).unwrap();
        prop_assert!(t.value() < &Rational::one() && !t.value().is_negative());
        prop_assert_eq!(t.add(&t.neg()).unwrap(), torus.zero());
    }

    #[test]
    fn two_torsion_pair_holds_for_admissible_q(
        q in prop_oneof![Just(2i64), Just(-2i64), (-20i64..20).prop_map(|m| 4 * m + 3)],
        num in -5i64..=5,
        k in 2u32..=5,
    ) {
        let c = lemma2_construct(q, &r(num, 6)).unwrap();
        let grid = GridSpec::truncation(Host::prufer(2).unwrap(), 1 << k);
        let rep = verify_equation(&c.equation, &c.functions(), &grid, 0.0).unwrap();
        prop_assert!(rep.is_verified(), "q = {q}, c = {num}/6, k = {k}");
    }

    #[test]
    fn gaussian_symmetry_closed_form(p in -9i64..=9, q in -9i64..=9, l1 in 0i64..6, l2 in 0i64..6) {
        prop_assume!(p != 0 && q != 0);
        prop_assert_eq!(
            symmetry_holds_for_gaussians(p, q, &Rational::from_int(l1), &Rational::from_int(l2)),
            l1 * p + l2 * q == 0
        );
        if let Some((a, b)) = gaussian_sym_pair(p, q) {
            prop_assert!(symmetry_holds_for_gaussians(p, q, &a, &b));
            prop_assert!(p * q < 0);
        } else {
            prop_assert!(p * q > 0);
        }
    }

    #[test]
    fn gaussian_symmetry_implies_independence(p in 1i64..=8, q in -8i64..=-1) {
        prop_assume!(gcd(p, q) == 1 && p + q != 0);
        let (a, b) = gaussian_sym_pair(p, q).unwrap();
        let fns = [CharFnExpr::gaussian(a), CharFnExpr::gaussian(b)];
        let grid = GridSpec::boxed(Host::ha(PrimeProfile::universal()), 5, 5);
        let rep = check_lemma6_implication(&fns, p, q, &grid, 0.0).unwrap();
        prop_assert!(rep.premise.is_verified() && rep.conclusion.is_verified());
    }

    #[test]
    fn extraction_recovers_planted_coefficients(l1 in 0i64..12, l2 in 0i64..12, d in 1i64..4) {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3]).unwrap());
        let z = host.element(r(1, 6 * d)).unwrap();
        let rep = lemma8_extract(
            &CharFnExpr::gaussian(r(l1, d)),
            &CharFnExpr::gaussian(r(l2, d)),
            1, 2, &z, 12, 1e-10,
        ).unwrap();
        prop_assert!(rep.accepted);
        prop_assert_eq!(rep.lambda1.exact, Some(r(l1, d)));
        prop_assert_eq!(rep.lambda2.exact, Some(r(l2, d)));
    }

    #[test]
    fn symmetric_pmfs_roundtrip(n in prop_oneof![Just(2u64), Just(3), Just(4), Just(6)], w in prop::collection::vec(0i64..5, 6)) {
        // Symmetrized weights give real, and for these orders rational, transforms.
        let n_us = n as usize;
        let raw: Vec<i64> = (0..n_us).map(|x| w[x] + w[(n_us - x) % n_us] + 1).collect();
        let total: i64 = raw.iter().sum();
        let model = FiniteModel::cyclic(n).unwrap();
        let pmf = Pmf::new(model.clone(), raw.iter().map(|&x| r(x, total)).collect()).unwrap();
        let values = pmf_to_charfn(&pmf);
        let table: Vec<Rational> = values.iter()
            .map(|v| v.exact().and_then(|e| e.as_rational()).expect("rational transform"))
            .collect();
        let host = Host::prufer_product(&prime_factors(n as i64).iter().map(|&p| p as u64).collect::<Vec<_>>()).unwrap();
        let f = CharFnExpr::torsion_extension(host, n, table).unwrap();
        prop_assert_eq!(charfn_to_pmf(&f, &model).unwrap(), pmf);
    }
}

#[test]
fn symmetry_equation_is_invariant_under_swapping_sides() {
    let g = EquationSpec::symmetry(2, 5);
    assert_eq!(g.left.len(), g.right.len());
    for (l, rt) in g.left.iter().zip(&g.right) {
        assert_eq!((l.function, l.u, -l.v), (rt.function, rt.u, rt.v));
    }
}
