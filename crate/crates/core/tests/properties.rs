use proptest::prelude::*;

use multistruct::arith::{int, Monomial, MultiPoly, PolyT, Rational, Var};
use multistruct::chow::{euler_characteristic, BundleClass};
use multistruct::cohomology::{double_conic_chain, h_p1, Assumption, InjectivityCertificate, LinForm};
use multistruct::graded;
use multistruct::integrality::{
    congruence_residues, from_binomial_basis, schwarzenberger_verdict, to_binomial_basis, Conclusion,
};

fn poly_strategy(vars: &'static [&'static str], max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0..=max_deg, vars.len()),
        -12i64..=12,
        1i64..=6,
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(exps, n, d)| {
            let m = Monomial::from_pairs(vars.iter().zip(exps).map(|(v, e)| (Var::new(v), e)));
            (m, Rational::new(n.into(), d.into()))
        }))
    })
}

fn binom(x: i64, n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(x + k) / int(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in poly_strategy(&["x", "y", "z"], 3),
                   b in poly_strategy(&["x", "y", "z"], 3),
                   c in poly_strategy(&["x", "y", "z"], 3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip(a in poly_strategy(&["r", "c1", "t"], 4)) {
        let back: MultiPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn binomial_round_trip(q in poly_strategy(&["t"], 5)) {
        let q = PolyT::new(q);
        let e = to_binomial_basis(&q, 5).unwrap();
        prop_assert_eq!(from_binomial_basis(&e), q);
    }

    #[test]
    fn split_bundles_are_never_excluded(d in proptest::array::uniform3(-4i64..=4)) {
        let b = BundleClass::split_ints(&d, 5).unwrap();
        let v = schwarzenberger_verdict(&b, "split").unwrap();
        prop_assert_eq!(v.conclusion, Conclusion::ExistsCandidate);
    }

    #[test]
    fn split_euler_characteristic(d in proptest::collection::vec(-6i64..=6, 1..4), n in 1usize..=5) {
        let chi = euler_characteristic(&BundleClass::split_ints(&d, n).unwrap());
        for t in -4..=4 {
            let want = d.iter().fold(int(0), |acc, &di| acc + binom(t + di, n as u32));
            prop_assert_eq!(chi.as_poly().eval_at("t", &int(t)).unwrap(), want);
        }
    }

    #[test]
    fn residues_match_direct_evaluation(coeffs in proptest::collection::vec(-50i64..=50, 1..5), m in 2u64..=12) {
        let num = MultiPoly::from_terms(coeffs.iter().enumerate().map(|(k, &c)| {
            (Monomial::from_pairs([(Var::new("r"), k as u32)]), int(c))
        }));
        let set = congruence_residues(&num, m).unwrap();
        for x in 0..m {
            let v: i64 = coeffs.iter().rev().fold(0, |acc, &c| acc * x as i64 + c);
            prop_assert_eq!(set.contains(&x), v.rem_euclid(m as i64) == 0);
        }
    }
}

#[test]
fn expansion_agrees_with_direct_evaluation() {
    let chern = ["r - 3", "(3*r^2 + 9*r + 26)/2", "-2"].map(|s| s.parse::<MultiPoly>().unwrap());
    for r in [-2i64, 0, 1, 5] {
        let classes = chern.iter().map(|c| c.substitute_var("r", &MultiPoly::int(r))).collect();
        let b = BundleClass::new(3, classes, 5).unwrap();
        let chi = euler_characteristic(&b);
        let e = to_binomial_basis(&chi, 5).unwrap();
        for t in -10..10 {
            let direct = chi.as_poly().eval_at("t", &int(t)).unwrap();
            let via = e
                .coeffs
                .iter()
                .enumerate()
                .fold(int(0), |acc, (i, c)| acc + c.value().constant_term() * binom(t, i as u32));
            assert_eq!(via, direct, "r = {r}, t = {t}");
        }
    }
}

#[test]
fn serre_duality_on_p1_symbolic() {
    let a = Assumption::at_least(0);
    for d in [LinForm::new(1, 0), LinForm::new(2, 3), LinForm::new(-1, -2), LinForm::new(-2, -8)] {
        let h = h_p1(d, &a).unwrap();
        let dual = h_p1(-d - LinForm::constant(2), &a).unwrap();
        assert_eq!((h.h0, h.h1), (dual.h1, dual.h0), "O({d})");
    }
}

fn window_certificate() -> InjectivityCertificate {
    graded::certificate_window(0..=6, &graded::default_points()).unwrap()
}

#[test]
fn parametric_and_concrete_chains_agree() {
    let cert = window_certificate();
    let symbolic = double_conic_chain(&Assumption::at_least(1), Some(&cert)).unwrap();
    for r in 1..=6 {
        let fixed = double_conic_chain(&Assumption::fixed(r), Some(&cert)).unwrap();
        for (s, f) in symbolic.displayed.iter().zip(&fixed.displayed) {
            assert_eq!(s.value.eval(r), f.value.eval(r), "{} at r = {r}", s.label);
        }
        assert_eq!(symbolic.tangent.eval(r), fixed.tangent.eval(r));
        assert_eq!(fixed.tangent.eval(r), int(2 * r + 15));
    }
}

#[test]
fn seeded_points_keep_certificates_valid() {
    let mut pts = graded::default_points();
    pts.extend(multistruct::replicate::seeded_points(42, 5));
    for r in [0, 3] {
        let pair = graded::SectionPair::mixed(r).unwrap();
        assert!(graded::injectivity_certificate(r, &[pair], &pts).is_ok());
    }
}
