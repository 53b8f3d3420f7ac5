use acb_core::families::ExpectedCurvature;
use acb_core::{
    analyze, classify, compute_f_closed_form, compute_f_oracle, construct_class_family,
    random_lie_algebra, BasicClass, FamilySpec, InputDocument, LieAlgebra, Rational, Report,
    Scalar, Tolerance,
};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn class() -> impl Strategy<Value = BasicClass> {
    proptest::sample::select(BasicClass::SUMMANDS.to_vec())
}

fn spec() -> impl Strategy<Value = FamilySpec<Rational>> {
    (class(), nonzero_rational(), rational()).prop_map(|(c, a, b)| {
        let b = if c.has_beta() { b } else { Rational::zero() };
        FamilySpec::new(c, a, b).unwrap()
    })
}

fn exact() -> Tolerance {
    Tolerance::new(0.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_membership_is_its_class(s in spec()) {
        let alg = construct_class_family(&s).unwrap();
        let d = classify(&alg, &exact());
        prop_assert_eq!(d.single_class(), Some(s.class));
        prop_assert_eq!(d.sum(), compute_f_closed_form(&alg));
    }

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let alg = random_lie_algebra(seed, 6).unwrap();
        let doc = InputDocument::from_constants(alg.constants());
        let back = InputDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(&back.to_constants::<Rational>(), alg.constants());
    }

    #[test]
    fn report_round_trip(seed in any::<u64>()) {
        let alg = random_lie_algebra(seed, 4).unwrap();
        let doc = InputDocument::from_constants(alg.constants());
        let rep = Report::build(&doc, &alg, &exact(), true);
        let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
        prop_assert_eq!(back, rep);
    }

    #[test]
    fn random_algebras_satisfy_identities(seed in any::<u64>()) {
        let alg = random_lie_algebra(seed, 6).unwrap();
        prop_assert_eq!(compute_f_closed_form(&alg), compute_f_oracle(&alg));
        let rep = analyze(&alg, &exact());
        prop_assert!(rep.r3_defect.is_zero());
        prop_assert!(rep.symmetry_defect.max().is_zero());
        prop_assert!(rep.connection.torsion_defect(&alg).is_zero());
    }

    #[test]
    fn float_mode_tracks_exact(seed in any::<u64>()) {
        let exact_alg = random_lie_algebra(seed, 4).unwrap();
        let float_alg: LieAlgebra<f64> = exact_alg.map(|q| q.to_f64());
        let e = analyze(&exact_alg, &exact());
        let f = analyze(&float_alg, &Tolerance::default());
        let scale = 1.0 + e.tau.to_f64().abs();
        prop_assert!((e.tau.to_f64() - f.tau).abs() <= 1e-9 * scale);
        prop_assert!((e.tau_star.to_f64() - f.tau_star).abs() <= 1e-9 * scale);
        let (de, df) = (classify(&exact_alg, &exact()), classify(&float_alg, &Tolerance::default()));
        for ((_, a), (_, b)) in de.params.named().into_iter().zip(df.params.named()) {
            prop_assert!((a.to_f64() - b).abs() <= 1e-9 * (1.0 + a.to_f64().abs()));
        }
    }
}

#[test]
fn degenerate_families_are_abelian() {
    for class in BasicClass::SUMMANDS {
        let s = FamilySpec::new(class, Rational::zero(), Rational::zero()).unwrap();
        let alg = construct_class_family(&s).unwrap();
        assert!(alg.constants().as_tensor().max_abs().is_zero(), "{class}");
        let expected: ExpectedCurvature<Rational> = acb_core::families::expected_curvature(&s).unwrap();
        assert!(expected.r.max_abs().is_zero());
    }
}
