//! Property tests over randomized inputs.

use hmdist_core::exterior::PForm;
use hmdist_core::fixtures::{parse_fixture, serialize_fixture, FixtureObject};
use hmdist_core::intersection::{dual, twist, IntersectionClass, SheafClass};
use hmdist_core::multipoly::{MultiPoly, VarSet};
use hmdist_core::rational::{frac, rat, Rat};
use hmdist_core::scalar::Scalar;
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn class_strategy() -> impl Strategy<Value = IntersectionClass> {
    proptest::collection::vec(rat_strategy(), 4).prop_map(|tail| {
        let mut coeffs = vec![rat(1)];
        coeffs.extend(tail);
        IntersectionClass::from_coeffs(4, coeffs)
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        rat_strategy().prop_map(Scalar::from_rat),
        proptest::collection::vec(rat_strategy(), 4).prop_map(|c| Scalar::Cyc([
            c[0].clone(),
            c[1].clone(),
            c[2].clone(),
            c[3].clone()
        ])),
    ]
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0u16..3, 5), scalar_strategy()),
        0..4,
    )
    .prop_map(|terms| {
        let vars = VarSet::projective5();
        let mut p = MultiPoly::zero(&vars);
        for (exps, c) in terms {
            let sparse: Vec<(usize, u16)> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            p = &p + &MultiPoly::monomial(&vars, &sparse, c);
        }
        p
    })
}

fn form_strategy() -> impl Strategy<Value = PForm> {
    proptest::collection::vec((0u8..5, 0u8..5, poly_strategy()), 0..5).prop_map(|terms| {
        let vars = VarSet::projective5();
        let mut f = PForm::new(2, 5, &vars);
        for (a, b, p) in terms {
            if a != b {
                f.add_term(&[a, b], p);
            }
        }
        f
    })
}

proptest! {
    #[test]
    fn intersection_ring_laws(a in class_strategy(), b in class_strategy(), c in class_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, IntersectionClass::one(4));
    }

    #[test]
    fn twist_and_dual_naturality(a in class_strategy(), k1 in -6i64..=6, k2 in -6i64..=6) {
        let s = SheafClass::formal(2, a, "s");
        let double = twist(&twist(&s, k1), k2);
        let joint = twist(&s, k1 + k2);
        prop_assert_eq!(double.chern(), joint.chern());
        let dual_of_twist = dual(&twist(&s, k1));
        let twist_of_dual = twist(&dual(&s), -k1);
        prop_assert_eq!(dual_of_twist.chern(), twist_of_dual.chern());
        let involution = dual(&dual(&s));
        prop_assert_eq!(involution.chern(), s.chern());
    }

    #[test]
    fn fixture_serialization_round_trips(f in form_strategy()) {
        let obj = FixtureObject::Form(f);
        let text = serialize_fixture(&obj, "property round trip");
        let back = parse_fixture(&text).unwrap();
        prop_assert_eq!(obj, back);
    }
}
