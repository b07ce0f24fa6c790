use proptest::prelude::*;

use socrit::{
    is_critical_twisted, ratio_argument_map, RootSystem, SoWeight, TwistData, Weight, WeylElement,
};

/// Random element of W(D_r): a shuffled permutation with an even flip pattern.
fn weyl_element(rank: usize) -> impl Strategy<Value = WeylElement> {
    (
        Just((0..rank).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), rank),
    )
        .prop_map(|(perm, mut flips)| {
            if flips.iter().filter(|&&f| f).count() % 2 == 1 {
                flips[0] = !flips[0];
            }
            WeylElement::new(perm, flips).unwrap()
        })
}

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-20i64..=20, rank).prop_map(Weight::new)
}

fn so_weight() -> impl Strategy<Value = SoWeight> {
    (
        1usize..=4,
        prop::collection::vec(0i64..=12, 8),
        any::<bool>(),
    )
        .prop_map(|(half, raw, neg)| {
            let n = 2 * half;
            let mut coords: Vec<i64> = raw[..n].to_vec();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            if neg {
                coords[n - 1] = -coords[n - 1];
            }
            SoWeight::new(Weight::new(coords)).unwrap()
        })
}

fn group_case() -> impl Strategy<Value = (usize, WeylElement, WeylElement, Weight)> {
    (2usize..=9).prop_flat_map(|r| (Just(r), weyl_element(r), weyl_element(r), weight(r)))
}

proptest! {
    #[test]
    fn dot_action_is_a_group_action((r, a, b, lambda) in group_case()) {
        let rs = RootSystem::new(r).unwrap();
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(
            rs.dot_action(&ab, &lambda).unwrap(),
            rs.dot_action(&a, &rs.dot_action(&b, &lambda).unwrap()).unwrap()
        );
        let back = rs.dot_action(&a.inverse(), &rs.dot_action(&a, &lambda).unwrap()).unwrap();
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn length_is_inversion_count((r, a, b, _l) in group_case()) {
        let rs = RootSystem::new(r).unwrap();
        prop_assert_eq!(a.length(), rs.inversion_count(&a).unwrap());
        prop_assert_eq!(a.length(), a.inverse().length());
        // subadditivity
        prop_assert!(a.compose(&b).unwrap().length() <= a.length() + b.length());
    }

    #[test]
    fn json_roundtrip((_r, a, _b, _l) in group_case()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<WeylElement>(&s).unwrap(), a);
    }

    #[test]
    fn dominance_matches_chain(lambda in (2usize..=7).prop_flat_map(weight)) {
        let rs = RootSystem::new(lambda.rank()).unwrap();
        prop_assert_eq!(rs.is_dominant(&lambda).unwrap(), lambda.satisfies_type_d_chain());
    }

    #[test]
    fn twist_covariance(w in so_weight(), s in -40i64..=40, d in -40i64..=40, c in -40i64..=40) {
        prop_assert_eq!(
            is_critical_twisted(s, &TwistData::new(d), &w),
            is_critical_twisted(s + c, &TwistData::new(d + c), &w)
        );
    }

    #[test]
    fn ratio_map_iff_both_arguments_critical(w in so_weight(), d in -40i64..=40) {
        let n = w.n() as i64;
        let t = TwistData::new(d);
        let both = is_critical_twisted(-n, &t, &w) && is_critical_twisted(1 - n, &t, &w);
        prop_assert_eq!(ratio_argument_map(&t, &w).is_some(), both);
    }
}
