use gaugesplit::classifier::{classify, count_types, rule_for, Answer, ClassBase, LieGroup, Scope};
use gaugesplit::homology::{homology_of_manifold, AbelianGroup};
use gaugesplit::manifold::{connected_sum, CyclicFactor, ManifoldSpec, Pi1Descriptor};
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = ManifoldSpec> {
    (
        0u32..=5,
        prop::collection::vec((prop::sample::select(vec![3u64, 5, 7, 11]), 1u32..=3), 0..=4),
        0u32..=6,
        any::<bool>(),
    )
        .prop_map(|(m, cyc, b2, flag)| {
            let cyc = cyc.into_iter().map(|(p, r)| CyclicFactor::new(p, r).unwrap()).collect();
            ManifoldSpec::new(Pi1Descriptor::new(m, cyc), b2, flag || b2 == 0)
        })
}

fn arb_group() -> impl Strategy<Value = LieGroup> {
    prop_oneof![
        (2u32..=7).prop_map(LieGroup::SU),
        (2u32..=4).prop_map(LieGroup::Sp),
        Just(LieGroup::G2)
    ]
}

proptest! {
    #[test]
    fn euler_characteristic(s in arb_spec()) {
        let m = i64::from(s.pi1.free_rank());
        prop_assert_eq!(homology_of_manifold(&s).euler_characteristic(), 2 - 2 * m + i64::from(s.b2));
    }

    #[test]
    fn duality_profile(s in arb_spec()) {
        let h = homology_of_manifold(&s);
        let m = s.pi1.free_rank();
        prop_assert_eq!(h.get(0), &AbelianGroup::free(1));
        prop_assert_eq!(h.get(4), &AbelianGroup::free(1));
        prop_assert_eq!(h.get(3), &AbelianGroup::free(m));
        prop_assert_eq!(h.get(1).free_rank, m);
        prop_assert_eq!(h.get(2).free_rank, s.b2);
        prop_assert_eq!(h.get(1).torsion(), h.get(2).torsion());
        let order: u64 = h.get(1).torsion().iter().product();
        let want: u64 = s.pi1.cyclic_factors().iter().map(|c| c.order()).product();
        prop_assert_eq!(order, want);
    }

    #[test]
    fn homology_is_additive_under_connected_sum(a in arb_spec(), b in arb_spec()) {
        let sum = connected_sum(&a, &b).unwrap();
        let (ha, hb, hs) = (homology_of_manifold(&a), homology_of_manifold(&b), homology_of_manifold(&sum));
        for deg in 1..=3 {
            prop_assert_eq!(hs.get(deg), &ha.get(deg).direct_sum(hb.get(deg)));
        }
    }

    #[test]
    fn classify_negation_and_periodicity(
        g in arb_group(),
        s in arb_spec(),
        t in -300i64..300,
        u in -300i64..300,
    ) {
        let primes = [2, 3, 5, 7, 11];
        let base = classify(g, &s, t, u, &primes).unwrap();
        prop_assert_eq!(&classify(g, &s, -t, u, &primes).unwrap(), &base);
        prop_assert_eq!(&classify(g, &s, u, t, &primes).unwrap(), &base);
        if let Some(rule) = rule_for(g, ClassBase::Manifold { spin: s.sigma_f_trivial }) {
            let k = rule.modulus as i64;
            let shifted = classify(g, &s, t + k, u, &primes).unwrap();
            if rule.scope == Scope::Integral {
                prop_assert_eq!(shifted.integral, base.integral);
            }
            for p in primes {
                if rule.scope.covers(p) {
                    prop_assert_eq!(shifted.local[&p], base.local[&p]);
                }
            }
        } else {
            prop_assert_eq!(base.integral, Answer::Unknown);
            prop_assert!(base.local.values().all(|a| *a == Answer::Unknown));
        }
    }

    #[test]
    fn integral_rows_have_count_types_classes(g in arb_group(), spin in any::<bool>()) {
        let base = ClassBase::Manifold { spin };
        if let Some(rule) = rule_for(g, base).filter(|r| r.scope == Scope::Integral) {
            let s = ManifoldSpec::new(Pi1Descriptor::new(1, vec![]), 1, spin);
            let k = rule.modulus as i64;
            let mut reps: Vec<i64> = Vec::new();
            for t in 0..=k {
                let known = reps.iter().any(|&r| classify(g, &s, t, r, &[]).unwrap().integral == Answer::Yes);
                if !known {
                    reps.push(t);
                }
            }
            prop_assert_eq!(Some(reps.len()), count_types(g, base));
        }
    }
}
