//! Property suites for the group layer, driven over the catalog.

use proptest::prelude::*;

use xmod_core::catalog::{get_group, GROUP_KEYS};
use xmod_core::group::{
    action_closure, hom_enumeration, quotient_group, subgroup_generated, ActionByAutomorphisms,
    FiniteGroup, GroupHom,
};

fn catalog_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(GROUP_KEYS.to_vec()).prop_map(|key| get_group(key).unwrap())
}

fn group_with_seed() -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    catalog_group().prop_flat_map(|g| {
        let order = g.order();
        (Just(g), prop::collection::vec(0..order, 0..4))
    })
}

// independent fixed-point oracle for the smallest normal subgroup
// containing a seed
fn normal_closure_oracle(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut members: Vec<usize> = vec![0];
    members.extend_from_slice(seed);
    members.sort_unstable();
    members.dedup();
    loop {
        let mut next = members.clone();
        for &a in &members {
            for &b in &members {
                next.push(g.mul(a, b));
            }
            for c in g.elements() {
                next.push(g.conjugate(c, a));
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == members {
            return members;
        }
        members = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgroup_generation_is_idempotent((g, seed) in group_with_seed()) {
        let first = subgroup_generated(&g, &seed).unwrap();
        let second = subgroup_generated(&g, first.members()).unwrap();
        prop_assert_eq!(first.members(), second.members());
    }

    #[test]
    fn subgroup_generation_is_monotone((g, seed) in group_with_seed(), extra in 0usize..24) {
        prop_assume!(extra < g.order());
        let small = subgroup_generated(&g, &seed).unwrap();
        let mut bigger_seed = seed.clone();
        bigger_seed.push(extra);
        let large = subgroup_generated(&g, &bigger_seed).unwrap();
        for &m in small.members() {
            prop_assert!(large.contains(m));
        }
    }

    #[test]
    fn conjugation_closure_is_the_normal_closure((g, seed) in group_with_seed()) {
        let conj = ActionByAutomorphisms::conjugation(&g);
        let closed = action_closure(&conj, &seed).unwrap();
        let oracle = normal_closure_oracle(&g, &seed);
        prop_assert_eq!(closed.members(), oracle.as_slice());
    }

    #[test]
    fn quotient_projections_are_surjective_with_the_given_kernel((g, seed) in group_with_seed()) {
        let conj = ActionByAutomorphisms::conjugation(&g);
        let n = action_closure(&conj, &seed).unwrap();
        let (q, proj) = quotient_group(&g, &n).unwrap();
        prop_assert!(proj.is_surjective());
        let kernel = proj.kernel();
        prop_assert_eq!(kernel.members(), n.members());
        prop_assert_eq!(q.order() * n.order(), g.order());
    }

    #[test]
    fn enumerated_maps_compose_to_maps(
        a in catalog_group(),
        b in catalog_group(),
        c in catalog_group(),
        i in 0usize..6,
        j in 0usize..6,
    ) {
        prop_assume!(a.order() * b.order() <= 64 && b.order() * c.order() <= 64);
        let first = hom_enumeration(&a, &b);
        let second = hom_enumeration(&b, &c);
        let f = &first[i % first.len()];
        let g = &second[j % second.len()];
        let composed = GroupHom::compose(g, f).unwrap();
        // re-validating from the raw image table must succeed
        prop_assert!(GroupHom::new(&a, &c, composed.image().to_vec()).is_ok());
    }
}

#[test]
fn enumeration_order_is_stable_across_runs() {
    let s3 = get_group("S3").unwrap();
    let d8 = get_group("D8").unwrap();
    let first: Vec<Vec<usize>> = hom_enumeration(&d8, &s3)
        .iter()
        .map(|h| h.image().to_vec())
        .collect();
    let second: Vec<Vec<usize>> = hom_enumeration(&d8, &s3)
        .iter()
        .map(|h| h.image().to_vec())
        .collect();
    assert_eq!(first, second);
}

#[test]
fn isomorphism_search_is_reflexive_and_symmetric_on_the_catalog() {
    for key in GROUP_KEYS {
        let g = get_group(key).unwrap();
        let auto = xmod_core::group::is_isomorphic(&g, &g).expect("reflexive");
        assert!(auto.is_bijective());
    }
    for a_key in GROUP_KEYS {
        for b_key in GROUP_KEYS {
            let a = get_group(a_key).unwrap();
            let b = get_group(b_key).unwrap();
            let forward = xmod_core::group::is_isomorphic(&a, &b);
            let backward = xmod_core::group::is_isomorphic(&b, &a);
            assert_eq!(forward.is_some(), backward.is_some(), "{a_key} vs {b_key}");
            if let Some(f) = forward {
                assert!(f.is_bijective());
                assert!(GroupHom::new(&a, &b, f.image().to_vec()).is_ok());
            }
        }
    }
}
