use setcore::SetMap;
use symmetrize::{
    as_operator, as_operator_with, check_coassociativity, enumerate_cf, expand_left, expand_right,
    surjection_classes, triple_factorizations, verify_as_coassociativity, AsConvention, CfObject,
};

fn map(target: usize, images: &[usize]) -> SetMap {
    SetMap::from_images(target, images.to_vec()).unwrap()
}

#[test]
fn triple_factorizations_compose_to_f() {
    for f in surjection_classes(4) {
        let all = triple_factorizations(&f);
        assert!(!all.is_empty());
        for (f1, f2, f3) in all {
            assert!(f1.is_surjective() && f2.is_surjective() && f3.is_surjective());
            assert_eq!(f3.after(&f2.after(&f1).unwrap()).unwrap(), f);
        }
    }
    // [3] → pt: chains ω ≥ e₁ ≥ e₂ ≥ α in the partition lattice of three points.
    assert_eq!(triple_factorizations(&map(1, &[0, 0, 0])).len(), 5 + 3 * 2 + 1);
}

#[test]
fn bijective_second_factor_gives_a_single_summand() {
    for f in surjection_classes(3) {
        let t = f.target().size();
        let id = map(t, &(0..t).collect::<Vec<_>>());
        for x in enumerate_cf(&f, f.source().size() + 2).unwrap() {
            let summands = as_operator(&x, &f, &id).unwrap();
            assert_eq!(summands.len(), 1, "{x}");
            assert_eq!(summands[0].left, x);
            assert_eq!(summands[0].right.top(), t);
        }
    }
}

#[test]
fn three_points_through_a_merge() {
    let f = map(1, &[0, 0, 0]);
    let f1 = map(2, &[0, 1, 1]);
    let id2 = map(2, &[0, 1]);
    let collapse = map(1, &[0, 0]);
    let r = verify_as_coassociativity(&f1, &id2, &collapse, 5, AsConvention::Literal).unwrap();
    assert!(r.holds());
    let r = verify_as_coassociativity(&f1, &collapse, &map(1, &[0]), 5, AsConvention::Literal).unwrap();
    assert!(r.holds());
    assert_eq!(r.objects, enumerate_cf(&f, 5).unwrap().len());
}

#[test]
fn four_points_through_two_merges() {
    let f1 = map(3, &[0, 1, 2, 2]);
    let f2 = map(2, &[0, 1, 1]);
    let f3 = map(1, &[0, 0]);
    for convention in [AsConvention::Literal, AsConvention::DiscreteDiscarded] {
        assert!(verify_as_coassociativity(&f1, &f2, &f3, 5, convention).unwrap().holds());
    }
    assert!(verify_as_coassociativity(&f1, &f2, &f3, 6, AsConvention::DiscreteDiscarded).unwrap().holds());
}

#[test]
fn literal_index_set_double_counts_merged_discarded_points() {
    // Two extra points of 4 ↪ 6 over a point may merge in the first as-step
    // or in the second when (1 ⊗ as)∘as is formed, but only in the first step
    // of (as ⊗ 1)∘as.
    let f1 = map(3, &[0, 1, 2, 2]);
    let f2 = map(2, &[0, 1, 1]);
    let f3 = map(1, &[0, 0]);
    let x = CfObject::new(&map(1, &[0, 0, 0, 0]), &[0, 0]).unwrap();
    let right = expand_right(&x, (&f1, &f2, &f3), AsConvention::Literal).unwrap();
    let left = expand_left(&x, (&f1, &f2, &f3), AsConvention::Literal).unwrap();
    let differing: Vec<String> = right
        .keys()
        .chain(left.keys())
        .filter(|k| right.get(*k) != left.get(*k))
        .map(|(a, b, c)| format!("{a} | {b} | {c}: {:?} vs {:?}", right.get(&(a.clone(), b.clone(), c.clone())), left.get(&(a.clone(), b.clone(), c.clone()))))
        .collect();
    assert_eq!(differing.len(), 2);
    assert_eq!(differing[0], "4↪4 p=0122 | 3↪3 p=011 | 2↪3 p=000: Some(2) vs Some(1)");

    let literal = verify_as_coassociativity(&f1, &f2, &f3, 6, AsConvention::Literal).unwrap();
    assert!(!literal.holds());
    assert_eq!(literal.witness.as_deref(), Some("4↪6 p=000000"));
}

#[test]
fn discrete_discarded_convention_is_coassociative() {
    let r = check_coassociativity(4, 3, AsConvention::DiscreteDiscarded).unwrap();
    assert!(r.holds(), "{:?}", r.witness);
    assert!(r.triples > 1000);
}

#[test]
fn literal_convention_up_to_the_first_merge_of_discarded_points() {
    assert!(check_coassociativity(3, 3, AsConvention::Literal).unwrap().holds());
    assert!(check_coassociativity(4, 1, AsConvention::Literal).unwrap().holds());
    let r = check_coassociativity(4, 2, AsConvention::Literal).unwrap();
    assert_eq!((r.failures, r.objects), (18, 337));
}

#[test]
fn conventions_agree_with_one_extra_point() {
    for f in surjection_classes(3) {
        for (f1, f2, f3) in triple_factorizations(&f) {
            let f2 = f3.after(&f2).unwrap();
            for x in enumerate_cf(&f, f.source().size() + 1).unwrap() {
                let a = as_operator_with(&x, &f1, &f2, AsConvention::Literal).unwrap();
                let b = as_operator_with(&x, &f1, &f2, AsConvention::DiscreteDiscarded).unwrap();
                assert_eq!(a, b, "{x}");
            }
        }
    }
}
