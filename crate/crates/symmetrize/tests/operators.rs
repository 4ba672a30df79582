use bodies::{is_supersurjective, Step};
use num_rational::Rational64;
use setcore::{Partition, SetMap};
use symmetrize::{
    as_operator, check_equivariance, e_as, e_left, e_right, e_right_double_count, enumerate_cf, l_operator,
    r_operator, saturation, surjection_classes, CfObject, OperatorOptions, SectionWeighting, SymmError,
};

fn map(target: usize, images: &[usize]) -> SetMap {
    SetMap::from_images(target, images.to_vec()).unwrap()
}

fn obj(target: usize, images: &[usize], extras: &[usize]) -> CfObject {
    CfObject::new(&map(target, images), extras).unwrap()
}

fn compact(es: &[Partition]) -> Vec<String> {
    es.iter().map(|e| e.compact()).collect()
}

fn all_objects(max_source: usize, extra: usize) -> Vec<CfObject> {
    surjection_classes(max_source)
        .iter()
        .flat_map(|f| enumerate_cf(f, f.source().size() + extra).unwrap())
        .collect()
}

#[test]
fn left_index_set_is_empty_of_content_for_bijective_p() {
    let x = obj(2, &[0, 1], &[]);
    assert_eq!(compact(&e_left(&x)), vec!["0|1"]);
    assert!(l_operator(&x, OperatorOptions::default()).unwrap().is_empty());
    let y = obj(1, &[0, 0], &[]);
    assert_eq!(compact(&e_left(&y)), vec!["0|1"]);
    assert!(l_operator(&y, OperatorOptions::default()).unwrap().is_empty());
}

#[test]
fn left_index_set_with_one_extra_point() {
    let x = obj(1, &[0, 0], &[0]);
    assert_eq!(compact(&e_left(&x)), vec!["0|12", "02|1", "0|1|2"]);
    let summands = l_operator(&x, OperatorOptions::default()).unwrap();
    assert_eq!(summands.len(), 2);
    for s in &summands {
        assert_eq!(s.target.to_string(), "2↪2 p=00");
        assert_eq!(s.morphism.degree().unwrap(), Some(1));
        let (ladder, c) = s.morphism.terms().iter().next().unwrap();
        assert_eq!(ladder.steps(), &[Step::L, Step::A]);
        assert_eq!(*c, Rational64::from_integer(1));
    }
}

#[test]
fn left_sections_lift_into_one_class() {
    // Two extra points over one fiber, merged with each other: the class
    // {2, 3} has the two sections 2 and 3. Both lie in the block of the
    // A-step source level, so they give one morphism.
    let x = obj(1, &[0, 0], &[0, 0]);
    let e = Partition::from_tags(&[0, 1, 2, 2]);
    let averaged = symmetrize::l_summand(&x, &e, OperatorOptions::default()).unwrap().unwrap();
    assert_eq!(averaged.target.to_string(), "2↪3 p=000");
    let terms: Vec<(usize, Rational64)> = averaged.morphism.terms().iter().map(|(l, c)| (l.j0()[2], *c)).collect();
    assert_eq!(terms, vec![(2, Rational64::from_integer(1))]);
    let options = OperatorOptions { weighting: SectionWeighting::Sum, ..Default::default() };
    let summed = symmetrize::l_summand(&x, &e, options).unwrap().unwrap();
    let coefficients: Vec<Rational64> = summed.morphism.terms().values().copied().collect();
    assert_eq!(coefficients, vec![Rational64::from_integer(2)]);
    let ladder = averaged.morphism.terms().keys().next().unwrap();
    assert_eq!(ladder.steps(), &[Step::L, Step::A]);
}

#[test]
fn right_summand_for_a_single_discarded_point() {
    let x = obj(1, &[0, 0], &[0]);
    assert_eq!(compact(&e_right(&x)), vec!["012", "01|2"]);
    let summands = r_operator(&x, OperatorOptions::default()).unwrap();
    assert_eq!(summands.len(), 1);
    assert_eq!(summands[0].e.compact(), "01|2");
    assert_eq!(summands[0].target.to_string(), "2↪2 p=00");
    let (ladder, _) = summands[0].morphism.terms().iter().next().unwrap();
    assert_eq!(ladder.j0(), &[0, 1]);
    assert_eq!(ladder.steps(), &[Step::A, Step::L]);
}

#[test]
fn right_summands_for_two_discarded_points() {
    let x = obj(1, &[0, 0], &[0, 0]);
    let summands = r_operator(&x, OperatorOptions::default()).unwrap();
    let both: Vec<String> =
        summands.iter().filter(|s| saturation(&x, &s.e).len() == 2).map(|s| s.e.compact()).collect();
    assert_eq!(both, vec!["01|23", "01|2|3"]);
    assert_eq!(summands.len(), 4);
    assert_eq!(e_right_double_count(&x), (5, 5));
}

#[test]
fn right_operator_vanishes_without_extra_points() {
    for x in all_objects(3, 0) {
        assert!(r_operator(&x, OperatorOptions::default()).unwrap().is_empty());
    }
}

#[test]
fn right_index_set_matches_discarded_pairs() {
    for x in all_objects(4, 3) {
        let (direct, pairs) = e_right_double_count(&x);
        assert_eq!(direct, pairs, "{x}");
    }
}

#[test]
fn operator_targets_lie_in_the_groupoid() {
    for options in [OperatorOptions::default(), OperatorOptions { variant: bodies::Variant::Presymm, ..Default::default() }] {
        for x in all_objects(4, 2) {
            let summands = l_operator(&x, options).unwrap().into_iter().chain(r_operator(&x, options).unwrap());
            for s in summands {
                assert!(is_supersurjective(&s.target.inclusion(), &s.target.surjection()));
                assert!(s.target.is_canonical());
                assert!(s.target.top() < x.top());
                assert_eq!(s.target.ambient(), x.ambient());
                assert_eq!(s.morphism.degree().unwrap(), Some(1), "{x} {}", s.e.compact());
            }
        }
    }
}

#[test]
fn operators_commute_with_relabelling() {
    for x in all_objects(3, 3) {
        assert!(check_equivariance(&x, OperatorOptions::default()).unwrap(), "{x}");
    }
    for x in all_objects(4, 2) {
        assert!(check_equivariance(&x, OperatorOptions::default()).unwrap(), "{x}");
    }
}

#[test]
fn as_through_a_bijection_recovers_the_object() {
    for f in surjection_classes(3) {
        let s = f.source().size();
        let id = map(s, &(0..s).collect::<Vec<_>>());
        for x in enumerate_cf(&f, s + 2).unwrap() {
            let summands = as_operator(&x, &id, &f).unwrap();
            assert_eq!(summands.len(), 1, "{x}");
            assert!(summands[0].e.is_discrete());
            assert_eq!(summands[0].left.top(), s);
            assert_eq!(summands[0].right, x);
        }
    }
}

#[test]
fn as_through_a_merge_of_three_points() {
    let f1 = map(2, &[0, 1, 1]);
    let f2 = map(1, &[0, 0]);
    let x = obj(1, &[0, 0, 0], &[]);
    assert_eq!(compact(&e_as(&x, &f1)), vec!["0|12"]);
    let summands = as_operator(&x, &f1, &f2).unwrap();
    assert_eq!(summands.len(), 1);
    assert_eq!(summands[0].left.to_string(), "3↪3 p=011");
    assert_eq!(summands[0].right.to_string(), "2↪2 p=00");

    let with_extra = obj(1, &[0, 0, 0], &[0]);
    let kept: Vec<String> = as_operator(&with_extra, &f1, &f2).unwrap().iter().map(|s| s.e.compact()).collect();
    assert_eq!(kept, vec!["0|123", "0|12|3"]);
}

#[test]
fn as_rejects_a_wrong_factorization() {
    let x = obj(1, &[0, 0], &[]);
    let err = as_operator(&x, &map(2, &[0, 1]), &map(2, &[0, 1])).unwrap_err();
    assert!(matches!(err, SymmError::InvalidFactorization(_)));
}
