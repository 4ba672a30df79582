use bodies::{is_supersurjective, Tower};
use proptest::prelude::*;
use setcore::{Partition, SetMap};
use symmetrize::{enumerate_cf, surjection_classes, CfObject, SymmError};

fn map(target: usize, images: &[usize]) -> SetMap {
    SetMap::from_images(target, images.to_vec()).unwrap()
}

/// Classes of `C_f` correspond to multisets of extra points over fibers of
/// `f` holding at least two points of `S`.
fn class_count_oracle(f: &SetMap, max_u: usize) -> usize {
    let big = (0..f.target().size()).filter(|&t| f.fiber(t).len() >= 2).count();
    let s = f.source().size();
    let mut total = 1;
    for k in 1..=max_u.saturating_sub(s) {
        if big > 0 {
            total += binomial(big + k - 1, k);
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn bijections_have_a_single_class() {
    for n in 1..=3 {
        let f = map(n, &(0..n).collect::<Vec<_>>());
        let classes = enumerate_cf(&f, n + 2).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].top(), n);
    }
    let classes = enumerate_cf(&map(1, &[0]), 3).unwrap();
    assert_eq!(classes.len(), 1);
}

#[test]
fn two_points_to_a_point() {
    let classes = enumerate_cf(&map(1, &[0, 0]), 3).unwrap();
    let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
    assert_eq!(names, vec!["2↪2 p=00", "2↪3 p=000"]);
    assert!(classes.iter().all(|c| c.is_canonical()));
}

#[test]
fn class_counts_match_the_multiset_oracle() {
    for f in surjection_classes(4) {
        let max_u = f.source().size() + 3;
        let classes = enumerate_cf(&f, max_u).unwrap();
        assert_eq!(classes.len(), class_count_oracle(&f, max_u), "{:?}", f.images());
    }
}

#[test]
fn automorphisms_permute_extras_within_fibers() {
    for f in surjection_classes(3) {
        for c in enumerate_cf(&f, f.source().size() + 3).unwrap() {
            let p = c.tower().projection();
            let expected: usize =
                (0..c.target()).map(|t| factorial((c.source()..c.top()).filter(|&u| p[u] == t).count())).product();
            assert_eq!(c.automorphisms().len(), expected, "{c}");
        }
    }
}

#[test]
fn objects_are_supersurjective_with_composite_f() {
    for f in surjection_classes(3) {
        for c in enumerate_cf(&f, f.source().size() + 2).unwrap() {
            assert!(is_supersurjective(&c.inclusion(), &c.surjection()));
            assert_eq!(c.ambient(), f);
            assert_eq!(c.kernel(), c.surjection().kernel());
        }
    }
}

#[test]
fn rejects_invalid_objects() {
    assert_eq!(CfObject::new(&map(2, &[0, 0]), &[]), Err(SymmError::NotSurjective));
    assert!(matches!(CfObject::new(&map(2, &[0, 1]), &[0]), Err(SymmError::NotSupersurjective(_))));
    assert!(CfObject::new(&map(1, &[0, 0]), &[0]).is_ok());
    let two_step = Tower::new(
        2,
        1,
        vec![0, 0, 0],
        vec![Partition::discrete(3), Partition::from_tags(&[0, 0, 1]), Partition::indiscrete(3)],
    )
    .unwrap();
    assert!(matches!(CfObject::from_tower(two_step), Err(SymmError::NotOneStep(_))));
    assert!(matches!(enumerate_cf(&map(1, &[0, 0]), 99), Err(SymmError::BoundExceeded { .. })));
    assert_eq!(enumerate_cf(&map(2, &[0, 0]), 3), Err(SymmError::NotSurjective));
}

proptest! {
    #[test]
    fn canonical_form_is_a_class_invariant(images in proptest::collection::vec(0usize..2, 2..=3), extras in proptest::collection::vec(0usize..2, 0..=3), seed in 0usize..720) {
        let t = images.iter().max().unwrap() + 1;
        let f = map(t, &images);
        prop_assume!(f.is_surjective());
        let Ok(obj) = CfObject::new(&f, &extras) else { return Ok(()); };
        let s = obj.source();
        let perms = setcore::all_permutations(obj.top() - s);
        let sigma = &perms[seed % perms.len()];
        let perm: Vec<usize> = (0..s).chain(sigma.iter().map(|&x| x + s)).collect();
        let moved = obj.relabel(&perm);
        prop_assert_eq!(moved.canonical_form().0, obj.canonical_form().0);
        let (rep, to_rep) = moved.canonical_form();
        prop_assert_eq!(moved.relabel(&to_rep), rep);
    }
}
