use bodies::{
    check_factorizations, enumerate_ske, factor_suitable_supersur, is_suitable, is_supersurjective,
    BodyError, Square, Tower,
};
use proptest::prelude::*;
use setcore::{Partition, SetMap};

fn map(target: usize, images: &[usize]) -> SetMap {
    SetMap::from_images(target, images.to_vec()).unwrap()
}

/// Brute-force fiber condition: for every `t`, two or more hits force the
/// whole fiber to be hit.
fn suitable_oracle(i: &[usize], p: &[usize], t: usize) -> bool {
    (0..t).all(|x| {
        let fiber: Vec<usize> = (0..p.len()).filter(|&u| p[u] == x).collect();
        let hits = fiber.iter().filter(|u| i.contains(u)).count();
        hits < 2 || hits == fiber.len()
    })
}

/// Brute-force super-surjectivity: every fiber has two or more hits, or is a
/// single hit point.
fn supersur_oracle(i: &[usize], p: &[usize], t: usize) -> bool {
    (0..t).all(|x| {
        let fiber: Vec<usize> = (0..p.len()).filter(|&u| p[u] == x).collect();
        let hits = fiber.iter().filter(|u| i.contains(u)).count();
        hits >= 2 || (fiber.len() == 1 && hits == 1)
    })
}

#[test]
fn towers_over_two_points_to_a_point() {
    let f = map(1, &[0, 0]);
    let towers = enumerate_ske(&f, 2).unwrap();
    assert_eq!(towers.len(), 1);
    assert_eq!(towers[0].length(), 1);
    assert_eq!(towers[0].top(), 2);
}

#[test]
fn bijection_has_only_the_trivial_tower() {
    let f = map(1, &[0]);
    let towers = enumerate_ske(&f, 1).unwrap();
    assert_eq!(towers.len(), 1);
    assert_eq!(towers[0].length(), 0);
    assert_eq!(towers[0].top(), 1);
    // Extra points of U₀ over the single target point give one-step towers.
    let wider = enumerate_ske(&f, 3).unwrap();
    assert_eq!(wider.len(), 5);
    assert_eq!(wider.iter().filter(|t| t.length() == 0).count(), 1);
}

#[test]
fn three_points_to_a_point_regression() {
    let f = map(1, &[0, 0, 0]);
    let towers = enumerate_ske(&f, 3).unwrap();
    assert_eq!(towers.len(), 4);
    assert_eq!(towers.iter().filter(|t| t.length() == 1).count(), 1);
    assert_eq!(towers.iter().filter(|t| t.length() == 2).count(), 3);
    assert_eq!(enumerate_ske(&f, 4).unwrap().len(), 36);
}

#[test]
fn enumeration_is_stable() {
    let f = map(2, &[0, 0, 1]);
    let first: Vec<String> = enumerate_ske(&f, 4).unwrap().iter().map(|t| t.to_string()).collect();
    let second: Vec<String> = enumerate_ske(&f, 4).unwrap().iter().map(|t| t.to_string()).collect();
    assert_eq!(first, second);
}

#[test]
fn enumeration_bound_is_enforced() {
    let f = map(1, &[0]);
    assert!(matches!(enumerate_ske(&f, 99), Err(BodyError::BoundExceeded { .. })));
}

#[test]
fn malformed_towers_are_rejected() {
    let w = Partition::discrete(2);
    let a = Partition::indiscrete(2);
    assert!(Tower::new(2, 1, vec![0, 0], vec![w.clone(), w.clone(), a.clone()]).is_err());
    assert!(Tower::new(2, 1, vec![0, 0], vec![w.clone()]).is_err());
    assert!(Tower::new(3, 1, vec![0, 0], vec![w, a]).is_err());
}

#[test]
fn relabelled_towers_share_a_key() {
    let f = map(1, &[0]);
    let t = Tower::new(
        1,
        1,
        vec![0, 0, 0],
        vec![Partition::discrete(3), Partition::from_tags(&[0, 0, 1]), Partition::indiscrete(3)],
    )
    .unwrap();
    let u = t.relabel(&[0, 2, 1]);
    assert_ne!(t, u);
    assert_eq!(t.canonical_key(), u.canonical_key());
    assert!(enumerate_ske(&f, 3).unwrap().contains(&t.canonical_form().0));
    assert_eq!(t.automorphisms().len(), 1);
}

#[test]
fn padding_square_is_suitable() {
    // S ⊔ U → T ⊔ U over S → T, with S = {0, 1}, T = {0}, U = {u}.
    let i = map(3, &[0, 1]);
    let p = map(2, &[0, 0, 1]);
    let sq = Square::from_top(i, p).unwrap();
    assert!(is_suitable(&sq));
}

#[test]
fn two_hits_in_a_larger_fiber_is_not_suitable() {
    let sq = Square::from_top(map(3, &[0, 1]), map(1, &[0, 0, 0])).unwrap();
    assert!(!is_suitable(&sq));
}

#[test]
fn single_hits_are_vacuously_suitable() {
    let sq = Square::from_top(map(4, &[0, 2]), map(2, &[0, 0, 1, 1])).unwrap();
    assert!(is_suitable(&sq));
}

#[test]
fn non_commutative_squares_are_rejected() {
    let i = map(2, &[0]);
    let p = map(2, &[0, 1]);
    let j = map(2, &[1]);
    let q = map(1, &[0]);
    assert!(matches!(Square::new(i, p, j, q), Err(BodyError::InvalidSquare(_))));
}

#[test]
fn supersurjectivity_examples() {
    // i bijective: every fiber consists of image points.
    assert!(is_supersurjective(&map(3, &[2, 0, 1]), &map(1, &[0, 0, 0])));
    // One hit in a fiber of two points.
    assert!(!is_supersurjective(&map(2, &[0]), &map(1, &[0, 0])));
    // p bijective: true exactly when i is a bijection.
    assert!(is_supersurjective(&map(2, &[1, 0]), &map(2, &[0, 1])));
    assert!(!is_supersurjective(&map(2, &[1]), &map(2, &[0, 1])));
}

#[test]
fn factorization_of_a_saturated_square_is_trivial() {
    let sq = Square::from_top(map(3, &[0, 1, 2]), map(2, &[0, 0, 1])).unwrap();
    let f = factor_suitable_supersur(&sq).unwrap();
    assert_eq!(f.subset, vec![0, 1, 2]);
    assert_eq!(f.i1.images(), &[0, 1, 2]);
    assert!(f.certificate.unique);
}

#[test]
fn factorization_of_a_single_hit_square() {
    let sq = Square::from_top(map(2, &[0]), map(1, &[0, 0])).unwrap();
    let f = factor_suitable_supersur(&sq).unwrap();
    assert_eq!(f.subset, vec![0]);
    assert_eq!(f.r.images(), &[0]);
    assert!(f.certificate.unique);
    assert_eq!(f.certificate.examined, 2);
}

#[test]
fn factorization_of_the_non_suitable_square() {
    let sq = Square::from_top(map(3, &[0, 1]), map(1, &[0, 0, 0])).unwrap();
    let f = factor_suitable_supersur(&sq).unwrap();
    assert_eq!(f.subset, vec![0, 1, 2]);
    let outer = Square::new(f.i2.clone(), sq.p().clone(), sq.j().clone(), f.r.clone()).unwrap();
    assert!(is_suitable(&outer));
    assert!(is_supersurjective(&f.i1, &f.r));
    assert!(f.certificate.unique);
}

#[test]
fn factorization_exists_and_is_unique_up_to_five_points() {
    let report = check_factorizations(5).unwrap();
    assert!(report.holds(), "{:?}", report.witness);
    // Σ_{n ≤ 5} 2ⁿ · #(surjections from an n-set).
    let surjections: usize = (0..=5usize)
        .map(|n| (0..=n).map(|t| setcore::surjections(n, t).len()).sum::<usize>() << n)
        .sum();
    assert_eq!(report.squares, surjections);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn predicates_match_brute_force(
        p in proptest::collection::vec(0usize..3, 1..6),
        mask in 0u32..64,
    ) {
        let t = p.iter().max().unwrap() + 1;
        prop_assume!((0..t).all(|x| p.contains(&x)));
        let i: Vec<usize> = (0..p.len()).filter(|&u| mask >> u & 1 == 1).collect();
        let sq = Square::from_top(map(p.len(), &i), map(t, &p)).unwrap();
        prop_assert_eq!(is_suitable(&sq), suitable_oracle(&i, &p, t));
        prop_assert_eq!(
            is_supersurjective(&map(p.len(), &i), &map(t, &p)),
            supersur_oracle(&i, &p, t)
        );
        let f = factor_suitable_supersur(&sq).unwrap();
        prop_assert!(f.certificate.unique);
        prop_assert!(supersur_oracle(f.i1.images(), f.r.images(), f.r.target().size()));
    }
}
