use std::collections::BTreeMap;

use chainlab::{q, BasisKey};
use msystem::{
    build_m_complex, enumerate_shuffles, flag_key, l_projection, lowest_cohomology_rank,
    lowest_degree, shuffle_factorization,
};
use proptest::prelude::*;
use setcore::{all_permutations, surjections, Partition, SetMap};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Product over target points of (fiber size − 1)!.
fn lie_oracle(p: &SetMap) -> usize {
    (0..p.target().size()).map(|t| factorial(p.fiber(t).len() - 1)).product()
}

fn all_surjections(max: usize) -> Vec<SetMap> {
    let mut out = Vec::new();
    for n in 1..=max {
        for k in 1..=n {
            for imgs in surjections(n, k) {
                out.push(SetMap::from_images(k, imgs).unwrap());
            }
        }
    }
    out
}

#[test]
fn small_examples() {
    let bij = build_m_complex(&SetMap::identity(3)).unwrap();
    assert_eq!(bij.complex.dims(), BTreeMap::from([(-1, 1)]));
    assert!(bij.complex.differential(-1).is_zero());
    let two = build_m_complex(&SetMap::to_point(2)).unwrap();
    assert_eq!(two.complex.dims(), BTreeMap::from([(-1, 1)]));
    let three = build_m_complex(&SetMap::to_point(3)).unwrap();
    assert_eq!(three.complex.dims(), BTreeMap::from([(-1, 1), (-2, 3)]));
    assert_eq!(three.complex.differential(-2).rank(), 1);
    assert!(build_m_complex(&SetMap::from_images(2, vec![0, 0]).unwrap()).is_err());
}

#[test]
fn betti_examples() {
    let betti = build_m_complex(&SetMap::to_point(3)).unwrap().complex.betti().unwrap();
    assert_eq!(betti.nonzero(), BTreeMap::from([(-2, 2)]));
    assert_eq!(lowest_cohomology_rank(&SetMap::to_point(2)).unwrap(), 1);
    assert_eq!(lowest_cohomology_rank(&SetMap::to_point(4)).unwrap(), 6);
    let p22 = SetMap::from_images(2, vec![0, 0, 1, 1]).unwrap();
    assert_eq!(lowest_cohomology_rank(&p22).unwrap(), 1);
    assert_eq!(lowest_degree(&p22), -2);
    assert_eq!(lowest_degree(&SetMap::identity(2)), -1);
}

#[test]
fn sign_flip_breaks_d_squared() {
    let m = build_m_complex(&SetMap::to_point(4)).unwrap();
    assert!(m.complex.check_d_squared().holds);
    let d = m.complex.differential(-3);
    let (r, c, v) = d.entries()[0].clone();
    let broken = m.complex.with_entry(-3, r, c, -v).unwrap();
    let report = broken.check_d_squared();
    assert!(!report.holds);
    assert!(report.witness.is_some());
}

#[test]
fn projection_l() {
    let m = build_m_complex(&SetMap::to_point(3)).unwrap();
    let l = l_projection(&m);
    assert_eq!(l.apply(-1, &l.generator), q(1));
    for k in m.complex.basis(-2) {
        assert_eq!(l.apply(-2, k), q(0));
    }
    assert_eq!(l.composite_row.len(), 3);
    assert!(l.composite_row.iter().all(|v| *v == q(1) || *v == q(-1)));
}

#[test]
fn homology_concentrated_with_lie_ranks_up_to_five_points() {
    for p in all_surjections(5) {
        let m = build_m_complex(&p).unwrap();
        assert!(m.complex.check_d_squared().holds, "{:?}", p.images());
        let betti = m.complex.betti().unwrap();
        assert_eq!(
            betti.nonzero(),
            BTreeMap::from([(lowest_degree(&p), lie_oracle(&p))]),
            "{:?}",
            p.images()
        );
        assert_eq!(betti.euler_characteristic(), m.complex.euler_characteristic());
    }
}

#[test]
fn shuffle_signs() {
    let s = enumerate_shuffles(&[1, 1, 1]);
    assert_eq!(s.len(), 6);
    for sh in &s {
        let perm: Vec<usize> = sh.sequence.clone();
        let mut inv = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        assert_eq!(sh.sign, if inv % 2 == 0 { 1 } else { -1 });
    }
    assert_eq!(enumerate_shuffles(&[2, 1]).len(), 3);
}

#[test]
fn two_point_pair_shuffle() {
    let f = shuffle_factorization(&[SetMap::to_point(2), SetMap::to_point(2)]).unwrap();
    let m = &f.map.components[&-2];
    let src = f.source.index_of(-2, &BasisKey::new("0|1>01⊗0|1>01")).unwrap();
    let p = |s: &str| Partition::from_tags(&s.chars().collect::<Vec<_>>());
    let plus = flag_key(&[p("abcd"), p("aacd"), p("aacc")]);
    let minus = flag_key(&[p("abcd"), p("abcc"), p("aacc")]);
    let t = &f.target.complex;
    assert_eq!(m.get(t.index_of(-2, &plus).unwrap(), src), q(1));
    assert_eq!(m.get(t.index_of(-2, &minus).unwrap(), src), q(-1));
    assert_eq!(m.nnz(), 2);
    assert!(f.check().unwrap().holds);
}

#[test]
fn three_factor_shuffle_has_permutation_signs() {
    let f = shuffle_factorization(&[SetMap::to_point(2), SetMap::to_point(2), SetMap::to_point(2)]).unwrap();
    let m = &f.map.components[&-3];
    assert_eq!(m.nnz(), 6);
    let sum: i64 = m.entries().iter().map(|e| if e.2 == q(1) { 1 } else { -1 }).sum();
    assert_eq!(sum, 0);
    assert!(f.check().unwrap().holds);
}

#[test]
fn single_factor_is_identity() {
    let p = SetMap::to_point(4);
    let f = shuffle_factorization(std::slice::from_ref(&p)).unwrap();
    for d in f.source.degrees() {
        let m = &f.map.components[&d];
        assert_eq!(m.nnz(), f.source.dim(d));
        for (r, c, v) in m.entries() {
            assert_eq!(*v, q(1));
            assert_eq!(f.target.complex.basis(d)[*r].0, f.source.basis(d)[*c].0);
        }
    }
}

#[test]
fn shuffle_is_a_chain_map_for_all_small_families() {
    let pieces: Vec<SetMap> = all_surjections(5).into_iter().filter(|p| !p.is_injective()).collect();
    for p in &pieces {
        assert!(shuffle_factorization(std::slice::from_ref(p)).unwrap().check().unwrap().holds);
    }
    for a in &pieces {
        for b in &pieces {
            if a.source().size() + b.source().size() <= 5 {
                let f = shuffle_factorization(&[a.clone(), b.clone()]).unwrap();
                assert!(f.check().unwrap().holds, "{:?} ⊔ {:?}", a.images(), b.images());
            }
        }
    }
    assert!(shuffle_factorization(&[SetMap::identity(1)]).is_err());
}

fn relabel(c: &Partition, sigma: &[usize]) -> Partition {
    let mut tags = vec![0; c.size()];
    for x in 0..c.size() {
        tags[sigma[x]] = c.block_of(x);
    }
    Partition::from_tags(&tags)
}

fn check_equivariance(p: &SetMap, sigma: &[usize]) {
    let mut images = vec![0; p.source().size()];
    for x in 0..sigma.len() {
        images[sigma[x]] = p.image(x);
    }
    let p2 = SetMap::from_images(p.target().size(), images).unwrap();
    let m = build_m_complex(p).unwrap();
    let m2 = build_m_complex(&p2).unwrap();
    assert_eq!(m.complex.dims(), m2.complex.dims());
    let moved = |k: &BasisKey| -> BasisKey {
        let t = m.term(k).unwrap();
        flag_key(&t.chain.iter().map(|c| relabel(c, sigma)).collect::<Vec<_>>())
    };
    for d in m.complex.degrees() {
        let a = m.complex.differential(d);
        assert_eq!(a.nnz(), m2.complex.differential(d).nnz());
        for (r, c, v) in a.entries() {
            let src = moved(&m.complex.basis(d)[*c]);
            let tgt = moved(&m.complex.basis(d + 1)[*r]);
            assert_eq!(m2.complex.coefficient(d, &src, &tgt), *v);
        }
    }
}

#[test]
fn equivariance_under_relabeling() {
    for p in all_surjections(4) {
        for sigma in all_permutations(p.source().size()) {
            check_equivariance(&p, &sigma);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_five_point_relabelings(k in 1usize..5, seed in any::<u64>(), perm_idx in 0usize..120) {
        let maps = surjections(5, k);
        let p = SetMap::from_images(k, maps[(seed % maps.len() as u64) as usize].clone()).unwrap();
        let sigma = &all_permutations(5)[perm_idx];
        check_equivariance(&p, sigma);
    }
}
