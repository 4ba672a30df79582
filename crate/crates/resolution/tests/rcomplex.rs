use std::collections::BTreeMap;

use chainlab::BasisKey;
use resolution::{
    build_r_complex, enumerate_segments_zero, graded_piece_vs_tv, segments_filtration_r,
    segments_layers, SegmentsZero,
};
use setcore::{enumerate_partitions, strict_chains, Partition};

fn part(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_blocks(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn trivial_interval() {
    let w = Partition::discrete(3);
    let r = build_r_complex(&w, &w).unwrap();
    assert_eq!(r.complex.dims(), BTreeMap::from([(0, 1)]));
    assert_eq!(r.complex.betti().unwrap().nonzero(), BTreeMap::from([(0, 1)]));
}

#[test]
fn covering_pair() {
    let w = Partition::discrete(2);
    let a = Partition::indiscrete(2);
    let r = build_r_complex(&w, &a).unwrap();
    assert_eq!(r.words.len(), 2);
    let delta = BasisKey::new("0|1 δ 01");
    let p = BasisKey::new("0|1 p 01");
    assert_eq!(r.complex.coefficient(1, &delta, &p), chainlab::q(1));
    assert!(r.complex.betti().unwrap().is_zero());
}

#[test]
fn three_points_full_interval() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let r = build_r_complex(&w, &a).unwrap();
    assert_eq!(r.words.len(), 14);
    assert_eq!(r.words.iter().filter(|x| x.len() == 2).count(), 2);
    assert_eq!(r.complex.dims(), BTreeMap::from([(0, 4), (1, 7), (2, 3)]));
    assert!(r.complex.check_d_squared().holds);
    assert!(r.complex.betti().unwrap().is_zero());
}

#[test]
fn word_filtration() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let r = build_r_complex(&w, &a).unwrap();
    assert_eq!(r.word_filtration(r.max_len()).unwrap(), r.complex);
    assert_eq!(r.word_filtration(1).unwrap().total_dim(), 0);
    let f2 = r.word_filtration(2).unwrap();
    assert_eq!(f2.total_dim(), 2);
    assert!(f2.betti().unwrap().is_zero());
    let same = build_r_complex(&w, &w).unwrap();
    assert_eq!(same.word_filtration(1).unwrap().total_dim(), 1);
}

#[test]
fn graded_pieces_are_tensor_powers() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    let r = build_r_complex(&w, &a).unwrap();
    let two = graded_piece_vs_tv(&r, &[w.clone(), a.clone()]).unwrap();
    assert!(two.isomorphic && two.betti.is_zero());
    let three = graded_piece_vs_tv(&r, &[w.clone(), e12.clone(), a.clone()]).unwrap();
    assert_eq!(three.dims, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    assert!(three.isomorphic && three.betti.is_zero());
    let same = build_r_complex(&w, &w).unwrap();
    let unit = graded_piece_vs_tv(&same, std::slice::from_ref(&w)).unwrap();
    assert_eq!(unit.dims, BTreeMap::from([(0, 1)]));
    assert!(unit.isomorphic);
    assert!(graded_piece_vs_tv(&r, &[w.clone(), e12.clone()]).is_err());
    for n in 1..=4 {
        let top = Partition::discrete(n);
        let bottom = Partition::indiscrete(n);
        let r = build_r_complex(&top, &bottom).unwrap();
        for phi in strict_chains(&top, &bottom).unwrap() {
            let rep = graded_piece_vs_tv(&r, &phi).unwrap();
            assert!(rep.isomorphic && rep.dims == rep.tensor_dims && rep.betti == rep.tensor_betti);
        }
    }
}

#[test]
fn segments_layers_on_small_intervals() {
    let w = Partition::discrete(2);
    let a = Partition::indiscrete(2);
    let least = SegmentsZero { segments: vec![(w.clone(), a.clone())] };
    let layer = segments_filtration_r(&w, &a, &least).unwrap();
    assert_eq!(layer.dims, BTreeMap::from([(0, 1), (1, 1)]));

    let w3 = Partition::discrete(3);
    let a3 = Partition::indiscrete(3);
    let layers = segments_layers(&w3, &a3).unwrap();
    assert_eq!(layers.len(), enumerate_segments_zero(&w3, &a3).unwrap().len());
    let total: usize = layers.iter().flat_map(|l| l.dims.values()).sum();
    assert_eq!(total, 1 + 3 * 2 + 3 * 2 + 14);
    let mut homology = BTreeMap::new();
    for l in &layers {
        for (d, r) in l.betti.nonzero() {
            *homology.entry(d).or_insert(0) += r;
        }
    }
    assert_eq!(homology, BTreeMap::from([(0, 1)]));

    let outside = SegmentsZero { segments: vec![(a3.clone(), w3.clone())] };
    assert!(segments_filtration_r(&w3, &a3, &outside).unwrap().dims.is_empty());
}

#[test]
fn acyclic_on_every_interval_up_to_five_points() {
    for n in 1..=5 {
        let ps = enumerate_partitions(n).unwrap();
        for f in &ps {
            for e in ps.iter().filter(|e| f.geq(e)) {
                let r = build_r_complex(f, e).unwrap();
                assert!(r.complex.check_d_squared().holds);
                let betti = r.complex.betti().unwrap();
                if f == e {
                    assert_eq!(betti.nonzero(), BTreeMap::from([(0, 1)]));
                } else {
                    assert!(betti.is_zero(), "[{e},{f}]");
                }
                for len in 1..=r.max_len() {
                    r.word_filtration(len).unwrap();
                }
            }
        }
    }
}

#[test]
fn rejects_unordered_pairs() {
    assert!(build_r_complex(&Partition::indiscrete(3), &Partition::discrete(3)).is_err());
}
