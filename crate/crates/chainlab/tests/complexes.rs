use std::collections::BTreeMap;

use chainlab::{
    kunneth_prediction, q, tensor_complex, BasisKey, ChainError, ComplexBuilder, FormalComplex,
    Orientation, SparseMatrix, Q,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Dense rank over the rationals by textbook elimination.
fn dense_rank(m: &SparseMatrix) -> usize {
    let mut a = vec![vec![Q::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        a[*r][*c] = v.clone();
    }
    let mut rank = 0;
    for col in 0..m.cols() {
        if let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) {
            a.swap(rank, p);
            for r in 0..m.rows() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    let pivot = a[rank].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

fn key(s: &str) -> BasisKey {
    BasisKey::new(s)
}

/// The two-term complex with `dδ = p`, δ in degree 1.
fn v_complex() -> FormalComplex {
    let mut b = ComplexBuilder::new(Orientation::Homological);
    b.add_generator(0, key("p"));
    b.add_generator(1, key("δ"));
    b.add_entry(1, key("δ"), key("p"), Q::one());
    b.build().unwrap()
}

/// Boundary complex of a filled triangle.
fn triangle() -> FormalComplex {
    let mut b = ComplexBuilder::new(Orientation::Homological);
    for v in ["a", "b", "c"] {
        b.add_generator(0, key(v));
    }
    for e in ["ab", "ac", "bc"] {
        b.add_generator(1, key(e));
        let mut cs = e.chars();
        let (x, y) = (cs.next().unwrap().to_string(), cs.next().unwrap().to_string());
        b.add_entry(1, key(e), key(&y), q(1));
        b.add_entry(1, key(e), key(&x), q(-1));
    }
    b.add_generator(2, key("abc"));
    b.add_entry(2, key("abc"), key("bc"), q(1));
    b.add_entry(2, key("abc"), key("ac"), q(-1));
    b.add_entry(2, key("abc"), key("ab"), q(1));
    b.build().unwrap()
}

#[test]
fn zero_differential_and_single_generator() {
    let g = FormalComplex::generator(Orientation::Cohomological, 1, key("x"));
    assert!(g.check_d_squared().holds);
    assert_eq!(g.betti().unwrap().nonzero(), BTreeMap::from([(1, 1)]));
}

#[test]
fn triangle_is_contractible_and_sign_flip_is_caught() {
    let t = triangle();
    assert!(t.check_d_squared().holds);
    assert_eq!(t.betti().unwrap().nonzero(), BTreeMap::from([(0, 1)]));
    let col = t.index_of(2, &key("abc")).unwrap();
    let row = t.index_of(1, &key("ac")).unwrap();
    let broken = t.with_entry(2, row, col, q(1)).unwrap();
    let report = broken.check_d_squared();
    assert!(!report.holds);
    let w = report.witness.unwrap();
    assert_eq!(w.source, key("abc"));
    assert!(matches!(broken.betti(), Err(ChainError::NotAComplex(_))));
}

#[test]
fn tensor_powers_of_v() {
    let v = v_complex();
    let v2 = tensor_complex(&[v.clone(), v.clone()]).unwrap();
    assert_eq!(v2.dims(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    assert!(v2.check_d_squared().holds);
    assert!(v2.betti().unwrap().is_zero());
    for d in v2.degrees() {
        assert_eq!(v2.differential(d).rank(), dense_rank(&v2.differential(d)));
    }
    let v3 = tensor_complex(&[v.clone(), v.clone(), v.clone()]).unwrap();
    assert_eq!(v3.dims(), BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
    assert!(v3.betti().unwrap().is_zero());
    let d = v2.differential(2);
    assert_eq!(d.nnz(), 2);
    let vals: Vec<Q> = d.entries().iter().map(|e| e.2.clone()).collect();
    assert!(vals.contains(&q(1)) && vals.contains(&q(-1)));
}

#[test]
fn tensor_with_unit_is_a_copy() {
    let t = triangle();
    let unit = FormalComplex::generator(Orientation::Homological, 0, key("1"));
    let tu = tensor_complex(&[t.clone(), unit]).unwrap();
    assert_eq!(tu.dims(), t.dims());
    for d in t.degrees() {
        assert_eq!(tu.differential(d), t.differential(d));
    }
    let empty = tensor_complex(&[]).unwrap();
    assert_eq!(empty.dims(), BTreeMap::from([(0, 1)]));
}

#[test]
fn orientation_mismatch_is_rejected() {
    let a = FormalComplex::generator(Orientation::Homological, 0, key("a"));
    let b = FormalComplex::generator(Orientation::Cohomological, 0, key("b"));
    assert_eq!(tensor_complex(&[a, b]), Err(ChainError::OrientationMismatch));
}

#[test]
fn subcomplex_requires_closure() {
    let t = triangle();
    assert!(t.subcomplex(|d, _| d == 0).is_ok());
    assert!(matches!(
        t.subcomplex(|d, _| d == 1),
        Err(ChainError::NotClosed { .. })
    ));
}

fn two_term(deg: i64, rows: usize, cols: usize, entries: &[i64], tag: &str) -> FormalComplex {
    let mut b = ComplexBuilder::new(Orientation::Homological);
    for c in 0..cols {
        b.add_generator(deg, key(&format!("{tag}{deg}.{c}")));
    }
    for r in 0..rows {
        b.add_generator(deg - 1, key(&format!("{tag}{}.{r}", deg - 1)));
    }
    for r in 0..rows {
        for c in 0..cols {
            let v = entries[(r * cols + c) % entries.len()];
            b.add_entry(
                deg,
                key(&format!("{tag}{deg}.{c}")),
                key(&format!("{tag}{}.{r}", deg - 1)),
                q(v),
            );
        }
    }
    b.build().unwrap()
}

fn arb_two_term(tag: &'static str) -> impl Strategy<Value = FormalComplex> {
    (0i64..3, 1usize..3, 1usize..3, proptest::collection::vec(-2i64..3, 1..9))
        .prop_map(move |(deg, r, c, e)| two_term(deg, r, c, &e, tag))
}

proptest! {
    #[test]
    fn sparse_rank_matches_dense_oracle(
        rows in 1usize..7,
        cols in 1usize..7,
        entries in proptest::collection::vec((-3i64..4, 1i64..4), 49),
    ) {
        let m = SparseMatrix::from_triples(
            rows,
            cols,
            (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c)))
                .map(|(r, c)| {
                    let (n, d) = entries[r * 7 + c];
                    (r, c, Q::new(n.into(), d.into()))
                }),
        );
        prop_assert_eq!(m.rank(), dense_rank(&m));
    }

    #[test]
    fn euler_characteristic_and_kunneth(
        a in arb_two_term("a"),
        b in arb_two_term("b"),
        c in arb_two_term("c"),
    ) {
        let factors = [a, b, c];
        let t = tensor_complex(&factors).unwrap();
        prop_assert!(t.total_dim() <= 64);
        prop_assert!(t.check_d_squared().holds);
        let betti = t.betti().unwrap();
        prop_assert_eq!(betti.euler_characteristic(), t.euler_characteristic());
        let tables: Vec<_> = factors.iter().map(|f| f.betti().unwrap()).collect();
        prop_assert_eq!(betti.nonzero(), kunneth_prediction(&tables).nonzero());
    }
}
