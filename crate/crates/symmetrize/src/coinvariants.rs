//! Representation of `Aut`-coinvariants of hom-spaces into objects of `C_f`.

use std::collections::BTreeMap;

use bodies::{make_ladder, Ladder, MorphismElement, Step, Tower, Variant};

/// Transports a morphism to the canonical representative of its target and
/// replaces every ladder by the least ladder of its class. Two ladders are in
/// the same class when they share the refinement, the steps and the injection
/// on the points of `S`, and the extra points over each fiber lift into the
/// same multiset of blocks at the source level of the A-step. This covers the
/// `Aut(target)`-orbit together with the choice of lift inside a block, which
/// give the same morphism of the symm body. Two elements agree in the
/// coinvariants exactly when their normal forms are equal.
pub fn normalize(m: &MorphismElement) -> MorphismElement {
    let (rep, perm) = m.target().canonical_form();
    let transported = m.retarget(&perm, rep.clone());
    let mut out = MorphismElement::zero(m.source().clone(), rep.clone(), m.variant());
    for (l, c) in transported.terms() {
        out.add_term(least_lift(m.source(), &rep, l, m.variant()), *c);
    }
    out
}

/// Multisets of blocks, per fiber, holding the images of the extra points.
fn lift_key(y: &Tower, level: &setcore::Partition, j0: &[usize]) -> BTreeMap<usize, Vec<usize>> {
    let mut key: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&t, &u) in y.projection().iter().zip(j0).skip(y.source()) {
        key.entry(t).or_default().push(level.block_of(u));
    }
    key.values_mut().for_each(|blocks| blocks.sort_unstable());
    key
}

/// The least ladder in the class of `l`.
fn least_lift(x: &Tower, y: &Tower, l: &Ladder, variant: Variant) -> Ladder {
    let Some(r) = l.steps().iter().position(|k| *k == Step::A) else {
        return l.clone();
    };
    if y.top() == y.source() {
        return l.clone();
    }
    let level = &l.refinement()[r];
    let key = lift_key(y, level, l.j0());
    let candidates: Vec<Vec<usize>> = (y.source()..y.top())
        .map(|v| {
            let blocks = &key[&y.projection()[v]];
            (x.source()..x.top()).filter(|&u| blocks.binary_search(&level.block_of(u)).is_ok()).collect()
        })
        .collect();
    let mut best = l.clone();
    let mut j0 = l.j0()[..y.source()].to_vec();
    search(x, y, l, variant, level, &key, &candidates, &mut j0, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &Tower,
    y: &Tower,
    l: &Ladder,
    variant: Variant,
    level: &setcore::Partition,
    key: &BTreeMap<usize, Vec<usize>>,
    candidates: &[Vec<usize>],
    j0: &mut Vec<usize>,
    best: &mut Ladder,
) {
    let k = j0.len() - y.source();
    if k == candidates.len() {
        if lift_key(y, level, j0) != *key || j0.as_slice() >= best.j0() {
            return;
        }
        if let Some(other) = make_ladder(x, y, l.refinement().to_vec(), j0.clone(), variant) {
            if other.steps() == l.steps() && other < *best {
                *best = other;
            }
        }
        return;
    }
    for &u in &candidates[k] {
        if !j0.contains(&u) {
            j0.push(u);
            search(x, y, l, variant, level, key, candidates, j0, best);
            j0.pop();
        }
    }
}
