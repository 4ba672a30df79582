//! The symm body as a colimit over super-surjective decompositions.
//!
//! A super-surjective decomposition of a tower `Y` replaces every step
//! `q_k: V_k ↠ V_{k+1}` by a pair `V_k ↪ V_k ⊔ W_k ↠ V_{k+1}` in which each
//! extra point of `W_k` lands in a fiber of `q_k` with at least two points.
//! Up to isomorphism over `Y` a decomposition is the list of counts
//! `w_{k,t}` of extra points over each such fiber, and its automorphism group
//! is `Π S_{w_{k,t}}`. The hom-space of the symm body is the direct sum over
//! these classes of presymm hom-spaces into the decomposed tower, taken modulo
//! the automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::Serialize;
use setcore::{all_permutations, Partition};

use crate::error::BodyError;
use crate::hom::{hom_basis, make_ladder, Ladder, Variant};
use crate::tower::Tower;

/// One class of super-surjective decompositions of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `counts[k]` maps a block of level `k + 1` (by label) to the number of
    /// extra points attached over it.
    pub counts: Vec<BTreeMap<usize, usize>>,
    /// The decomposed tower, on the top set `V₀ ⊔ extras`.
    pub tower: Tower,
    /// For each extra point (in label order after `V₀`), its step and block.
    pub extras: Vec<(usize, usize)>,
}

impl Decomposition {
    /// Number of extra points.
    pub fn extra_count(&self) -> usize {
        self.extras.len()
    }

    /// Generators of the automorphism group over `Y` as relabellings of the
    /// top set: the full group `Π S_{w_{k,t}}`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let base = self.tower.top() - self.extras.len();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (idx, key) in self.extras.iter().enumerate() {
            if idx > 0 && self.extras[idx - 1] == *key {
                groups.last_mut().expect("previous group").push(base + idx);
            } else {
                groups.push(vec![base + idx]);
            }
        }
        let mut out: Vec<Vec<usize>> = vec![(0..self.tower.top()).collect()];
        for group in groups.iter().filter(|g| g.len() > 1) {
            let mut next = Vec::new();
            for perm in all_permutations(group.len()) {
                for current in &out {
                    let mut p = current.clone();
                    for (a, &b) in perm.iter().enumerate() {
                        p[group[a]] = group[b];
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    /// Order of the automorphism group.
    pub fn automorphism_order(&self) -> u64 {
        self.counts
            .iter()
            .flat_map(|m| m.values())
            .map(|&w| (1..=w as u64).product::<u64>())
            .product()
    }
}

/// The fibers of each step of `y` with at least two points: `(k, block of
/// level k + 1)`.
pub fn decomposable_fibers(y: &Tower) -> Vec<(usize, usize)> {
    let flag = y.flag();
    let mut out = Vec::new();
    for k in 0..flag.len() - 1 {
        let mut sizes = vec![0usize; flag[k + 1].num_blocks()];
        let mut seen = BTreeSet::new();
        for u in 0..y.top() {
            if seen.insert(flag[k].block_of(u)) {
                sizes[flag[k + 1].block_of(u)] += 1;
            }
        }
        out.extend(sizes.iter().enumerate().filter(|(_, &n)| n >= 2).map(|(t, _)| (k, t)));
    }
    out
}

fn decomposition_from_counts(y: &Tower, slots: &[(usize, usize)], counts: &[usize]) -> Result<Decomposition, BodyError> {
    let flag = y.flag();
    let n = y.top();
    let mut extras = Vec::new();
    for (slot, &w) in slots.iter().zip(counts) {
        extras.extend(std::iter::repeat_n(*slot, w));
    }
    let representative = |k: usize, t: usize| (0..n).find(|&u| flag[k].block_of(u) == t).expect("nonempty block");
    let mut projection = y.projection().to_vec();
    for &(k, t) in &extras {
        projection.push(y.projection()[representative(k + 1, t)]);
    }
    let new_flag: Vec<Partition> = (0..flag.len())
        .map(|level| {
            let mut tags: Vec<(bool, usize)> = (0..n).map(|u| (false, flag[level].block_of(u))).collect();
            for (idx, &(k, t)) in extras.iter().enumerate() {
                if k < level {
                    tags.push((false, flag[level].block_of(representative(k + 1, t))));
                } else {
                    tags.push((true, idx));
                }
            }
            Partition::from_tags(&tags)
        })
        .collect();
    let tower = Tower::new(y.source(), y.target(), projection, new_flag)?;
    let mut by_step: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); flag.len() - 1];
    for (&(k, t), &w) in slots.iter().zip(counts) {
        if w > 0 {
            by_step[k].insert(t, w);
        }
    }
    Ok(Decomposition { counts: by_step, tower, extras })
}

/// All classes of super-surjective decompositions of `y` with at most
/// `max_extra` extra points, in order of increasing size.
pub fn supersur_decompositions(y: &Tower, max_extra: usize) -> Result<Vec<Decomposition>, BodyError> {
    let slots = decomposable_fibers(y);
    let mut out = Vec::new();
    let mut counts = vec![0usize; slots.len()];
    loop {
        if counts.iter().sum::<usize>() <= max_extra {
            out.push(decomposition_from_counts(y, &slots, &counts)?);
        }
        let mut k = 0;
        loop {
            if k == counts.len() {
                out.sort_by_key(Decomposition::extra_count);
                return Ok(out);
            }
            counts[k] += 1;
            if counts[k] <= max_extra {
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

/// The class of a presymm ladder into a decomposition: the refinement, the
/// injection on the points of `Y`, and for each extra point born at step `k`
/// the block of its image at the source level of the `k`-th A-step. Lifts of
/// an extra point inside that block give the same morphism of the symm body.
/// Extra points over the same fiber are unordered.
fn lift_class(ladder: &Ladder, decomposition: &Decomposition) -> (Vec<Partition>, Vec<usize>, Vec<usize>) {
    let base = decomposition.tower.top() - decomposition.extras.len();
    let a_positions: Vec<usize> = ladder
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == crate::hom::Step::A)
        .map(|(r, _)| r)
        .collect();
    let mut blocks: Vec<usize> = Vec::with_capacity(decomposition.extras.len());
    let mut start = 0;
    while start < decomposition.extras.len() {
        let slot = decomposition.extras[start];
        let mut end = start;
        let mut group = Vec::new();
        while end < decomposition.extras.len() && decomposition.extras[end] == slot {
            let level = &ladder.refinement()[a_positions[slot.0]];
            group.push(level.block_of(ladder.j0()[base + end]));
            end += 1;
        }
        group.sort();
        blocks.extend(group);
        start = end;
    }
    (ladder.refinement().to_vec(), ladder.j0()[..base].to_vec(), blocks)
}

/// Classes of presymm ladders into a decomposition up to its automorphisms
/// and the choice of lifts of its extra points, one representative each.
pub fn lift_classes(x: &Tower, decomposition: &Decomposition) -> Result<Vec<Ladder>, BodyError> {
    let mut classes = BTreeMap::new();
    for l in hom_basis(x, &decomposition.tower, Variant::Presymm)? {
        classes.entry(lift_class(&l, decomposition)).or_insert(l);
    }
    Ok(classes.into_values().collect())
}

/// Dimensions of `H_symm(X, Y)` by degree, computed directly and from the
/// colimit over super-surjective decompositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitComparison {
    /// Ladders without suitability conditions, by degree.
    pub direct: BTreeMap<usize, usize>,
    /// Sum over decomposition classes of orbit counts, by degree.
    pub colimit: BTreeMap<usize, usize>,
    /// Number of decomposition classes contributing.
    pub decompositions: usize,
    /// Whether sending a class to the symm ladder with the same refinement
    /// and the restricted injection is a bijection onto the direct basis.
    pub bijective: bool,
}

impl ColimitComparison {
    /// Whether the two counts agree in every degree.
    pub fn holds(&self) -> bool {
        self.direct == self.colimit && self.bijective
    }
}

/// Compares the direct symm hom basis with the colimit formula.
pub fn compare_colimit(x: &Tower, y: &Tower) -> Result<ColimitComparison, BodyError> {
    let direct_basis = hom_basis(x, y, Variant::Symm)?;
    let mut direct = BTreeMap::new();
    for l in &direct_basis {
        *direct.entry(l.degree()).or_insert(0) += 1;
    }
    let mut colimit = BTreeMap::new();
    let mut decompositions = 0;
    let mut images = BTreeSet::new();
    let mut injective = true;
    if x.same_ambient(y) && x.top() >= y.top() {
        for d in supersur_decompositions(y, x.top() - y.top())? {
            let reps = lift_classes(x, &d)?;
            if !reps.is_empty() {
                decompositions += 1;
            }
            for l in reps {
                *colimit.entry(l.degree()).or_insert(0) += 1;
                let image = make_ladder(x, y, l.refinement().to_vec(), l.j0()[..y.top()].to_vec(), Variant::Symm);
                injective &= image.is_some_and(|image| images.insert(image));
            }
        }
    }
    let bijective = injective && images.len() == direct_basis.len();
    Ok(ColimitComparison { direct, colimit, decompositions, bijective })
}

/// The symm hom basis as pairs (decomposition class, class representative).
pub fn hom_basis_symm(x: &Tower, y: &Tower) -> Result<Vec<(Decomposition, Ladder)>, BodyError> {
    let mut out = Vec::new();
    if x.same_ambient(y) && x.top() >= y.top() {
        for d in supersur_decompositions(y, x.top() - y.top())? {
            for l in lift_classes(x, &d)? {
                out.push((d.clone(), l));
            }
        }
    }
    Ok(out)
}

/// Iso-class count and groupoid mass (`Σ 1/|Aut|`) of the super-surjective
/// decompositions of the one-step map `q` with exactly `extra` extra points,
/// found by brute force over all extensions of `q` to `V ⊔ [extra]`.
pub fn decomposition_census(q: &setcore::SetMap, extra: usize) -> (usize, Rational64) {
    let v = q.source().size();
    let t = q.target().size();
    let inclusion: Vec<usize> = (0..v).collect();
    let mut classes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for tail in setcore::all_maps(extra, t) {
        let mut images = q.images().to_vec();
        images.extend(&tail);
        let r = setcore::SetMap::from_images(t, images).expect("images lie in the target");
        let i = setcore::SetMap::from_images(v + extra, inclusion.clone()).expect("inclusion");
        if !r.is_surjective() || !crate::square::is_supersurjective(&i, &r) {
            continue;
        }
        let mut key = tail.clone();
        key.sort();
        *classes.entry(key).or_insert(0) += 1;
    }
    let factorial: u64 = (1..=extra as u64).product();
    let mass = classes
        .values()
        .map(|&size| Rational64::new(size as i64, factorial as i64))
        .fold(Rational64::from_integer(0), |a, b| a + b);
    (classes.len(), mass)
}

/// The disjoint union of two towers of the same length over `F₁ ⊔ F₂`.
///
/// The top set lists the points of `S₁`, then `S₂`, then the remaining points
/// of the first and of the second top set; the target is `T₁ ⊔ T₂`.
pub fn disjoint_union(a: &Tower, b: &Tower) -> Result<Tower, BodyError> {
    if a.length() != b.length() {
        return Err(BodyError::InvalidTower(format!(
            "towers of lengths {} and {} have no levelwise union",
            a.length(),
            b.length()
        )));
    }
    let order: Vec<(bool, usize)> = (0..a.source())
        .map(|u| (false, u))
        .chain((0..b.source()).map(|u| (true, u)))
        .chain((a.source()..a.top()).map(|u| (false, u)))
        .chain((b.source()..b.top()).map(|u| (true, u)))
        .collect();
    let projection = order
        .iter()
        .map(|&(second, u)| if second { a.target() + b.projection()[u] } else { a.projection()[u] })
        .collect();
    let flag = (0..a.flag().len())
        .map(|k| {
            let tags: Vec<(bool, usize)> = order
                .iter()
                .map(|&(second, u)| (second, if second { b.flag()[k].block_of(u) } else { a.flag()[k].block_of(u) }))
                .collect();
            Partition::from_tags(&tags)
        })
        .collect();
    Tower::new(a.source() + b.source(), a.target() + b.target(), projection, flag)
}

/// Number of decomposition classes of `y` by number of extra points.
pub fn decomposition_counts(y: &Tower, max_extra: usize) -> Result<Vec<usize>, BodyError> {
    let mut counts = vec![0usize; max_extra + 1];
    for d in supersur_decompositions(y, max_extra)? {
        counts[d.extra_count()] += 1;
    }
    Ok(counts)
}

/// Degree-zero part of the symm hom basis.
pub fn degree_zero_symm(x: &Tower, y: &Tower) -> Result<usize, BodyError> {
    Ok(hom_basis(x, y, Variant::Symm)?.iter().filter(|l| l.degree() == 0).count())
}

/// Result of the multiplicativity checks over disjoint unions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    /// Pairs of ambient maps combined.
    pub ambient_pairs: usize,
    /// Tower pairs whose decomposition groupoids were compared.
    pub groupoid_checks: usize,
    /// Quadruples `(X₁, Y₁, X₂, Y₂)` whose degree-zero hom-spaces were compared.
    pub hom_checks: usize,
    /// The first failure, described in words.
    pub witness: Option<String>,
}

impl MultiplicativityReport {
    /// Whether every comparison agreed.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum()).collect()
}

fn convolve_mass(a: &[Rational64], b: &[Rational64], len: usize) -> Vec<Rational64> {
    (0..len)
        .map(|n| (0..=n).map(|k| a[k] * b[n - k]).fold(Rational64::from_integer(0), |x, y| x + y))
        .collect()
}

/// Checks over all pairs of ambient maps from `maps` that
///
/// * decomposition classes of `Y₁ ⊔ Y₂` are counted by the product of the
///   generating functions of `Y₁` and `Y₂` (by number of extra points),
/// * for one-step ambient surjections the groupoid masses multiply the same
///   way (brute-force census of labelled extensions),
/// * degree-zero symm hom-spaces of unions are tensor products, computed both
///   directly and through the colimit formula,
///
/// for towers whose union has at most `max_interior` points.
pub fn check_multiplicativity(maps: &[setcore::SetMap], max_interior: usize, max_extra: usize) -> Result<MultiplicativityReport, BodyError> {
    let mut report = MultiplicativityReport { ambient_pairs: 0, groupoid_checks: 0, hom_checks: 0, witness: None };
    let towers: Vec<Vec<Tower>> = maps
        .iter()
        .map(|f| crate::tower::enumerate_ske(f, max_interior))
        .collect::<Result<_, _>>()?;
    for (a, fa) in maps.iter().enumerate() {
        for (b, fb) in maps.iter().enumerate().skip(a) {
            report.ambient_pairs += 1;
            let union_map = setcore::SetMap::disjoint_union(&[fa.clone(), fb.clone()]);
            if fa.is_surjective() && fb.is_surjective() {
                let census = |q: &setcore::SetMap| -> (Vec<usize>, Vec<Rational64>) {
                    (0..=max_extra).map(|n| decomposition_census(q, n)).unzip()
                };
                let (ca, ma) = census(fa);
                let (cb, mb) = census(fb);
                let (cu, mu) = census(&union_map);
                if cu != convolve(&ca, &cb, max_extra + 1) || mu != convolve_mass(&ma, &mb, max_extra + 1) {
                    report.witness.get_or_insert(format!("census of {:?} ⊔ {:?}", fa.images(), fb.images()));
                }
            }
            for ya in &towers[a] {
                for yb in &towers[b] {
                    if ya.length() != yb.length() || ya.top() + yb.top() > max_interior {
                        continue;
                    }
                    let union = disjoint_union(ya, yb)?;
                    report.groupoid_checks += 1;
                    let expected = convolve(&decomposition_counts(ya, max_extra)?, &decomposition_counts(yb, max_extra)?, max_extra + 1);
                    if decomposition_counts(&union, max_extra)? != expected {
                        report.witness.get_or_insert(format!("decompositions of {ya} ⊔ {yb}"));
                    }
                    for xa in &towers[a] {
                        for xb in &towers[b] {
                            if xa.length() != ya.length() || xb.length() != ya.length() || xa.top() + xb.top() > max_interior {
                                continue;
                            }
                            let x_union = disjoint_union(xa, xb)?;
                            report.hom_checks += 1;
                            let product = degree_zero_symm(xa, ya)? * degree_zero_symm(xb, yb)?;
                            let direct = degree_zero_symm(&x_union, &union)?;
                            let colimit = compare_colimit(&x_union, &union)?;
                            if direct != product || colimit.colimit.get(&0).copied().unwrap_or(0) != product {
                                report.witness.get_or_insert(format!("degree-zero homs {xa} ⊔ {xb} → {ya} ⊔ {yb}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
