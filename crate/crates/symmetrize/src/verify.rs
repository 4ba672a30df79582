//! Exact checks of the symmetrization: the Maurer–Cartan equation for
//! `δ = L + R`, coassociativity of `as`, the `(W, e_W)` description of
//! `E_R` and equivariance of the operators.

use std::collections::{BTreeMap, HashMap};

use bodies::{ambient_maps, compose_hom, differential_hom, MorphismElement};
use rayon::prelude::*;
use serde::Serialize;
use setcore::{interval, Partition, SetMap};

use crate::cf::{enumerate_cf, CfObject};
use crate::coinvariants::normalize;
use crate::error::SymmError;
use crate::operators::{as_operator_with, e_right, AsConvention, l_operator, perturbation, r_operator, OperatorOptions, Signs};

/// A nonzero component of `d(δ) + δ∘δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residue {
    /// The source object.
    pub source: String,
    /// The target object.
    pub target: String,
    /// Surviving terms as `(coefficient, ladder)`.
    pub terms: Vec<(String, String)>,
}

/// Outcome of the Maurer–Cartan check over the objects of one `C_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    /// The ambient map as its image list.
    pub ambient: Vec<usize>,
    /// The bound on `|U|`.
    pub max_u: usize,
    /// Signs of `L` and `R` in `δ`.
    pub signs: Signs,
    /// Isomorphism classes of `C_f` examined.
    pub objects: usize,
    /// Summands of `δ` over all objects.
    pub summands: usize,
    /// `(source, target)` components examined.
    pub components: usize,
    /// Every nonzero component.
    pub residues: Vec<Residue>,
}

impl ResidueReport {
    /// Whether `d(δ) + δ∘δ` vanishes.
    pub fn holds(&self) -> bool {
        self.residues.is_empty()
    }
}

type Perturbation = BTreeMap<CfObject, MorphismElement>;

fn add_into(out: &mut Perturbation, target: &CfObject, m: MorphismElement) {
    match out.get_mut(target) {
        Some(existing) => existing.add_assign(&m),
        None => {
            out.insert(target.clone(), m);
        }
    }
}

/// `d(δ) + δ∘δ` on every object of `C_f` with `|U| ≤ max_u`, with
/// `δ = c_L·L + c_R·R`. Components are compared in the coinvariants of
/// their targets.
pub fn total_differential_residues(
    f: &SetMap,
    max_u: usize,
    options: OperatorOptions,
    signs: Signs,
) -> Result<ResidueReport, SymmError> {
    let objects = enumerate_cf(f, max_u)?;
    let deltas: Vec<Perturbation> =
        objects.par_iter().map(|x| perturbation(x, options, signs)).collect::<Result<_, _>>()?;
    let index: HashMap<&CfObject, usize> = objects.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let summands = deltas.iter().map(|d| d.len()).sum();
    let per_object: Vec<(usize, Vec<Residue>)> = objects
        .par_iter()
        .zip(&deltas)
        .map(|(x, delta)| -> Result<(usize, Vec<Residue>), SymmError> {
            let mut total = Perturbation::new();
            for (y, m) in delta {
                add_into(&mut total, y, normalize(&differential_hom(m)));
                let k = *index.get(y).ok_or_else(|| SymmError::InvalidLadder(format!("target {y} outside the truncation")))?;
                for (z, n) in &deltas[k] {
                    add_into(&mut total, z, normalize(&compose_hom(n, m)?));
                }
            }
            let components = total.len();
            let residues = total
                .into_iter()
                .map(|(z, m)| (z, normalize(&m)))
                .filter(|(_, m)| !m.is_zero())
                .map(|(z, m)| Residue {
                    source: x.to_string(),
                    target: z.to_string(),
                    terms: m.terms().iter().map(|(l, c)| (c.to_string(), l.to_string())).collect(),
                })
                .collect();
            Ok((components, residues))
        })
        .collect::<Result<_, _>>()?;
    let components = per_object.iter().map(|(c, _)| c).sum();
    let residues = per_object.into_iter().flat_map(|(_, r)| r).collect();
    Ok(ResidueReport {
        ambient: f.images().to_vec(),
        max_u,
        signs,
        objects: objects.len(),
        summands,
        components,
        residues,
    })
}

/// `d(δ) + δ∘δ = 0` for `δ = L − R` with the default options.
pub fn verify_total_differential(f: &SetMap, max_u: usize) -> Result<ResidueReport, SymmError> {
    total_differential_residues(f, max_u, OperatorOptions::default(), Signs::STANDARD)
}

/// The Maurer–Cartan check under each of the four sign assignments.
pub fn scan_signs(f: &SetMap, max_u: usize, options: OperatorOptions) -> Result<Vec<ResidueReport>, SymmError> {
    Signs::all().into_iter().map(|s| total_differential_residues(f, max_u, options, s)).collect()
}

/// Surjections `[s] ↠ [t]` with `1 ≤ s ≤ max_source`, one per isomorphism
/// class.
pub fn surjection_classes(max_source: usize) -> Vec<SetMap> {
    ambient_maps(max_source, max_source).into_iter().filter(|f| f.source().size() > 0 && f.is_surjective()).collect()
}

/// The Maurer–Cartan check for every surjection with `|S| ≤ max_source` and
/// `|U| ≤ |S| + extra`.
pub fn check_total_differential(
    max_source: usize,
    extra: usize,
    options: OperatorOptions,
    signs: Signs,
) -> Result<Vec<ResidueReport>, SymmError> {
    surjection_classes(max_source)
        .iter()
        .map(|f| total_differential_residues(f, f.source().size() + extra, options, signs))
        .collect()
}

/// Outcome of comparing the two iterated `as` expansions of one object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoassociativityReport {
    /// Objects of `C_f` examined, once per factorization.
    pub objects: usize,
    /// Objects whose two expansions differ.
    pub failures: usize,
    /// Triples produced by `(as_{f₂,f₃} after as_{f₁,f₃f₂})`.
    pub triples: usize,
    /// The first object whose two expansions differ.
    pub witness: Option<String>,
}

impl CoassociativityReport {
    /// Whether both bracketings agree on every object.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

type Triple = (CfObject, CfObject, CfObject);

/// The multiset of triples of `((1 ⊗ as) ∘ as)(obj)` for `f = f₃∘f₂∘f₁`.
pub fn expand_right(
    obj: &CfObject,
    (f1, f2, f3): (&SetMap, &SetMap, &SetMap),
    convention: AsConvention,
) -> Result<BTreeMap<Triple, usize>, SymmError> {
    let f32 = f3.after(f2)?;
    let mut out = BTreeMap::new();
    for outer in as_operator_with(obj, f1, &f32, convention)? {
        for inner in as_operator_with(&outer.right, f2, f3, convention)? {
            *out.entry((outer.left.clone(), inner.left, inner.right)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// The multiset of triples of `((as ⊗ 1) ∘ as)(obj)` for `f = f₃∘f₂∘f₁`.
pub fn expand_left(
    obj: &CfObject,
    (f1, f2, f3): (&SetMap, &SetMap, &SetMap),
    convention: AsConvention,
) -> Result<BTreeMap<Triple, usize>, SymmError> {
    let f21 = f2.after(f1)?;
    let mut out = BTreeMap::new();
    for outer in as_operator_with(obj, &f21, f3, convention)? {
        for inner in as_operator_with(&outer.left, f1, f2, convention)? {
            *out.entry((inner.left, inner.right, outer.right.clone())).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Compares both bracketings of `as` on every object of `C_{f₃f₂f₁}` with
/// `|U| ≤ max_u`.
pub fn verify_as_coassociativity(
    f1: &SetMap,
    f2: &SetMap,
    f3: &SetMap,
    max_u: usize,
    convention: AsConvention,
) -> Result<CoassociativityReport, SymmError> {
    let f = f3.after(&f2.after(f1)?)?;
    let objects = enumerate_cf(&f, max_u)?;
    let mut report = CoassociativityReport { objects: objects.len(), failures: 0, triples: 0, witness: None };
    for obj in &objects {
        let right = expand_right(obj, (f1, f2, f3), convention)?;
        let left = expand_left(obj, (f1, f2, f3), convention)?;
        report.triples += right.values().sum::<usize>();
        if right != left {
            report.failures += 1;
            report.witness.get_or_insert_with(|| obj.to_string());
        }
    }
    Ok(report)
}

/// All factorizations `f = f₃∘f₂∘f₁` of a surjection into surjections, with
/// the intermediate sets labelled in order of first appearance.
pub fn triple_factorizations(f: &SetMap) -> Vec<(SetMap, SetMap, SetMap)> {
    let s = f.source().size();
    let ker = f.kernel();
    let mut out = Vec::new();
    for e1 in interval(&Partition::discrete(s), &ker).expect("ω lies above ker f") {
        for e2 in interval(&e1, &ker).expect("e₁ lies above ker f") {
            let f1 = e1.projection();
            let f21 = e2.projection();
            let f2 = induced(&f1, &f21);
            let f3 = induced(&f21, f);
            out.push((f1, f2, f3));
        }
    }
    out
}

/// The map `h` with `h∘a = b`, for a surjection `a` whose kernel refines `ker b`.
fn induced(a: &SetMap, b: &SetMap) -> SetMap {
    let mut images = vec![0; a.target().size()];
    for x in 0..a.source().size() {
        images[a.image(x)] = b.image(x);
    }
    SetMap::from_images(b.target().size(), images).expect("images lie in the target")
}

/// Coassociativity for every surjection with `|S| ≤ max_source`, every
/// factorization into three surjections and `|U| ≤ |S| + extra`.
pub fn check_coassociativity(
    max_source: usize,
    extra: usize,
    convention: AsConvention,
) -> Result<CoassociativityReport, SymmError> {
    let mut total = CoassociativityReport { objects: 0, failures: 0, triples: 0, witness: None };
    for f in surjection_classes(max_source) {
        for (f1, f2, f3) in triple_factorizations(&f) {
            let r = verify_as_coassociativity(&f1, &f2, &f3, f.source().size() + extra, convention)?;
            total.objects += r.objects;
            total.failures += r.failures;
            total.triples += r.triples;
            if total.witness.is_none() {
                total.witness = r.witness.map(|w| format!("{w} via {:?}∘{:?}∘{:?}", f3.images(), f2.images(), f1.images()));
            }
        }
    }
    Ok(total)
}

/// `|E_R(i, p)|` and the number of pairs `(W, e_W)` with `W ∩ i(S) = ∅` and
/// `e_W` a relation on `W` through which `p|_W` passes.
pub fn e_right_double_count(obj: &CfObject) -> (usize, usize) {
    let s = obj.source();
    let extras: Vec<usize> = (s..obj.top()).collect();
    let p = obj.tower().projection();
    let mut pairs = 0;
    for mask in 0u32..(1 << extras.len()) {
        let w: Vec<usize> = extras.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &u)| u).collect();
        let tags: Vec<usize> = w.iter().map(|&u| p[u]).collect();
        let kernel = Partition::from_tags(&tags);
        pairs += interval(&Partition::discrete(w.len()), &kernel).expect("ω lies above ker p|_W").len();
    }
    (e_right(obj).len(), pairs)
}

/// Whether `L` and `R` commute with relabelling the extra points of `obj`
/// by every permutation: the operators of the relabelled object equal those
/// of `obj` with every ladder carried along.
pub fn check_equivariance(obj: &CfObject, options: OperatorOptions) -> Result<bool, SymmError> {
    let s = obj.source();
    let base = [l_operator(obj, options)?, r_operator(obj, options)?];
    for sigma in setcore::all_permutations(obj.top() - s) {
        let perm: Vec<usize> = (0..s).chain(sigma.iter().map(|&x| x + s)).collect();
        let moved = obj.relabel(&perm);
        let actual = [l_operator(&moved, options)?, r_operator(&moved, options)?];
        for (expected, actual) in base.iter().zip(&actual) {
            let mut want = Perturbation::new();
            for summand in expected {
                let mut m = MorphismElement::zero(moved.tower().clone(), summand.target.tower().clone(), options.variant);
                for (l, c) in summand.morphism.terms() {
                    m.add_term(l.resource(&perm), *c);
                }
                add_into(&mut want, &summand.target, normalize(&m));
            }
            let mut got = Perturbation::new();
            for summand in actual {
                add_into(&mut got, &summand.target, summand.morphism.clone());
            }
            want.retain(|_, m| !m.is_zero());
            got.retain(|_, m| !m.is_zero());
            if want != got {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
