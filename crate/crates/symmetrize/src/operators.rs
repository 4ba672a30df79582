//! The index sets `E_L`, `E_R`, `E(i, p, f₁, f₂)` and the operators `L`, `R`
//! and `as` built from them.

use std::collections::BTreeMap;

use bodies::{make_ladder, MorphismElement, Tower, Variant};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use setcore::{interval, Partition, SetMap};

use crate::cf::CfObject;
use crate::coinvariants::normalize;
use crate::error::SymmError;

/// How the choice of a section `U/e ↪ U` in `L_e` is resolved.
///
/// The section is forced on classes meeting `i(S)` and free on the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionWeighting {
    /// Each section contributes `1 / #sections`.
    Average,
    /// Each section contributes `1`.
    Sum,
}

/// Options shared by the operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorOptions {
    /// Body in which the morphisms are formed.
    pub variant: Variant,
    /// Treatment of the free section choices in `L_e`.
    pub weighting: SectionWeighting,
}

impl Default for OperatorOptions {
    fn default() -> Self {
        Self { variant: Variant::Symm, weighting: SectionWeighting::Average }
    }
}

/// One summand `I(i_e, p_e) ∘ X_e` of `L` or `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    /// The equivalence relation indexing the summand.
    pub e: Partition,
    /// Canonical representative of the target object.
    pub target: CfObject,
    /// The degree-one morphism into `target`, modulo `Aut(target)`.
    pub morphism: MorphismElement,
}

fn relations_through_p(obj: &CfObject) -> Vec<Partition> {
    interval(&Partition::discrete(obj.top()), &obj.kernel()).expect("ω lies above ker p")
}

fn restricts_to(e: &Partition, s: usize, tags: &SetMap) -> bool {
    (0..s).all(|a| (0..s).all(|b| e.same_block(a, b) == (tags.image(a) == tags.image(b))))
}

/// `E_L(i, p)`: relations `e` such that `p` passes through `U/e` and `π_e∘i`
/// is injective.
pub fn e_left(obj: &CfObject) -> Vec<Partition> {
    let s = obj.source();
    relations_through_p(obj)
        .into_iter()
        .filter(|e| (0..s).all(|a| (0..a).all(|b| !e.same_block(a, b))))
        .collect()
}

/// `E_R(i, p)`: relations `e` such that `p` passes through `U/e` and the
/// restriction of `e` to `S` is the relation determined by `f`.
pub fn e_right(obj: &CfObject) -> Vec<Partition> {
    let f = obj.ambient();
    relations_through_p(obj).into_iter().filter(|e| restricts_to(e, obj.source(), &f)).collect()
}

/// `E(i, p, f₁, f₂)`: relations `e` such that `p` passes through `U/e` and
/// the restriction of `e` to `S` is the relation determined by `f₁`.
pub fn e_as(obj: &CfObject, f1: &SetMap) -> Vec<Partition> {
    relations_through_p(obj).into_iter().filter(|e| restricts_to(e, obj.source(), f1)).collect()
}

/// `V_e`: the points of `U` equivalent to a point of `i(S)`, increasing.
pub fn saturation(obj: &CfObject, e: &Partition) -> Vec<usize> {
    let s = obj.source();
    (0..obj.top()).filter(|&u| (0..s).any(|x| e.same_block(u, x))).collect()
}

/// Labels of `U/e`: the class of `i(x)` gets `source_label(x)` and the other
/// classes get `first_free, first_free + 1, …` in order of first appearance.
/// Returns the label of every point and the number of labels.
fn quotient_labels(obj: &CfObject, e: &Partition, source_label: impl Fn(usize) -> usize, first_free: usize) -> (Vec<usize>, usize) {
    let mut by_block = vec![usize::MAX; e.num_blocks()];
    for x in 0..obj.source() {
        by_block[e.block_of(x)] = source_label(x);
    }
    let mut next = first_free;
    let labels = (0..obj.top())
        .map(|u| {
            let b = e.block_of(u);
            if by_block[b] == usize::MAX {
                by_block[b] = next;
                next += 1;
            }
            by_block[b]
        })
        .collect();
    (labels, next)
}

/// The refinement `ω ≥ e ≥ ker p` with repetitions removed.
fn refinement_through(obj: &CfObject, e: &Partition) -> Vec<Partition> {
    let mut z = vec![Partition::discrete(obj.top())];
    for x in [e.clone(), obj.kernel()] {
        if *z.last().expect("nonempty") != x {
            z.push(x);
        }
    }
    z
}

fn invalid(kind: &str, obj: &CfObject, e: &Partition) -> SymmError {
    SymmError::InvalidLadder(format!("{kind} at {obj} with e = {}", e.compact()))
}

/// `L_e`: the as-refinement of `R_p` through `U/e` followed by the collapse
/// `L(i, π_e)`, as a morphism into `(i_e, p_e)`; zero when `e = ω`.
pub fn l_summand(obj: &CfObject, e: &Partition, options: OperatorOptions) -> Result<Option<Summand>, SymmError> {
    if e.is_discrete() {
        return Ok(None);
    }
    let (labels, size) = quotient_labels(obj, e, |x| x, obj.source());
    let mut p_e = vec![0; size];
    for u in 0..obj.top() {
        p_e[labels[u]] = obj.tower().projection()[u];
    }
    let target = Tower::one_step(obj.source(), &SetMap::from_images(obj.target(), p_e)?)?;
    let mut choices: Vec<Vec<usize>> = vec![Vec::new(); size];
    for u in 0..obj.top() {
        if labels[u] >= obj.source() || u == labels[u] {
            choices[labels[u]].push(u);
        }
    }
    let count: i64 = choices.iter().map(|c| c.len() as i64).product();
    let coefficient = match options.weighting {
        SectionWeighting::Average => Rational64::new(1, count),
        SectionWeighting::Sum => Rational64::from_integer(1),
    };
    let source = obj.tower().clone();
    let mut element = MorphismElement::zero(source.clone(), target.clone(), options.variant);
    let z = refinement_through(obj, e);
    let mut index = vec![0usize; size];
    loop {
        let j0: Vec<usize> = index.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        let ladder = make_ladder(&source, &target, z.clone(), j0, options.variant)
            .ok_or_else(|| invalid("L_e is not a ladder", obj, e))?;
        if ladder.degree() != 1 {
            return Err(invalid("L_e does not have degree one", obj, e));
        }
        element.add_term(ladder, coefficient);
        let mut k = 0;
        while k < size {
            index[k] += 1;
            if index[k] < choices[k].len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
        if k == size {
            break;
        }
    }
    summand(e, element).map(Some)
}

/// `R_e`: restriction to `V_e`, the suitable square across `π_e`, and the
/// collapse across the bijection `V/e_V → T`, as a morphism into
/// `(i_e, p|_V)`; zero when `W_e` is empty.
pub fn r_summand(obj: &CfObject, e: &Partition, options: OperatorOptions) -> Result<Option<Summand>, SymmError> {
    let v = saturation(obj, e);
    if v.len() == obj.top() {
        return Ok(None);
    }
    let p = obj.tower().projection();
    let p_v = SetMap::from_images(obj.target(), v.iter().map(|&u| p[u]).collect())?;
    let target = Tower::one_step(obj.source(), &p_v)?;
    let source = obj.tower().clone();
    let ladder = make_ladder(&source, &target, refinement_through(obj, e), v, options.variant)
        .ok_or_else(|| invalid("R_e is not a ladder", obj, e))?;
    if ladder.degree() != 1 {
        return Err(invalid("R_e does not have degree one", obj, e));
    }
    let element = MorphismElement::from_ladder(source, target, options.variant, ladder);
    summand(e, element).map(Some)
}

fn summand(e: &Partition, element: MorphismElement) -> Result<Summand, SymmError> {
    let morphism = normalize(&element);
    let target = CfObject::from_tower(morphism.target().clone())?;
    Ok(Summand { e: e.clone(), target, morphism })
}

/// `L(i, p) = Σ_{e ∈ E_L} I(i_e, p_e) L_e`, one summand per contributing `e`.
pub fn l_operator(obj: &CfObject, options: OperatorOptions) -> Result<Vec<Summand>, SymmError> {
    let mut out = Vec::new();
    for e in e_left(obj) {
        out.extend(l_summand(obj, &e, options)?);
    }
    Ok(out)
}

/// `R(i, p) = Σ_{e ∈ E_R} I(i_e, p_e) R_e`, one summand per contributing `e`.
pub fn r_operator(obj: &CfObject, options: OperatorOptions) -> Result<Vec<Summand>, SymmError> {
    let mut out = Vec::new();
    for e in e_right(obj) {
        out.extend(r_summand(obj, &e, options)?);
    }
    Ok(out)
}

/// Signs with which `L` and `R` enter the perturbation `δ = c_L·L + c_R·R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signs {
    /// Coefficient of `L`.
    pub left: i64,
    /// Coefficient of `R`.
    pub right: i64,
}

impl Signs {
    /// `δ = L + R`.
    pub const PLUS: Signs = Signs { left: 1, right: 1 };

    /// `δ = L − R`, the assignment under which `d(δ) + δ∘δ` vanishes with
    /// the composition and differential conventions of the bodies engine.
    pub const STANDARD: Signs = Signs { left: 1, right: -1 };

    /// The four assignments `(±1, ±1)`, starting with `(+1, +1)`.
    pub fn all() -> [Signs; 4] {
        [
            Signs { left: 1, right: 1 },
            Signs { left: 1, right: -1 },
            Signs { left: -1, right: 1 },
            Signs { left: -1, right: -1 },
        ]
    }
}

/// `δ(i, p) = c_L·L(i, p) + c_R·R(i, p)`, grouped by canonical target.
pub fn perturbation(
    obj: &CfObject,
    options: OperatorOptions,
    signs: Signs,
) -> Result<BTreeMap<CfObject, MorphismElement>, SymmError> {
    let mut out: BTreeMap<CfObject, MorphismElement> = BTreeMap::new();
    let parts = [(l_operator(obj, options)?, signs.left), (r_operator(obj, options)?, signs.right)];
    for (summands, c) in parts {
        for s in summands {
            let term = s.morphism.scaled(Rational64::from_integer(c));
            match out.get_mut(&s.target) {
                Some(m) => m.add_assign(&term),
                None => {
                    out.insert(s.target, term);
                }
            }
        }
    }
    out.retain(|_, m| !m.is_zero());
    Ok(out)
}

/// One summand `I(j_e, q_e) I(i_e, p_e) as(i, p, e)` of `as(i, p, f₁, f₂)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AsSummand {
    /// The equivalence relation indexing the summand.
    pub e: Partition,
    /// Canonical form of `(i_e, p_e)` in `C_{f₁}`.
    pub left: CfObject,
    /// Canonical form of `(j_e, q_e)` in `C_{f₂}`.
    pub right: CfObject,
}

fn check_factorization(f: &SetMap, f1: &SetMap, f2: &SetMap) -> Result<(), SymmError> {
    if !f1.is_surjective() || !f2.is_surjective() {
        return Err(SymmError::InvalidFactorization("both factors must be surjective".into()));
    }
    let composite = f2.after(f1).map_err(|e| SymmError::InvalidFactorization(e.to_string()))?;
    if composite.images() != f.images() || composite.target().size() != f.target().size() {
        return Err(SymmError::InvalidFactorization("f₂∘f₁ differs from f".into()));
    }
    Ok(())
}

/// Which relations on the discarded points `W_e` enter `as(i, p, f₁, f₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsConvention {
    /// Every relation `e` of `E(i, p, f₁, f₂)`.
    Literal,
    /// Only relations that are discrete on `W_e`.
    DiscreteDiscarded,
}

/// `as(i, p, f₁, f₂)` over the literal index set.
pub fn as_operator(obj: &CfObject, f1: &SetMap, f2: &SetMap) -> Result<Vec<AsSummand>, SymmError> {
    as_operator_with(obj, f1, f2, AsConvention::Literal)
}

/// `as(i, p, f₁, f₂)`: the summands over `E(i, p, f₁, f₂)` whose two targets
/// lie in `C_{f₁}` and `C_{f₂}` and whose square map has degree zero (the
/// relation `e` is nontrivial on `V_e` unless it is discrete).
pub fn as_operator_with(
    obj: &CfObject,
    f1: &SetMap,
    f2: &SetMap,
    convention: AsConvention,
) -> Result<Vec<AsSummand>, SymmError> {
    check_factorization(&obj.ambient(), f1, f2)?;
    let r = f1.target().size();
    let mut out = Vec::new();
    for e in e_as(obj, f1) {
        let v = saturation(obj, &e);
        if e.is_discrete() != (v.len() == r) {
            continue;
        }
        if convention == AsConvention::DiscreteDiscarded {
            let w: Vec<usize> = (0..obj.top()).filter(|u| v.binary_search(u).is_err()).collect();
            if w.iter().enumerate().any(|(k, &a)| w[..k].iter().any(|&b| e.same_block(a, b))) {
                continue;
            }
        }
        let (labels, size) = quotient_labels(obj, &e, |x| f1.image(x), r);
        let left_p = SetMap::from_images(r, v.iter().map(|&u| labels[u]).collect())?;
        let Ok(left) = CfObject::from_tower(Tower::one_step(obj.source(), &left_p)?) else {
            continue;
        };
        let mut q = vec![0; size];
        for u in 0..obj.top() {
            q[labels[u]] = obj.tower().projection()[u];
        }
        let right_p = SetMap::from_images(obj.target(), q)?;
        let Ok(right) = CfObject::from_tower(Tower::one_step(r, &right_p)?) else {
            continue;
        };
        out.push(AsSummand { e, left: left.canonical_form().0, right: right.canonical_form().0 });
    }
    Ok(out)
}
