//! Ladder bases of hom-complexes, their differential and composition.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use setcore::{injections, Partition};

use crate::error::BodyError;
use crate::tower::{refinements, strictly_between, Tower};

/// Which body the hom-complex lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// A-steps must be suitable squares.
    Presymm,
    /// A-steps may be arbitrary commutative squares.
    Symm,
}

/// Kind of a ladder step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    /// Collapse `L(j_r, p_r)`; degree +1; the target level stays.
    L,
    /// Square `A(j_r, p_r, j_{r+1}, q)`; degree 0; the target level advances.
    A,
}

/// A basis element of `H(X, Y)`: a refinement `Z` of `X` (a flag on the top
/// set of `X` containing the flag of `X`) and an injection `j₀: V₀ ↪ U₀` of
/// top sets. The injections `j_r` between levels are induced by `j₀`, and the
/// step kinds are determined by the data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ladder {
    refinement: Vec<Partition>,
    j0: Vec<usize>,
    steps: Vec<Step>,
}

impl Ladder {
    /// The refinement flag `Z`.
    pub fn refinement(&self) -> &[Partition] {
        &self.refinement
    }

    /// The injection of top sets.
    pub fn j0(&self) -> &[usize] {
        &self.j0
    }

    /// Step kinds.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of L-steps.
    pub fn degree(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::L).count()
    }

    /// Same refinement and steps, with `j₀` precomposed by a relabelling of
    /// the target top set (`perm[v]` is the new label of `v`).
    pub fn retarget(&self, perm: &[usize]) -> Ladder {
        let mut j0 = vec![0; self.j0.len()];
        for (v, &image) in self.j0.iter().enumerate() {
            j0[perm[v]] = image;
        }
        Ladder { refinement: self.refinement.clone(), j0, steps: self.steps.clone() }
    }

    /// Same data with the source top set relabelled (`perm[u]` is the new
    /// label of `u`).
    pub fn resource(&self, perm: &[usize]) -> Ladder {
        let n = perm.len();
        let mut inverse = vec![0; n];
        for (u, &v) in perm.iter().enumerate() {
            inverse[v] = u;
        }
        let refinement = self
            .refinement
            .iter()
            .map(|e| Partition::from_tags(&(0..n).map(|v| e.block_of(inverse[v])).collect::<Vec<_>>()))
            .collect();
        let j0 = self.j0.iter().map(|&u| perm[u]).collect();
        Ladder { refinement, j0, steps: self.steps.clone() }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag: Vec<String> = self.refinement.iter().map(|e| e.compact()).collect();
        let j0: Vec<String> = self.j0.iter().map(|u| u.to_string()).collect();
        let steps: String = self.steps.iter().map(|s| if *s == Step::L { 'L' } else { 'A' }).collect();
        write!(f, "{} | j={} | {}", flag.join(">"), j0.join(","), steps)
    }
}

fn pullback(e: &Partition, j0: &[usize]) -> Partition {
    Partition::from_tags(&j0.iter().map(|&u| e.block_of(u)).collect::<Vec<_>>())
}

/// Suitability of the square at one step: `upper` and `lower` are consecutive
/// partitions of the refinement, `hits` the image of `j₀`.
fn step_is_suitable(upper: &Partition, lower: &Partition, hits: &[usize]) -> bool {
    let n = upper.size();
    let mut hit = vec![false; upper.num_blocks()];
    for &h in hits {
        hit[upper.block_of(h)] = true;
    }
    let mut seen = vec![false; upper.num_blocks()];
    let mut total = vec![0usize; lower.num_blocks()];
    let mut hit_count = vec![0usize; lower.num_blocks()];
    for x in 0..n {
        let b = upper.block_of(x);
        if seen[b] {
            continue;
        }
        seen[b] = true;
        let l = lower.block_of(x);
        total[l] += 1;
        if hit[b] {
            hit_count[l] += 1;
        }
    }
    hit_count.iter().zip(&total).all(|(&h, &t)| h < 2 || h == t)
}

/// Step kinds of the ladder `(refinement, j₀)` from `x` to `y`, or `None` when
/// the data does not form a ladder.
pub fn ladder_steps(
    x: &Tower,
    y: &Tower,
    refinement: &[Partition],
    j0: &[usize],
    variant: Variant,
) -> Option<Vec<Step>> {
    if j0.len() != y.top() || (0..y.source()).any(|s| j0[s] != s) {
        return None;
    }
    if j0.iter().enumerate().any(|(v, &u)| x.projection()[u] != y.projection()[v]) {
        return None;
    }
    let target_flag = y.flag();
    let mut level = 0;
    let mut steps = Vec::with_capacity(refinement.len().saturating_sub(1));
    for r in 0..refinement.len() - 1 {
        let next = pullback(&refinement[r + 1], j0);
        if next == target_flag[level] {
            steps.push(Step::L);
        } else if level + 1 < target_flag.len() && next == target_flag[level + 1] {
            if variant == Variant::Presymm && !step_is_suitable(&refinement[r], &refinement[r + 1], j0) {
                return None;
            }
            steps.push(Step::A);
            level += 1;
        } else {
            return None;
        }
    }
    (level + 1 == target_flag.len()).then_some(steps)
}

/// Builds a ladder after validating it.
pub fn make_ladder(
    x: &Tower,
    y: &Tower,
    refinement: Vec<Partition>,
    j0: Vec<usize>,
    variant: Variant,
) -> Option<Ladder> {
    let steps = ladder_steps(x, y, &refinement, &j0, variant)?;
    Some(Ladder { refinement, j0, steps })
}

/// All injections `V₀ ↪ U₀` fixing the image of `S` and compatible with the
/// projections.
fn candidate_injections(x: &Tower, y: &Tower) -> Vec<Vec<usize>> {
    let s = x.source();
    let extra_v = y.top() - s;
    let extra_u = x.top() - s;
    if extra_v > extra_u {
        return Vec::new();
    }
    injections(extra_v, extra_u)
        .into_iter()
        .map(|inj| (0..s).chain(inj.iter().map(|&u| u + s)).collect::<Vec<_>>())
        .filter(|j0: &Vec<usize>| j0.iter().enumerate().all(|(v, &u)| x.projection()[u] == y.projection()[v]))
        .collect()
}

/// The basis of `H(X, Y)` in deterministic order; empty when the ambient maps
/// differ.
pub fn hom_basis(x: &Tower, y: &Tower, variant: Variant) -> Result<Vec<Ladder>, BodyError> {
    if !x.same_ambient(y) {
        return Ok(Vec::new());
    }
    let js = candidate_injections(x, y);
    if js.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for refinement in refinements(x)? {
        if refinement.len() < y.flag().len() {
            continue;
        }
        for j0 in &js {
            if let Some(l) = make_ladder(x, y, refinement.clone(), j0.clone(), variant) {
                out.push(l);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Basis of `H(X, Y)` restricted to presymm ladders.
pub fn hom_basis_presymm(x: &Tower, y: &Tower) -> Result<Vec<Ladder>, BodyError> {
    hom_basis(x, y, Variant::Presymm)
}

/// A formal rational combination of ladders from `source` to `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismElement {
    source: Tower,
    target: Tower,
    variant: Variant,
    #[serde(serialize_with = "term_list")]
    terms: BTreeMap<Ladder, Rational64>,
}

fn term_list<S: serde::Serializer>(terms: &BTreeMap<Ladder, Rational64>, s: S) -> Result<S::Ok, S::Error> {
    let list: Vec<(String, String)> = terms.iter().map(|(l, c)| (c.to_string(), l.to_string())).collect();
    list.serialize(s)
}

impl MorphismElement {
    /// The zero element.
    pub fn zero(source: Tower, target: Tower, variant: Variant) -> Self {
        Self { source, target, variant, terms: BTreeMap::new() }
    }

    /// A single ladder with coefficient one.
    pub fn from_ladder(source: Tower, target: Tower, variant: Variant, ladder: Ladder) -> Self {
        let mut m = Self::zero(source, target, variant);
        m.add_term(ladder, Rational64::one());
        m
    }

    /// Source tower.
    pub fn source(&self) -> &Tower {
        &self.source
    }

    /// Target tower.
    pub fn target(&self) -> &Tower {
        &self.target
    }

    /// Body variant.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Nonzero terms.
    pub fn terms(&self) -> &BTreeMap<Ladder, Rational64> {
        &self.terms
    }

    /// Whether all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · ladder`, pruning zero coefficients.
    pub fn add_term(&mut self, ladder: Ladder, coeff: Rational64) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(ladder).or_insert_with(Rational64::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self.terms.iter().find(|(_, c)| c.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    /// Adds another element with the same source and target.
    pub fn add_assign(&mut self, other: &MorphismElement) {
        for (l, c) in &other.terms {
            self.add_term(l.clone(), *c);
        }
    }

    /// Multiplies by a scalar.
    pub fn scaled(&self, c: Rational64) -> MorphismElement {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.variant);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), *v * c);
        }
        out
    }

    /// The common degree of the terms; `None` for the zero element.
    pub fn degree(&self) -> Result<Option<usize>, BodyError> {
        let mut degree = None;
        for l in self.terms.keys() {
            let d = l.degree();
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(BodyError::Inhomogeneous(e, d)),
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Transports the element along an isomorphism of targets given by the
    /// relabelling `perm` of the target top set; `new_target` is the image.
    pub fn retarget(&self, perm: &[usize], new_target: Tower) -> MorphismElement {
        let mut out = Self::zero(self.source.clone(), new_target, self.variant);
        for (l, c) in &self.terms {
            out.add_term(l.retarget(perm), *c);
        }
        out
    }
}

fn sign(count: usize) -> Rational64 {
    if count.is_multiple_of(2) {
        Rational64::one()
    } else {
        -Rational64::one()
    }
}

/// The differential of a single ladder.
///
/// Each step is expanded by inserting one partition strictly between
/// consecutive members of the refinement: an L-step becomes `L·L`
/// (`dL = Σ L·L` over proper two-step factorizations keeping the injection),
/// an A-step becomes `L·A − A·L` (`dA = Σ_{L(Q)} f_l − Σ_{R(Q)} g_r`). Products
/// are written in order of application and the term from step `r` carries the
/// sign `(−1)^{#L-steps before r}`.
pub fn differential_ladder(x: &Tower, y: &Tower, ladder: &Ladder, variant: Variant) -> MorphismElement {
    let mut out = MorphismElement::zero(x.clone(), y.clone(), variant);
    let mut l_before = 0;
    for r in 0..ladder.steps.len() {
        let upper = &ladder.refinement[r];
        let lower = &ladder.refinement[r + 1];
        for e in strictly_between(upper, lower) {
            let mut refinement = ladder.refinement.clone();
            refinement.insert(r + 1, e);
            let Some(new) = make_ladder(x, y, refinement, ladder.j0.clone(), variant) else {
                continue;
            };
            let pair = (new.steps[r], new.steps[r + 1]);
            let base = sign(l_before);
            let coeff = match (ladder.steps[r], pair) {
                (Step::L, (Step::L, Step::L)) => base,
                (Step::A, (Step::L, Step::A)) => base,
                (Step::A, (Step::A, Step::L)) => -base,
                _ => continue,
            };
            out.add_term(new, coeff);
        }
        if ladder.steps[r] == Step::L {
            l_before += 1;
        }
    }
    out
}

/// The differential of a morphism element.
pub fn differential_hom(m: &MorphismElement) -> MorphismElement {
    let mut out = MorphismElement::zero(m.source.clone(), m.target.clone(), m.variant);
    for (l, c) in &m.terms {
        let d = differential_ladder(&m.source, &m.target, l, m.variant);
        for (k, v) in &d.terms {
            out.add_term(k.clone(), *v * *c);
        }
    }
    out
}

/// Composite of two ladders, `f: X → Y` applied first and `g: Y → W` second.
///
/// The refinement of `Y` carried by `g` is pushed through the A-steps of `f`
/// (a sum over chains of partitions of `U₀` pulling back to the inserted
/// partitions). The ladders are then pasted: a step stays an A-step when both
/// factors are A-steps and becomes an L-step otherwise. Moving each L-step of
/// `g` past the later L-steps of `f` contributes a Koszul sign.
pub fn compose_ladders(
    x: &Tower,
    y: &Tower,
    w: &Tower,
    f: &Ladder,
    g: &Ladder,
    variant: Variant,
) -> Result<MorphismElement, BodyError> {
    let mut out = MorphismElement::zero(x.clone(), w.clone(), variant);
    let y_flag = y.flag();
    let psi = &g.refinement;
    // The refinement ψ of Y split by the steps of Y.
    let mut inserted: Vec<Vec<Partition>> = vec![Vec::new(); y_flag.len() - 1];
    let mut m = 0;
    for e in &psi[1..] {
        if *e == y_flag[m + 1] {
            m += 1;
        } else {
            inserted[m].push(e.clone());
        }
    }
    // For each A-step of f, the chains pushed into that step.
    let mut options: Vec<(usize, Vec<Vec<Partition>>)> = Vec::new();
    let mut level = 0;
    for (r, step) in f.steps.iter().enumerate() {
        if *step != Step::A {
            continue;
        }
        let wanted = &inserted[level];
        level += 1;
        if wanted.is_empty() {
            continue;
        }
        let between = strictly_between(&f.refinement[r], &f.refinement[r + 1]);
        let candidates: Vec<Vec<&Partition>> = wanted
            .iter()
            .map(|c| between.iter().filter(|e| pullback(e, &f.j0) == *c).collect())
            .collect();
        let mut chains: Vec<Vec<Partition>> = vec![Vec::new()];
        for cands in &candidates {
            let mut next = Vec::new();
            for chain in &chains {
                for e in cands {
                    if chain.last().is_none_or(|prev| prev.gt(e)) {
                        let mut c = chain.clone();
                        c.push((*e).clone());
                        next.push(c);
                    }
                }
            }
            chains = next;
        }
        if chains.is_empty() {
            return Ok(out);
        }
        options.push((r, chains));
    }
    let y_refined = y.with_flag(psi.clone())?;
    let composite_j0: Vec<usize> = g.j0.iter().map(|&v| f.j0[v]).collect();
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut refinement = Vec::with_capacity(f.refinement.len() + psi.len());
        let mut next_option = 0;
        for (r, e) in f.refinement.iter().enumerate() {
            refinement.push(e.clone());
            if next_option < options.len() && options[next_option].0 == r {
                refinement.extend(options[next_option].1[choice[next_option]].iter().cloned());
                next_option += 1;
            }
        }
        let f_steps = ladder_steps(x, &y_refined, &refinement, &f.j0, variant).ok_or_else(|| {
            BodyError::AnomalousComposition(format!("pushed refinement of {f} is not a ladder"))
        })?;
        let composite = make_ladder(x, w, refinement, composite_j0.clone(), variant).ok_or_else(|| {
            BodyError::AnomalousComposition(format!("pasting {f} with {g} is not a ladder"))
        })?;
        // Position in f' of the A-step realising each step of ψ.
        let a_positions: Vec<usize> = f_steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::A)
            .map(|(r, _)| r)
            .collect();
        let mut l_after = vec![0usize; f_steps.len() + 1];
        for r in (0..f_steps.len()).rev() {
            l_after[r] = l_after[r + 1] + usize::from(f_steps[r] == Step::L);
        }
        let crossings: usize = g
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::L)
            .map(|(m, _)| l_after[a_positions[m] + 1])
            .sum();
        out.add_term(composite, sign(crossings));

        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < options[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Composite in order of application: `f` first, then `g`.
pub fn compose_in_order(f: &MorphismElement, g: &MorphismElement) -> Result<MorphismElement, BodyError> {
    if f.target != g.source {
        return Err(BodyError::NotComposable("the target of the first factor differs from the source of the second".into()));
    }
    let mut out = MorphismElement::zero(f.source.clone(), g.target.clone(), f.variant);
    for (fl, fc) in &f.terms {
        for (gl, gc) in &g.terms {
            let c = compose_ladders(&f.source, &f.target, &g.target, fl, gl, f.variant)?;
            for (l, v) in &c.terms {
                out.add_term(l.clone(), *v * *fc * *gc);
            }
        }
    }
    Ok(out)
}

/// The composite `g∘f` with the Koszul convention
/// `g∘f = (−1)^{|f||g|} · (f then g)`, so that
/// `d(g∘f) = dg∘f + (−1)^{|g|} g∘df`.
pub fn compose_hom(g: &MorphismElement, f: &MorphismElement) -> Result<MorphismElement, BodyError> {
    let mut out = MorphismElement::zero(f.source.clone(), g.target.clone(), f.variant);
    for (fl, fc) in &f.terms {
        for (gl, gc) in &g.terms {
            let c = compose_ladders(&f.source, &f.target, &g.target, fl, gl, f.variant)?;
            let s = sign(fl.degree() * gl.degree());
            for (l, v) in &c.terms {
                out.add_term(l.clone(), *v * *fc * *gc * s);
            }
        }
    }
    if f.target != g.source {
        return Err(BodyError::NotComposable("the target of f differs from the source of g".into()));
    }
    Ok(out)
}

/// The identity of a tower: the trivial refinement with `j₀ = id`.
pub fn identity(x: &Tower, variant: Variant) -> MorphismElement {
    let ladder = make_ladder(x, x, x.flag().to_vec(), (0..x.top()).collect(), variant)
        .expect("the identity is a ladder");
    MorphismElement::from_ladder(x.clone(), x.clone(), variant, ladder)
}

/// The hom-complex `H(X, Y)` as a cohomologically graded complex (degree =
/// number of L-steps).
pub fn hom_complex(x: &Tower, y: &Tower, variant: Variant) -> Result<chainlab::FormalComplex, BodyError> {
    let basis = hom_basis(x, y, variant)?;
    let mut builder = chainlab::ComplexBuilder::new(chainlab::Orientation::Cohomological);
    for l in &basis {
        builder.add_generator(l.degree() as i64, chainlab::BasisKey::new(l.to_string()));
    }
    for l in &basis {
        let d = differential_ladder(x, y, l, variant);
        for (k, c) in d.terms() {
            let coeff = chainlab::Q::new(num_bigint::BigInt::from(*c.numer()), num_bigint::BigInt::from(*c.denom()));
            builder.add_entry(
                l.degree() as i64,
                chainlab::BasisKey::new(l.to_string()),
                chainlab::BasisKey::new(k.to_string()),
                coeff,
            );
        }
    }
    builder.build().map_err(|e| BodyError::AnomalousComposition(e.to_string()))
}
