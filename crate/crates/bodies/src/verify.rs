//! Exhaustive checks of the hom-complexes and composition over small ambient
//! maps.

use rayon::prelude::*;
use serde::Serialize;
use setcore::SetMap;

use crate::error::BodyError;
use crate::hom::{
    compose_hom, differential_hom, hom_basis, MorphismElement, Variant,
};
use crate::tower::{enumerate_ske, Tower};

/// One representative `[s] → [t]` of every isomorphism class of maps with
/// `s ≤ max_source` and `1 ≤ t ≤ max_target`. A class is determined by the
/// multiset of fiber sizes; fibers are listed in decreasing size.
pub fn ambient_maps(max_source: usize, max_target: usize) -> Vec<SetMap> {
    fn fiber_profiles(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in (0..=cap.min(total)).rev() {
            for mut rest in fiber_profiles(total - first, parts - 1, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for s in 0..=max_source {
        for t in 1..=max_target {
            for profile in fiber_profiles(s, t, s) {
                let images: Vec<usize> =
                    profile.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n)).collect();
                out.push(SetMap::from_images(t, images).expect("images lie in the target"));
            }
        }
    }
    out
}

/// A failed identity, reported with the objects and morphisms involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which identity failed.
    pub check: String,
    /// Towers involved.
    pub towers: Vec<String>,
    /// Ladders involved.
    pub ladders: Vec<String>,
    /// The nonzero defect.
    pub defect: Vec<(String, String)>,
}

fn defect_terms(m: &MorphismElement) -> Vec<(String, String)> {
    m.terms().iter().map(|(l, c)| (c.to_string(), l.to_string())).collect()
}

/// Summary of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Number of towers over all ambient maps.
    pub towers: usize,
    /// Number of instances examined (pairs, triples or quadruples of towers).
    pub instances: usize,
    /// Number of basis ladders or composable tuples examined.
    pub elements: usize,
    /// The first failure found, if any.
    pub witness: Option<Witness>,
}

impl CheckReport {
    /// Whether every instance passed.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Towers over each representative ambient map.
pub fn towers_by_ambient(
    max_source: usize,
    max_target: usize,
    max_interior: usize,
) -> Result<Vec<Vec<Tower>>, BodyError> {
    ambient_maps(max_source, max_target)
        .iter()
        .map(|f| enumerate_ske(f, max_interior))
        .collect()
}

/// `d² = 0` on every hom-complex `H(X, Y)` over the given bounds.
pub fn check_d_squared(
    max_source: usize,
    max_target: usize,
    max_interior: usize,
    variant: Variant,
) -> Result<CheckReport, BodyError> {
    let groups = towers_by_ambient(max_source, max_target, max_interior)?;
    let pairs: Vec<(&Tower, &Tower)> = groups
        .iter()
        .flat_map(|g| g.iter().flat_map(move |x| g.iter().map(move |y| (x, y))))
        .collect();
    let results: Vec<Result<(usize, Option<Witness>), BodyError>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let basis = hom_basis(x, y, variant)?;
            for l in &basis {
                let m = MorphismElement::from_ladder((*x).clone(), (*y).clone(), variant, l.clone());
                let dd = differential_hom(&differential_hom(&m));
                if !dd.is_zero() {
                    return Ok((
                        basis.len(),
                        Some(Witness {
                            check: "d² = 0".into(),
                            towers: vec![x.to_string(), y.to_string()],
                            ladders: vec![l.to_string()],
                            defect: defect_terms(&dd),
                        }),
                    ));
                }
            }
            Ok((basis.len(), None))
        })
        .collect();
    let mut report = CheckReport {
        towers: groups.iter().map(Vec::len).sum(),
        instances: pairs.len(),
        elements: 0,
        witness: None,
    };
    for r in results {
        let (n, w) = r?;
        report.elements += n;
        if report.witness.is_none() {
            report.witness = w;
        }
    }
    Ok(report)
}

fn basis_elements(x: &Tower, y: &Tower, variant: Variant) -> Result<Vec<MorphismElement>, BodyError> {
    Ok(hom_basis(x, y, variant)?
        .into_iter()
        .map(|l| MorphismElement::from_ladder(x.clone(), y.clone(), variant, l))
        .collect())
}

fn degree_of(m: &MorphismElement) -> usize {
    m.terms().keys().next().map_or(0, |l| l.degree())
}

/// The Leibniz rule `d(g∘f) = dg∘f + (−1)^{|g|} g∘df` for basis ladders `f`
/// and `g`.
pub fn leibniz_defect(f: &MorphismElement, g: &MorphismElement) -> Result<MorphismElement, BodyError> {
    let mut lhs = differential_hom(&compose_hom(g, f)?);
    let first = compose_hom(&differential_hom(g), f)?;
    let mut second = compose_hom(g, &differential_hom(f))?;
    if degree_of(g) % 2 == 1 {
        second = second.scaled(-num_rational::Rational64::from_integer(1));
    }
    lhs.add_assign(&first.scaled(-num_rational::Rational64::from_integer(1)));
    lhs.add_assign(&second.scaled(-num_rational::Rational64::from_integer(1)));
    Ok(lhs)
}

/// Associativity `h∘(g∘f) = (h∘g)∘f`.
pub fn associativity_defect(
    f: &MorphismElement,
    g: &MorphismElement,
    h: &MorphismElement,
) -> Result<MorphismElement, BodyError> {
    let mut lhs = compose_hom(h, &compose_hom(g, f)?)?;
    let rhs = compose_hom(&compose_hom(h, g)?, f)?;
    lhs.add_assign(&rhs.scaled(-num_rational::Rational64::from_integer(1)));
    Ok(lhs)
}

/// Instances, elements and the first failure for one triple of towers.
type TripleOutcome = (usize, usize, Option<Witness>);

/// The Leibniz rule on every composable pair of basis ladders and
/// associativity on every composable triple, over the given bounds.
pub fn check_composition(
    max_source: usize,
    max_target: usize,
    max_interior: usize,
    variant: Variant,
) -> Result<CheckReport, BodyError> {
    let groups = towers_by_ambient(max_source, max_target, max_interior)?;
    let mut report = CheckReport {
        towers: groups.iter().map(Vec::len).sum(),
        instances: 0,
        elements: 0,
        witness: None,
    };
    for group in &groups {
        let n = group.len();
        let mut homs: Vec<Vec<Vec<MorphismElement>>> = Vec::with_capacity(n);
        for x in group {
            homs.push(group.iter().map(|y| basis_elements(x, y, variant)).collect::<Result<_, _>>()?);
        }
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| !homs[a][b].is_empty() && !homs[b][c].is_empty())
            .collect();
        let results: Vec<Result<TripleOutcome, BodyError>> = triples
            .par_iter()
            .map(|&(a, b, c)| {
                let mut elements = 0;
                let mut instances = 1;
                for f in &homs[a][b] {
                    for g in &homs[b][c] {
                        elements += 1;
                        let defect = leibniz_defect(f, g)?;
                        if !defect.is_zero() {
                            return Ok((instances, elements, Some(witness("Leibniz", &[a, b, c], group, &[f, g], &defect))));
                        }
                        for (d, from_c) in homs[c].iter().enumerate() {
                            if from_c.is_empty() {
                                continue;
                            }
                            instances += 1;
                            for h in from_c {
                                elements += 1;
                                let defect = associativity_defect(f, g, h)?;
                                if !defect.is_zero() {
                                    return Ok((
                                        instances,
                                        elements,
                                        Some(witness("associativity", &[a, b, c, d], group, &[f, g, h], &defect)),
                                    ));
                                }
                            }
                        }
                    }
                }
                Ok((instances, elements, None))
            })
            .collect();
        for r in results {
            let (i, e, w) = r?;
            report.instances += i;
            report.elements += e;
            if report.witness.is_none() {
                report.witness = w;
            }
        }
        if report.witness.is_some() {
            break;
        }
    }
    Ok(report)
}

fn witness(
    check: &str,
    indices: &[usize],
    group: &[Tower],
    morphisms: &[&MorphismElement],
    defect: &MorphismElement,
) -> Witness {
    Witness {
        check: check.into(),
        towers: indices.iter().map(|&k| group[k].to_string()).collect(),
        ladders: morphisms
            .iter()
            .flat_map(|m| m.terms().keys().map(|l| l.to_string()))
            .collect(),
        defect: defect_terms(defect),
    }
}
