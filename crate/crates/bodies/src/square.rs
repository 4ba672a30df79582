//! Commutative squares, suitability, super-surjectivity and the
//! suitable × super-surjective factorization.

use serde::{Deserialize, Serialize};
use setcore::SetMap;

use crate::error::BodyError;

/// A commutative square
///
/// ```text
///   R --p--> T
///   ^        ^
///   i        j
///   |        |
///   S --q--> P
/// ```
///
/// with `i`, `j` injective, `p`, `q` surjective and `p∘i = j∘q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    i: SetMap,
    p: SetMap,
    j: SetMap,
    q: SetMap,
}

impl Square {
    /// Validates kinds and commutativity.
    pub fn new(i: SetMap, p: SetMap, j: SetMap, q: SetMap) -> Result<Self, BodyError> {
        if !i.is_injective() || !j.is_injective() {
            return Err(BodyError::InvalidSquare("i and j must be injective".into()));
        }
        if !p.is_surjective() || !q.is_surjective() {
            return Err(BodyError::InvalidSquare("p and q must be surjective".into()));
        }
        let left = p.after(&i).map_err(|e| BodyError::InvalidSquare(e.to_string()))?;
        let right = j.after(&q).map_err(|e| BodyError::InvalidSquare(e.to_string()))?;
        if left.images() != right.images() || left.target().size() != right.target().size() {
            return Err(BodyError::InvalidSquare("the square does not commute".into()));
        }
        Ok(Self { i, p, j, q })
    }

    /// The square determined by `i: S ↪ R` and `p: R ↠ T`, with `P` the image
    /// of `p∘i` (in increasing order), `j` its inclusion and `q` the
    /// corestriction of `p∘i`.
    pub fn from_top(i: SetMap, p: SetMap) -> Result<Self, BodyError> {
        let composite = p.after(&i).map_err(|e| BodyError::InvalidSquare(e.to_string()))?;
        let mut image: Vec<usize> = composite.images().to_vec();
        image.sort_unstable();
        image.dedup();
        let q_images = composite
            .images()
            .iter()
            .map(|t| image.binary_search(t).expect("t lies in the image"))
            .collect();
        let q = SetMap::from_images(image.len(), q_images)?;
        let j = SetMap::from_images(p.target().size(), image)?;
        Self::new(i, p, j, q)
    }

    /// The left injection `i: S ↪ R`.
    pub fn i(&self) -> &SetMap {
        &self.i
    }

    /// The top surjection `p: R ↠ T`.
    pub fn p(&self) -> &SetMap {
        &self.p
    }

    /// The right injection `j: P ↪ T`.
    pub fn j(&self) -> &SetMap {
        &self.j
    }

    /// The bottom surjection `q: S ↠ P`.
    pub fn q(&self) -> &SetMap {
        &self.q
    }
}

/// Suitability: `#(p⁻¹t ∩ i(S)) ≥ 2 ⇒ p⁻¹t ⊆ i(S)` for every `t`.
pub fn is_suitable(square: &Square) -> bool {
    fiber_condition(square.i.images(), &square.p, |hits, size| hits < 2 || hits == size)
}

/// Super-surjectivity of `(i, p)`: every fiber of `p` contains at least two
/// points of `i(S)` or is a single point of `i(S)`.
pub fn is_supersurjective(i: &SetMap, p: &SetMap) -> bool {
    fiber_condition(i.images(), p, |hits, size| hits >= 2 || (hits == 1 && size == 1))
}

fn fiber_condition(hits: &[usize], p: &SetMap, ok: impl Fn(usize, usize) -> bool) -> bool {
    let t = p.target().size();
    let mut hit_count = vec![0usize; t];
    let mut size = vec![0usize; t];
    let mut is_hit = vec![false; p.source().size()];
    for &h in hits {
        is_hit[h] = true;
    }
    for (u, &img) in p.images().iter().enumerate() {
        size[img] += 1;
        if is_hit[u] {
            hit_count[img] += 1;
        }
    }
    (0..t).all(|x| ok(hit_count[x], size[x]))
}

/// The decomposition `i = i₂∘i₁` through `U ⊆ R` with `(i₂, p, j, r)` suitable
/// and `(i₁, r)` super-surjective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// The subset `U ⊆ R`, increasing.
    pub subset: Vec<usize>,
    /// `i₁: S ↪ U`.
    pub i1: SetMap,
    /// `i₂: U ↪ R`.
    pub i2: SetMap,
    /// `r: U ↠ P`.
    pub r: SetMap,
    /// Brute-force evidence of uniqueness.
    pub certificate: UniquenessCertificate,
}

/// Outcome of the exhaustive scan over all candidate decompositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessCertificate {
    /// Number of subsets `i(S) ⊆ U ⊆ R` examined.
    pub examined: usize,
    /// Every subset giving a valid decomposition.
    pub valid: Vec<Vec<usize>>,
    /// Whether exactly one valid subset exists and it equals the constructed one.
    pub unique: bool,
}

/// The decomposition through `U = i(S) ∪ p⁻¹(G_T)`, where `G_T` is the set of
/// good points (fibers with at least two points of `i(S)` or a single point of
/// `i(S)`). Every decomposition is isomorphic to one through a subset of `R`,
/// so scanning all subsets between `i(S)` and `R` certifies uniqueness.
pub fn factor_suitable_supersur(square: &Square) -> Result<Factorization, BodyError> {
    let n = square.p.source().size();
    let t = square.p.target().size();
    let hits = square.i.images();
    let mut hit_count = vec![0usize; t];
    let mut size = vec![0usize; t];
    for (u, &img) in square.p.images().iter().enumerate() {
        size[img] += 1;
        if hits.contains(&u) {
            hit_count[img] += 1;
        }
    }
    let good: Vec<bool> = (0..t).map(|x| hit_count[x] >= 2 || (hit_count[x] == 1 && size[x] == 1)).collect();
    let subset: Vec<usize> = (0..n).filter(|&u| hits.contains(&u) || good[square.p.image(u)]).collect();
    let constructed = decomposition_through(square, &subset)?
        .ok_or_else(|| BodyError::InvalidSquare("the constructed decomposition is invalid".into()))?;

    let extras: Vec<usize> = (0..n).filter(|u| !hits.contains(u)).collect();
    let mut valid = Vec::new();
    let mut examined = 0;
    for mask in 0u32..(1 << extras.len()) {
        examined += 1;
        let mut candidate: Vec<usize> = hits.to_vec();
        candidate.extend(extras.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &u)| u));
        candidate.sort_unstable();
        if decomposition_through(square, &candidate)?.is_some() {
            valid.push(candidate);
        }
    }
    valid.sort();
    let unique = valid.len() == 1 && valid[0] == subset;
    let (i1, i2, r) = constructed;
    Ok(Factorization {
        subset,
        i1,
        i2,
        r,
        certificate: UniquenessCertificate { examined, valid, unique },
    })
}

/// The maps `(i₁, i₂, r)` through `U = subset` when they form a valid
/// decomposition.
fn decomposition_through(
    square: &Square,
    subset: &[usize],
) -> Result<Option<(SetMap, SetMap, SetMap)>, BodyError> {
    let pos = |u: usize| subset.iter().position(|&x| x == u);
    let mut i1_images = Vec::new();
    for &h in square.i.images() {
        match pos(h) {
            Some(k) => i1_images.push(k),
            None => return Ok(None),
        }
    }
    let mut r_images = Vec::new();
    for &u in subset {
        let t = square.p.image(u);
        match square.j.images().iter().position(|&x| x == t) {
            Some(k) => r_images.push(k),
            None => return Ok(None),
        }
    }
    let r = SetMap::from_images(square.j.source().size(), r_images)?;
    if !r.is_surjective() {
        return Ok(None);
    }
    let i1 = SetMap::from_images(subset.len(), i1_images)?;
    let i2 = SetMap::from_images(square.p.source().size(), subset.to_vec())?;
    let outer = Square::new(i2.clone(), square.p.clone(), square.j.clone(), r.clone())?;
    if !is_suitable(&outer) || !is_supersurjective(&i1, &r) {
        return Ok(None);
    }
    Ok(Some((i1, i2, r)))
}

/// Result of checking the factorization on every square up to a size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    /// Squares examined (one per isomorphism class of `(i, p)` with `i`
    /// an inclusion).
    pub squares: usize,
    /// Candidate subsets scanned in total.
    pub candidates: usize,
    /// The first square without a unique factorization, as `(i, p)` images.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl FactorizationReport {
    /// Whether every square factored uniquely.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Factors every commutative square with `|R| ≤ max_r`. A square is
/// determined up to isomorphism by `p: R ↠ T` and the subset `i(S) ⊆ R`, so
/// `i` runs over inclusions of subsets and `p` over all surjections.
pub fn check_factorizations(max_r: usize) -> Result<FactorizationReport, BodyError> {
    let mut report = FactorizationReport { squares: 0, candidates: 0, witness: None };
    for n in 0..=max_r {
        for t in 0..=n {
            for p_images in setcore::surjections(n, t) {
                let p = SetMap::from_images(t, p_images.clone())?;
                for mask in 0u32..(1 << n) {
                    let subset: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
                    let i = SetMap::from_images(n, subset.clone())?;
                    let square = Square::from_top(i, p.clone())?;
                    let f = factor_suitable_supersur(&square)?;
                    report.squares += 1;
                    report.candidates += f.certificate.examined;
                    if !f.certificate.unique && report.witness.is_none() {
                        report.witness = Some((subset, p_images.clone()));
                    }
                }
            }
        }
    }
    Ok(report)
}
