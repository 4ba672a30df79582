use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::matrix::{q_to_string, MatrixRepr, SparseMatrix, Q};
use crate::ChainError;

/// Canonical encoding of a combinatorial basis object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey(pub String);

impl BasisKey {
    pub fn new(s: impl Into<String>) -> Self {
        BasisKey(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for BasisKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// Direction of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// The differential raises degree by one.
    Cohomological,
    /// The differential lowers degree by one.
    Homological,
}

impl Orientation {
    /// Degree change of the differential.
    pub fn step(self) -> i64 {
        match self {
            Orientation::Cohomological => 1,
            Orientation::Homological => -1,
        }
    }
}

/// A graded free module over the rationals with a differential.
///
/// Each degree carries a basis of [`BasisKey`]s sorted by key. The
/// differential at degree `d` is a matrix whose columns index the basis in
/// degree `d` and whose rows index the basis in degree `d + step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalComplex {
    orientation: Orientation,
    bases: BTreeMap<i64, Vec<BasisKey>>,
    differentials: BTreeMap<i64, SparseMatrix>,
}

/// Incremental assembly of a [`FormalComplex`] by keys.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    orientation: Orientation,
    bases: BTreeMap<i64, BTreeSet<BasisKey>>,
    entries: Vec<(i64, BasisKey, BasisKey, Q)>,
}

impl ComplexBuilder {
    pub fn new(orientation: Orientation) -> Self {
        ComplexBuilder {
            orientation,
            bases: BTreeMap::new(),
            entries: Vec::new(),
        }
    }

    pub fn add_generator(&mut self, degree: i64, key: BasisKey) {
        self.bases.entry(degree).or_default().insert(key);
    }

    /// Record `d(source) ∋ coeff · target` with `source` in degree `degree`.
    pub fn add_entry(&mut self, degree: i64, source: BasisKey, target: BasisKey, coeff: Q) {
        if !coeff.is_zero() {
            self.entries.push((degree, source, target, coeff));
        }
    }

    pub fn build(self) -> Result<FormalComplex, ChainError> {
        let step = self.orientation.step();
        let bases: BTreeMap<i64, Vec<BasisKey>> = self
            .bases
            .into_iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(d, b)| (d, b.into_iter().collect()))
            .collect();
        let index: HashMap<(i64, &BasisKey), usize> = bases
            .iter()
            .flat_map(|(d, b)| b.iter().enumerate().map(move |(i, k)| ((*d, k), i)))
            .collect();
        let mut triples: BTreeMap<i64, Vec<(usize, usize, Q)>> = BTreeMap::new();
        for (d, s, t, v) in &self.entries {
            let col = *index
                .get(&(*d, s))
                .ok_or_else(|| ChainError::UnknownKey { degree: *d, key: s.0.clone() })?;
            let row = *index
                .get(&(*d + step, t))
                .ok_or_else(|| ChainError::UnknownKey { degree: *d + step, key: t.0.clone() })?;
            triples.entry(*d).or_default().push((row, col, v.clone()));
        }
        let mut differentials = BTreeMap::new();
        for (d, basis) in &bases {
            let rows = bases.get(&(d + step)).map_or(0, Vec::len);
            let m = SparseMatrix::from_triples(rows, basis.len(), triples.remove(d).unwrap_or_default());
            differentials.insert(*d, m);
        }
        FormalComplex::new(self.orientation, bases, differentials)
    }
}

/// Outcome of a `d² = 0` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub holds: bool,
    pub witness: Option<DSquaredWitness>,
}

/// A basis element whose image under `d²` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredWitness {
    pub degree: i64,
    pub source: BasisKey,
    pub target: BasisKey,
    pub coefficient: String,
}

/// Homology ranks per degree, including zero ranks for every degree that carries generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable(pub BTreeMap<i64, usize>);

impl BettiTable {
    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    /// Degrees with nonzero rank.
    pub fn nonzero(&self) -> BTreeMap<i64, usize> {
        self.0.iter().filter(|(_, &r)| r > 0).map(|(d, r)| (*d, *r)).collect()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(d, r)| if d.rem_euclid(2) == 0 { *r as i64 } else { -(*r as i64) })
            .sum()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, usize> = self.nonzero().into_iter().map(|(d, r)| (d.to_string(), r)).collect();
        m.serialize(serializer)
    }
}

impl FormalComplex {
    /// Assemble from bases and differentials, validating every shape.
    pub fn new(
        orientation: Orientation,
        bases: BTreeMap<i64, Vec<BasisKey>>,
        differentials: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ChainError> {
        let step = orientation.step();
        for (d, m) in &differentials {
            let cols = bases.get(d).map_or(0, Vec::len);
            let rows = bases.get(&(d + step)).map_or(0, Vec::len);
            if m.cols() != cols || m.rows() != rows {
                return Err(ChainError::Shape {
                    degree: *d,
                    expected: (rows, cols),
                    found: (m.rows(), m.cols()),
                });
            }
        }
        let bases = bases.into_iter().filter(|(_, b)| !b.is_empty()).collect::<BTreeMap<_, _>>();
        let mut differentials = differentials;
        for (d, b) in &bases {
            let rows = bases.get(&(d + step)).map_or(0, Vec::len);
            differentials.entry(*d).or_insert_with(|| SparseMatrix::zero(rows, b.len()));
        }
        differentials.retain(|d, _| bases.contains_key(d));
        Ok(FormalComplex {
            orientation,
            bases,
            differentials,
        })
    }

    /// The zero complex.
    pub fn zero(orientation: Orientation) -> Self {
        FormalComplex {
            orientation,
            bases: BTreeMap::new(),
            differentials: BTreeMap::new(),
        }
    }

    /// One generator `key` in degree `degree` and no differential.
    pub fn generator(orientation: Orientation, degree: i64, key: BasisKey) -> Self {
        let mut b = ComplexBuilder::new(orientation);
        b.add_generator(degree, key);
        b.build().expect("single generator is well formed")
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Degrees carrying at least one generator.
    pub fn degrees(&self) -> Vec<i64> {
        self.bases.keys().copied().collect()
    }

    pub fn basis(&self, degree: i64) -> &[BasisKey] {
        self.bases.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.basis(degree).len()
    }

    /// Dimensions of all nonzero degrees.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.values().map(Vec::len).sum()
    }

    pub fn index_of(&self, degree: i64, key: &BasisKey) -> Option<usize> {
        self.basis(degree).binary_search(key).ok()
    }

    /// Differential out of `degree`, as a matrix from degree `degree` to `degree + step`.
    pub fn differential(&self, degree: i64) -> SparseMatrix {
        self.differentials.get(&degree).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.dim(degree + self.orientation.step()), self.dim(degree))
        })
    }

    /// Coefficient of `target` in `d(source)`.
    pub fn coefficient(&self, degree: i64, source: &BasisKey, target: &BasisKey) -> Q {
        match (
            self.index_of(degree, source),
            self.index_of(degree + self.orientation.step(), target),
        ) {
            (Some(c), Some(r)) => self.differential(degree).get(r, c),
            _ => Q::zero(),
        }
    }

    /// A copy with one differential entry replaced.
    pub fn with_entry(&self, degree: i64, row: usize, col: usize, value: Q) -> Result<Self, ChainError> {
        let m = self.differential(degree);
        if row >= m.rows() || col >= m.cols() {
            return Err(ChainError::Shape {
                degree,
                expected: (m.rows(), m.cols()),
                found: (row + 1, col + 1),
            });
        }
        let old = m.get(row, col);
        let triples = m
            .entries()
            .iter()
            .cloned()
            .chain(std::iter::once((row, col, value - old)));
        let mut out = self.clone();
        out.differentials
            .insert(degree, SparseMatrix::from_triples(m.rows(), m.cols(), triples));
        Ok(out)
    }

    /// Check that all composites of consecutive differentials vanish.
    pub fn check_d_squared(&self) -> DSquaredReport {
        let step = self.orientation.step();
        for d in self.degrees() {
            let first = self.differential(d);
            let second = self.differential(d + step);
            if first.rows() == 0 || second.rows() == 0 {
                continue;
            }
            let comp = second.mul(&first);
            if let Some((r, c, v)) = comp.entries().first() {
                return DSquaredReport {
                    holds: false,
                    witness: Some(DSquaredWitness {
                        degree: d,
                        source: self.basis(d)[*c].clone(),
                        target: self.basis(d + 2 * step)[*r].clone(),
                        coefficient: q_to_string(v),
                    }),
                };
            }
        }
        DSquaredReport {
            holds: true,
            witness: None,
        }
    }

    /// Exact homology ranks. Refuses complexes with `d² ≠ 0`.
    pub fn betti(&self) -> Result<BettiTable, ChainError> {
        let report = self.check_d_squared();
        if let Some(w) = report.witness {
            return Err(ChainError::NotAComplex(Box::new(w)));
        }
        let step = self.orientation.step();
        let ranks: BTreeMap<i64, usize> = self
            .degrees()
            .into_iter()
            .map(|d| (d, self.differential(d).rank()))
            .collect();
        Ok(BettiTable(
            self.bases
                .iter()
                .map(|(d, b)| {
                    let out = ranks.get(d).copied().unwrap_or(0);
                    let inc = ranks.get(&(d - step)).copied().unwrap_or(0);
                    (*d, b.len() - out - inc)
                })
                .collect(),
        ))
    }

    /// `Σ (-1)^d dim C_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.bases
            .iter()
            .map(|(d, b)| if d.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// The span of the generators selected by `keep`, which must be closed under `d`.
    pub fn subcomplex<F>(&self, keep: F) -> Result<FormalComplex, ChainError>
    where
        F: Fn(i64, &BasisKey) -> bool,
    {
        let step = self.orientation.step();
        let mut builder = ComplexBuilder::new(self.orientation);
        for (d, b) in &self.bases {
            for k in b.iter().filter(|k| keep(*d, k)) {
                builder.add_generator(*d, k.clone());
            }
        }
        for (d, m) in &self.differentials {
            for (r, c, v) in m.entries() {
                let src = &self.basis(*d)[*c];
                if !keep(*d, src) {
                    continue;
                }
                let tgt = &self.basis(d + step)[*r];
                if !keep(d + step, tgt) {
                    return Err(ChainError::NotClosed {
                        from: src.0.clone(),
                        to: tgt.0.clone(),
                    });
                }
                builder.add_entry(*d, src.clone(), tgt.clone(), v.clone());
            }
        }
        builder.build()
    }

    /// Apply the differential to a vector given as key → coefficient in `degree`.
    pub fn apply(&self, degree: i64, vector: &BTreeMap<BasisKey, Q>) -> BTreeMap<BasisKey, Q> {
        let m = self.differential(degree);
        let target = self.basis(degree + self.orientation.step());
        let mut out: BTreeMap<BasisKey, Q> = BTreeMap::new();
        for (r, c, v) in m.entries() {
            if let Some(x) = vector.get(&self.basis(degree)[*c]) {
                *out.entry(target[*r].clone()).or_insert_with(Q::zero) += v * x;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

#[derive(Serialize)]
struct ComplexRepr<'a> {
    orientation: Orientation,
    dims: BTreeMap<String, usize>,
    bases: BTreeMap<String, &'a [BasisKey]>,
    differentials: BTreeMap<String, MatrixRepr>,
}

impl Serialize for FormalComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexRepr {
            orientation: self.orientation,
            dims: self.dims().into_iter().map(|(d, n)| (d.to_string(), n)).collect(),
            bases: self.bases.iter().map(|(d, b)| (d.to_string(), b.as_slice())).collect(),
            differentials: self
                .differentials
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(d, m)| (d.to_string(), MatrixRepr::from(m)))
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Tensor product of complexes of equal orientation.
///
/// Basis elements are tuples written `k1⊗k2⊗…`, degrees add, and
/// `d(x_1⊗…⊗x_n) = Σ_i (−1)^{|x_1|+…+|x_{i−1}|} x_1⊗…⊗dx_i⊗…⊗x_n`.
/// The empty product is the ground field in degree 0 with key `1`.
pub fn tensor_complex(factors: &[FormalComplex]) -> Result<FormalComplex, ChainError> {
    let orientation = match factors.first() {
        Some(f) => f.orientation,
        None => Orientation::Homological,
    };
    if factors.iter().any(|f| f.orientation != orientation) {
        return Err(ChainError::OrientationMismatch);
    }
    let step = orientation.step();
    let mut tuples: Vec<(i64, Vec<(i64, usize)>)> = vec![(0, Vec::new())];
    for f in factors {
        let mut next = Vec::new();
        for (deg, t) in &tuples {
            for d in f.degrees() {
                for i in 0..f.dim(d) {
                    let mut t2 = t.clone();
                    t2.push((d, i));
                    next.push((deg + d, t2));
                }
            }
        }
        tuples = next;
    }
    let key = |t: &[(i64, usize)]| -> BasisKey {
        if t.is_empty() {
            return BasisKey::new("1");
        }
        BasisKey::new(
            t.iter()
                .zip(factors)
                .map(|((d, i), f)| f.basis(*d)[*i].0.clone())
                .collect::<Vec<_>>()
                .join("⊗"),
        )
    };
    let mut builder = ComplexBuilder::new(orientation);
    for (deg, t) in &tuples {
        builder.add_generator(*deg, key(t));
    }
    let diffs: Vec<BTreeMap<i64, SparseMatrix>> = factors
        .iter()
        .map(|f| f.degrees().into_iter().map(|d| (d, f.differential(d))).collect())
        .collect();
    for (deg, t) in &tuples {
        let src = key(t);
        let mut sign_degree = 0i64;
        for (pos, (d, i)) in t.iter().enumerate() {
            let m = &diffs[pos][d];
            let sign = if sign_degree.rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
            for (r, c, v) in m.entries() {
                if c == i {
                    let mut t2 = t.clone();
                    t2[pos] = (d + step, *r);
                    builder.add_entry(*deg, src.clone(), key(&t2), &sign * v);
                }
            }
            sign_degree += d;
        }
    }
    builder.build()
}

/// Homology of a tensor product predicted from the factors by the Künneth formula over a field.
pub fn kunneth_prediction(tables: &[BettiTable]) -> BettiTable {
    let mut acc: BTreeMap<i64, usize> = BTreeMap::from([(0, 1)]);
    for t in tables {
        let mut next: BTreeMap<i64, usize> = BTreeMap::new();
        for (d1, r1) in &acc {
            for (d2, r2) in &t.0 {
                *next.entry(d1 + d2).or_insert(0) += r1 * r2;
            }
        }
        acc = next;
    }
    BettiTable(acc)
}

/// A degree-preserving family of matrices between two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub components: BTreeMap<i64, SparseMatrix>,
}

/// Outcome of a chain-map check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapReport {
    pub holds: bool,
    pub witness: Option<ChainMapWitness>,
}

/// A source basis element where `d∘f` and `f∘d` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapWitness {
    pub degree: i64,
    pub source: BasisKey,
    pub target: BasisKey,
    pub difference: String,
}

impl ChainMap {
    /// The component out of `degree`, zero when absent.
    pub fn component(&self, source: &FormalComplex, target: &FormalComplex, degree: i64) -> SparseMatrix {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(target.dim(degree), source.dim(degree)))
    }

    /// Check `d_target ∘ f = f ∘ d_source` in every degree.
    pub fn check(&self, source: &FormalComplex, target: &FormalComplex) -> Result<ChainMapReport, ChainError> {
        if source.orientation != target.orientation {
            return Err(ChainError::OrientationMismatch);
        }
        let step = source.orientation.step();
        let mut degrees: BTreeSet<i64> = source.degrees().into_iter().collect();
        degrees.extend(self.components.keys());
        for d in degrees {
            let f = self.component(source, target, d);
            if f.cols() != source.dim(d) || f.rows() != target.dim(d) {
                return Err(ChainError::Shape {
                    degree: d,
                    expected: (target.dim(d), source.dim(d)),
                    found: (f.rows(), f.cols()),
                });
            }
            let lhs = target.differential(d).mul(&f);
            let rhs = self.component(source, target, d + step).mul(&source.differential(d));
            let diff = lhs.sub(&rhs);
            if let Some((r, c, v)) = diff.entries().first() {
                return Ok(ChainMapReport {
                    holds: false,
                    witness: Some(ChainMapWitness {
                        degree: d,
                        source: source.basis(d)[*c].clone(),
                        target: target.basis(d + step)[*r].clone(),
                        difference: q_to_string(v),
                    }),
                });
            }
        }
        Ok(ChainMapReport {
            holds: true,
            witness: None,
        })
    }
}
