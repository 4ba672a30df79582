use chainlab::{q, BasisKey, ComplexBuilder, FormalComplex, Orientation, Q};
use num_traits::Zero;
use serde::Serialize;
use setcore::{max_set_size, strict_chains, Partition, SetError, SetMap};

use crate::MsysError;

/// A flag `ω > e_1 > … > e_{n−1} > e(p)`; for a bijection the one-element flag `[ω]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FlagTerm {
    pub chain: Vec<Partition>,
}

impl FlagTerm {
    /// Cohomological degree `−n`, where `n` is the number of steps (one for a bijection).
    pub fn degree(&self) -> i64 {
        -((self.chain.len().max(2) - 1) as i64)
    }

    pub fn key(&self) -> BasisKey {
        flag_key(&self.chain)
    }
}

/// Basis key of a flag: compact partitions joined by `>`.
pub fn flag_key(chain: &[Partition]) -> BasisKey {
    BasisKey::new(
        chain
            .iter()
            .map(Partition::compact)
            .collect::<Vec<_>>()
            .join(">"),
    )
}

/// The complex `m_p` together with its flags.
#[derive(Clone, Debug)]
pub struct MComplex {
    pub map: SetMap,
    pub terms: Vec<FlagTerm>,
    pub complex: FormalComplex,
}

impl MComplex {
    pub fn term(&self, key: &BasisKey) -> Option<&FlagTerm> {
        self.terms.iter().find(|t| t.key() == *key)
    }
}

/// Build `m_p` for a surjection `p`.
pub fn build_m_complex(p: &SetMap) -> Result<MComplex, MsysError> {
    if !p.is_surjective() {
        return Err(MsysError::NotSurjective);
    }
    let n = p.source().size();
    let bound = max_set_size();
    if n > bound {
        return Err(SetError::SizeLimit { size: n, bound }.into());
    }
    let omega = Partition::discrete(n);
    let kernel = p.kernel();
    let terms: Vec<FlagTerm> = strict_chains(&omega, &kernel)?
        .into_iter()
        .map(|chain| FlagTerm { chain })
        .collect();
    let mut builder = ComplexBuilder::new(Orientation::Cohomological);
    for t in &terms {
        builder.add_generator(t.degree(), t.key());
    }
    for t in &terms {
        let steps = t.chain.len() - 1;
        for i in 1..steps {
            let mut shorter = t.chain.clone();
            shorter.remove(i);
            let sign = if i % 2 == 1 { q(1) } else { q(-1) };
            builder.add_entry(t.degree(), t.key(), flag_key(&shorter), sign);
        }
    }
    Ok(MComplex {
        map: p.clone(),
        terms,
        complex: builder.build()?,
    })
}

/// Degree in which the homology of `m_p` is concentrated: `−max(1, |S| − |T|)`.
pub fn lowest_degree(p: &SetMap) -> i64 {
    -((p.source().size().saturating_sub(p.target().size())).max(1) as i64)
}

/// Rank of the homology of `m_p` in [`lowest_degree`], after checking that
/// every other degree is acyclic.
pub fn lowest_cohomology_rank(p: &SetMap) -> Result<usize, MsysError> {
    let m = build_m_complex(p)?;
    let betti = m.complex.betti()?;
    let expected = lowest_degree(p);
    let nonzero = betti.nonzero();
    if nonzero.keys().any(|&d| d != expected) {
        return Err(MsysError::NotConcentrated {
            expected,
            found: nonzero,
        });
    }
    Ok(betti.get(expected))
}

/// The coordinate projection `l_p` onto the unique degree −1 generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LProjection {
    pub generator: BasisKey,
    /// `l_p ∘ d` on the degree −2 basis, in basis order.
    pub composite_row: Vec<Q>,
}

impl LProjection {
    /// Value of `l_p` on a basis element of degree `degree`.
    pub fn apply(&self, degree: i64, key: &BasisKey) -> Q {
        if degree == -1 && *key == self.generator {
            q(1)
        } else {
            Q::zero()
        }
    }
}

/// The projection `l_p` of an m-complex and its composite with the differential out of degree −2.
pub fn l_projection(m: &MComplex) -> LProjection {
    let basis = m.complex.basis(-1);
    debug_assert_eq!(basis.len(), 1);
    let generator = basis[0].clone();
    let d = m.complex.differential(-2);
    let composite_row = (0..d.cols()).map(|c| d.get(0, c)).collect();
    LProjection {
        generator,
        composite_row,
    }
}
