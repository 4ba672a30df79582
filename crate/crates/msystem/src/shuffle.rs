use std::collections::HashMap;

use chainlab::{tensor_complex, ChainMap, ChainMapReport, FormalComplex, SparseMatrix, Q};
use num_traits::One;
use serde::Serialize;
use setcore::{Partition, SetMap};

use crate::complex::{build_m_complex, flag_key, MComplex};
use crate::MsysError;

/// An interleaving of index slots: `sequence[k]` names the factor advanced at step `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shuffle {
    pub sequence: Vec<usize>,
    /// `(−1)` to the number of inversions of the interleaving.
    pub sign: i64,
}

/// All sequences in which factor `a` occurs exactly `multiplicities[a]` times,
/// in lexicographic order, with their signs.
pub fn enumerate_shuffles(multiplicities: &[usize]) -> Vec<Shuffle> {
    let total: usize = multiplicities.iter().sum();
    let mut out = Vec::new();
    let mut remaining = multiplicities.to_vec();
    let mut seq = Vec::with_capacity(total);
    fn rec(remaining: &mut [usize], seq: &mut Vec<usize>, total: usize, out: &mut Vec<Shuffle>) {
        if seq.len() == total {
            let inversions = (0..seq.len())
                .flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| seq[i] > seq[j])
                .count();
            out.push(Shuffle {
                sequence: seq.clone(),
                sign: if inversions % 2 == 0 { 1 } else { -1 },
            });
            return;
        }
        for a in 0..remaining.len() {
            if remaining[a] > 0 {
                remaining[a] -= 1;
                seq.push(a);
                rec(remaining, seq, total, out);
                seq.pop();
                remaining[a] += 1;
            }
        }
    }
    rec(&mut remaining, &mut seq, total, &mut out);
    out
}

/// The shuffle chain map `⊗_a m_{p_a} → m_{⊔ p_a}`.
#[derive(Clone, Debug)]
pub struct ShuffleFactorization {
    pub factors: Vec<MComplex>,
    pub source: FormalComplex,
    pub target: MComplex,
    pub map: ChainMap,
}

impl ShuffleFactorization {
    /// Check `d ∘ fact = fact ∘ d` as exact matrices.
    pub fn check(&self) -> Result<ChainMapReport, MsysError> {
        Ok(self.map.check(&self.source, &self.target.complex)?)
    }
}

/// Build the shuffle factorization for a family of proper surjections.
///
/// The union `p = ⊔ p_a` places the factors' sources and targets one after
/// another. A tuple of flags with `n_a` steps maps to
/// `Σ_α (−1)^{sign(α)} fact(α)`, where `α` runs over interleavings of the
/// steps and `fact(α)` is the flag whose `k`-th relation is the disjoint union
/// of the factors' relations reached after the first `k` steps of `α`.
pub fn shuffle_factorization(family: &[SetMap]) -> Result<ShuffleFactorization, MsysError> {
    if family.is_empty() {
        return Err(MsysError::InvalidFamily("empty family".into()));
    }
    for (a, p) in family.iter().enumerate() {
        if !p.is_surjective() {
            return Err(MsysError::NotSurjective);
        }
        if p.is_injective() {
            return Err(MsysError::InvalidFamily(format!(
                "factor {a} is a bijection; its complex has no flag steps to interleave"
            )));
        }
    }
    let factors: Vec<MComplex> = family.iter().map(build_m_complex).collect::<Result<_, _>>()?;
    let source = tensor_complex(&factors.iter().map(|f| f.complex.clone()).collect::<Vec<_>>())?;
    let union = SetMap::disjoint_union(family);
    let target = build_m_complex(&union)?;
    let offsets: Vec<usize> = family
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.source().size();
            Some(o)
        })
        .collect();
    let n = union.source().size();

    let mut triples: HashMap<i64, Vec<(usize, usize, Q)>> = HashMap::new();
    let mut tuple: Vec<usize> = vec![0; factors.len()];
    loop {
        let chains: Vec<&Vec<Partition>> = tuple
            .iter()
            .zip(&factors)
            .map(|(&i, f)| &f.terms[i].chain)
            .collect();
        let degree: i64 = tuple.iter().zip(&factors).map(|(&i, f)| f.terms[i].degree()).sum();
        let key = chainlab::BasisKey::new(
            tuple
                .iter()
                .zip(&factors)
                .map(|(&i, f)| f.terms[i].key().0)
                .collect::<Vec<_>>()
                .join("⊗"),
        );
        let col = source
            .index_of(degree, &key)
            .expect("tensor basis contains every tuple");
        let steps: Vec<usize> = chains.iter().map(|c| c.len() - 1).collect();
        for sh in enumerate_shuffles(&steps) {
            let mut counts = vec![0usize; factors.len()];
            let mut combined = Vec::with_capacity(sh.sequence.len() + 1);
            combined.push(union_relation(n, &offsets, &chains, &counts));
            for &a in &sh.sequence {
                counts[a] += 1;
                combined.push(union_relation(n, &offsets, &chains, &counts));
            }
            let row = target
                .complex
                .index_of(degree, &flag_key(&combined))
                .expect("interleaved flag is a flag of the union");
            let v = if sh.sign > 0 { Q::one() } else { -Q::one() };
            triples.entry(degree).or_default().push((row, col, v));
        }
        let mut k = 0;
        loop {
            if k == tuple.len() {
                let components = source
                    .degrees()
                    .into_iter()
                    .map(|d| {
                        let t = triples.remove(&d).unwrap_or_default();
                        (
                            d,
                            SparseMatrix::from_triples(target.complex.dim(d), source.dim(d), t),
                        )
                    })
                    .collect();
                return Ok(ShuffleFactorization {
                    factors,
                    source,
                    target,
                    map: ChainMap { components },
                });
            }
            tuple[k] += 1;
            if tuple[k] < factors[k].terms.len() {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

fn union_relation(n: usize, offsets: &[usize], chains: &[&Vec<Partition>], counts: &[usize]) -> Partition {
    let mut tags = vec![(0usize, 0usize); n];
    for (a, chain) in chains.iter().enumerate() {
        let rel = &chain[counts[a]];
        for x in 0..rel.size() {
            tags[offsets[a] + x] = (a, rel.block_of(x));
        }
    }
    Partition::from_tags(&tags)
}
