use std::collections::BTreeMap;
use std::fmt;

use chainlab::{tensor_complex, BasisKey, BettiTable, ComplexBuilder, FormalComplex, Orientation, Q};
use num_traits::One;
use serde::Serialize;
use setcore::{interval, Partition};

use crate::complex::{build_r_complex, PDWord, RComplex};
use crate::ResolutionError;

/// The two-term complex `V`: `p` in degree 0, `δ` in degree 1, `dδ = p`.
pub fn v_complex() -> FormalComplex {
    let mut b = ComplexBuilder::new(Orientation::Homological);
    b.add_generator(0, BasisKey::new("p"));
    b.add_generator(1, BasisKey::new("δ"));
    b.add_entry(1, BasisKey::new("δ"), BasisKey::new("p"), Q::one());
    b.build().expect("V is well formed")
}

/// Comparison of one associated graded summand with a tensor power of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceReport {
    pub flag_length: usize,
    pub dims: BTreeMap<i64, usize>,
    pub tensor_dims: BTreeMap<i64, usize>,
    pub betti: BettiTable,
    pub tensor_betti: BettiTable,
    /// The word ↦ symbol-tuple bijection carries one differential onto the other.
    pub isomorphic: bool,
}

/// Extract the summand on the flag `phi` (differential: the `A`-part only) and
/// compare it with `V^{⊗(len(phi)−1)}`.
pub fn graded_piece_vs_tv(cx: &RComplex, phi: &[Partition]) -> Result<GradedPieceReport, ResolutionError> {
    if phi.first() != Some(&cx.top) || phi.last() != Some(&cx.bottom) || phi.windows(2).any(|w| !w[0].gt(&w[1])) {
        return Err(ResolutionError::InvalidFlag(
            phi.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" > "),
        ));
    }
    let words: Vec<&PDWord> = cx.words.iter().filter(|w| w.flag == phi).collect();
    let mut builder = ComplexBuilder::new(Orientation::Homological);
    for w in &words {
        builder.add_generator(w.degree(), w.key());
    }
    for w in &words {
        for (sign, t) in w.boundary() {
            if t.flag == phi {
                builder.add_entry(w.degree(), w.key(), t.key(), chainlab::q(sign));
            }
        }
    }
    let piece = builder.build()?;
    let n = phi.len() - 1;
    let tv = tensor_complex(&vec![v_complex(); n])?;
    let to_tensor = |w: &PDWord| -> BasisKey {
        if w.symbols.is_empty() {
            BasisKey::new("1")
        } else {
            BasisKey::new(w.symbols.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("⊗"))
        }
    };
    let mut isomorphic = piece.dims() == tv.dims();
    if isomorphic {
        for w in &words {
            for v in &words {
                if v.degree() + 1 == w.degree()
                    && piece.coefficient(w.degree(), &w.key(), &v.key())
                        != tv.coefficient(w.degree(), &to_tensor(w), &to_tensor(v))
                {
                    isomorphic = false;
                }
            }
        }
    }
    Ok(GradedPieceReport {
        flag_length: phi.len(),
        dims: piece.dims(),
        tensor_dims: tv.dims(),
        betti: piece.betti()?,
        tensor_betti: tv.betti()?,
        isomorphic,
    })
}

/// A flag of segments `[a_1,b_1] > … > [a_n,b_n]` with `a_1 > b_1 > a_2 > … > b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SegmentsZero {
    pub segments: Vec<(Partition, Partition)>,
}

impl SegmentsZero {
    /// Whether the flag is strictly separated and lies in `[e, f]`.
    pub fn is_valid_in(&self, f: &Partition, e: &Partition) -> bool {
        self.segments.iter().all(|(a, b)| {
            a.size() == f.size() && f.geq(a) && a.gt(b) && b.geq(e)
        }) && self.segments.windows(2).all(|w| w[0].1.gt(&w[1].0))
    }
}

impl fmt::Display for SegmentsZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// All strictly separated flags of segments in `[e, f]`, including the empty one.
pub fn enumerate_segments_zero(f: &Partition, e: &Partition) -> Result<Vec<SegmentsZero>, ResolutionError> {
    let elems = interval(f, e)?;
    let mut pairs = Vec::new();
    for a in &elems {
        for b in &elems {
            if a.gt(b) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<(Partition, Partition)> = Vec::new();
    fn rec(pairs: &[(Partition, Partition)], current: &mut Vec<(Partition, Partition)>, out: &mut Vec<SegmentsZero>) {
        out.push(SegmentsZero { segments: current.clone() });
        for p in pairs {
            if current.last().is_none_or(|(_, b)| b.gt(&p.0)) {
                current.push(p.clone());
                rec(pairs, current, out);
                current.pop();
            }
        }
    }
    rec(&pairs, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// The layer of the segments filtration indexed by one flag of segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentsLayer {
    pub segments: String,
    pub dims: BTreeMap<i64, usize>,
    pub betti: BettiTable,
}

/// The layer `⊗_k R_{a_k b_k}` of `s`; the empty flag gives the ground field in
/// degree 0, and a flag not valid in `[e, f]` gives the zero layer.
pub fn segments_filtration_r(f: &Partition, e: &Partition, s: &SegmentsZero) -> Result<SegmentsLayer, ResolutionError> {
    if !s.is_valid_in(f, e) {
        return Ok(SegmentsLayer {
            segments: s.to_string(),
            dims: BTreeMap::new(),
            betti: BettiTable::default(),
        });
    }
    let factors: Vec<FormalComplex> = s
        .segments
        .iter()
        .map(|(a, b)| build_r_complex(a, b).map(|r| r.complex))
        .collect::<Result<_, _>>()?;
    let layer = tensor_complex(&factors)?;
    Ok(SegmentsLayer {
        segments: s.to_string(),
        dims: layer.dims(),
        betti: layer.betti()?,
    })
}

/// Every layer of the segments filtration on `[e, f]`.
pub fn segments_layers(f: &Partition, e: &Partition) -> Result<Vec<SegmentsLayer>, ResolutionError> {
    enumerate_segments_zero(f, e)?
        .iter()
        .map(|s| segments_filtration_r(f, e, s))
        .collect()
}
