use std::fmt;

use serde::Serialize;
use setcore::{interval, Partition};

use crate::PosetError;

/// A flag of strict segments `[a_1,b_1], …, [a_n,b_n]` with `a_k > b_k ≥ a_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SegmentsElement {
    segments: Vec<(Partition, Partition)>,
}

impl SegmentsElement {
    pub fn new(segments: Vec<(Partition, Partition)>) -> Result<Self, PosetError> {
        for (a, b) in &segments {
            if a.size() != b.size() {
                return Err(PosetError::IntervalMismatch);
            }
            if !a.gt(b) {
                return Err(PosetError::InvalidElement(format!(
                    "segment [{a},{b}] is not strict"
                )));
            }
        }
        for w in segments.windows(2) {
            if w[0].0.size() != w[1].0.size() {
                return Err(PosetError::IntervalMismatch);
            }
            if !w[0].1.geq(&w[1].0) {
                return Err(PosetError::InvalidElement(format!(
                    "segments [{},{}] and [{},{}] are not ordered",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(SegmentsElement { segments })
    }

    /// The empty flag of segments.
    pub fn empty() -> Self {
        SegmentsElement { segments: Vec::new() }
    }

    pub fn segments(&self) -> &[(Partition, Partition)] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    /// Whether every endpoint lies in the interval `[e, f]`.
    pub fn within(&self, f: &Partition, e: &Partition) -> bool {
        self.segments.iter().all(|(a, b)| {
            a.size() == f.size() && f.geq(a) && b.geq(e)
        })
    }

    /// Whether consecutive segments are separated strictly (`b_k > a_{k+1}`).
    pub fn is_strictly_separated(&self) -> bool {
        self.segments.windows(2).all(|w| w[0].1.gt(&w[1].0))
    }
}

impl fmt::Display for SegmentsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// `u ≤ v`: every segment `[a',b']` of `v` has a segment `[a,b]` of `u` with
/// `a = a' > b' ≥ b`. The empty flag is the greatest element.
pub fn segments_leq(u: &SegmentsElement, v: &SegmentsElement) -> bool {
    v.segments.iter().all(|(a2, b2)| {
        u.segments
            .iter()
            .any(|(a, b)| a == a2 && a2.gt(b2) && b2.geq(b))
    })
}

/// All flags of segments with endpoints in `[e, f]`, including the empty one,
/// in a deterministic order.
pub fn enumerate_segments(f: &Partition, e: &Partition) -> Result<Vec<SegmentsElement>, PosetError> {
    let elems = interval(f, e)?;
    let mut pairs: Vec<(Partition, Partition)> = Vec::new();
    for a in &elems {
        for b in &elems {
            if a.gt(b) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<(Partition, Partition)> = Vec::new();
    fn rec(
        pairs: &[(Partition, Partition)],
        current: &mut Vec<(Partition, Partition)>,
        out: &mut Vec<SegmentsElement>,
    ) {
        out.push(SegmentsElement { segments: current.clone() });
        for p in pairs {
            let ok = current.last().is_none_or(|(_, b)| b.geq(&p.0));
            if ok {
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
