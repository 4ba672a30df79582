use std::collections::HashMap;

use serde::Serialize;
use setcore::Partition;

use crate::segments::{enumerate_segments, segments_leq, SegmentsElement};
use crate::zebra::{
    enumerate_zebra, initial_object_construction, least_above_construction, nu, zebra_leq,
    ZebraElement,
};
use crate::PosetError;

/// Precomputed zebra elements, their order relation and `nu`-fibers on one interval.
#[derive(Clone, Debug)]
pub struct IntervalIndex {
    top: Partition,
    bottom: Partition,
    elements: Vec<ZebraElement>,
    position: HashMap<ZebraElement, usize>,
    leq: Vec<Vec<u64>>,
    nus: Vec<SegmentsElement>,
}

/// Outcome of the exhaustive checks on one interval.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PosetReport {
    pub zebra_elements: usize,
    pub segments_elements: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub nu_monotone: bool,
    pub segments_partial_order: bool,
    pub least_above_verified: bool,
    pub initial_objects_verified: bool,
    pub counterexample: Option<String>,
}

impl PosetReport {
    pub fn all_hold(&self) -> bool {
        self.reflexive
            && self.antisymmetric
            && self.transitive
            && self.nu_monotone
            && self.segments_partial_order
            && self.least_above_verified
            && self.initial_objects_verified
    }
}

fn bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

impl IntervalIndex {
    pub fn new(top: &Partition, bottom: &Partition) -> Result<Self, PosetError> {
        let elements = enumerate_zebra(top, bottom)?;
        let n = elements.len();
        let words = n.div_ceil(64);
        let mut leq = vec![vec![0u64; words]; n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                if zebra_leq(x, y)? {
                    leq[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let position = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let nus = elements.iter().map(nu).collect();
        Ok(IntervalIndex {
            top: top.clone(),
            bottom: bottom.clone(),
            elements,
            position,
            leq,
            nus,
        })
    }

    pub fn elements(&self) -> &[ZebraElement] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(&self.leq[i], j)
    }

    pub fn position(&self, x: &ZebraElement) -> Option<usize> {
        self.position.get(x).copied()
    }

    /// Indices of the elements with `nu(x) = t`.
    pub fn fiber(&self, t: &SegmentsElement) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.nus[i] == *t).collect()
    }

    fn least_among(&self, candidates: &[usize]) -> Option<usize> {
        candidates
            .iter()
            .copied()
            .find(|&i| candidates.iter().all(|&j| self.leq(i, j)))
    }

    /// The least element of the fiber of `t`, found by exhaustive comparison.
    pub fn least_in_fiber(&self, t: &SegmentsElement) -> Option<ZebraElement> {
        self.least_among(&self.fiber(t)).map(|i| self.elements[i].clone())
    }

    /// The least element of `{x : nu(x) = t, x ≥ s}` by exhaustive comparison.
    pub fn least_above_brute(&self, s: &ZebraElement, t: &SegmentsElement) -> Result<Option<ZebraElement>, PosetError> {
        let si = self.position(s).ok_or(PosetError::IntervalMismatch)?;
        let candidates: Vec<usize> = self.fiber(t).into_iter().filter(|&j| self.leq(si, j)).collect();
        if candidates.is_empty() {
            return Ok(None);
        }
        match self.least_among(&candidates) {
            Some(i) => Ok(Some(self.elements[i].clone())),
            None => Err(PosetError::Discrepancy(format!(
                "{} elements above {s} in the fiber of {t} have no least element",
                candidates.len()
            ))),
        }
    }

    /// Run every exhaustive check on this interval.
    pub fn verify(&self) -> Result<PosetReport, PosetError> {
        let n = self.elements.len();
        let segments = enumerate_segments(&self.top, &self.bottom)?;
        let mut report = PosetReport {
            zebra_elements: n,
            segments_elements: segments.len(),
            reflexive: true,
            antisymmetric: true,
            transitive: true,
            nu_monotone: true,
            segments_partial_order: true,
            least_above_verified: true,
            initial_objects_verified: true,
            counterexample: None,
        };
        let note = |report: &mut PosetReport, msg: String| {
            if report.counterexample.is_none() {
                report.counterexample = Some(msg);
            }
        };
        for i in 0..n {
            let x = &self.elements[i];
            if !self.leq(i, i) {
                report.reflexive = false;
                note(&mut report, format!("{x} ≰ itself"));
            }
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                let y = &self.elements[j];
                if i != j && self.leq(j, i) {
                    report.antisymmetric = false;
                    note(&mut report, format!("{x} ≤ {y} ≤ {x}"));
                }
                if self.leq[j].iter().zip(&self.leq[i]).any(|(rj, ri)| rj & !ri != 0) {
                    report.transitive = false;
                    note(&mut report, format!("transitivity fails through {x} ≤ {y}"));
                }
                if !segments_leq(&self.nus[i], &self.nus[j]) {
                    report.nu_monotone = false;
                    note(&mut report, format!("nu not monotone on {x} ≤ {y}"));
                }
            }
        }
        let m = segments.len();
        let words = m.div_ceil(64);
        let mut sleq = vec![vec![0u64; words]; m];
        for (a, u) in segments.iter().enumerate() {
            for (b, v) in segments.iter().enumerate() {
                if segments_leq(u, v) {
                    sleq[a][b / 64] |= 1 << (b % 64);
                }
            }
        }
        for a in 0..m {
            if !bit(&sleq[a], a) {
                report.segments_partial_order = false;
                note(&mut report, format!("segments {} ≰ itself", segments[a]));
            }
            for b in 0..m {
                if !bit(&sleq[a], b) {
                    continue;
                }
                if a != b && bit(&sleq[b], a) {
                    report.segments_partial_order = false;
                    note(&mut report, format!("segments {} and {} are equivalent", segments[a], segments[b]));
                }
                if sleq[b].iter().zip(&sleq[a]).any(|(rb, ra)| rb & !ra != 0) {
                    report.segments_partial_order = false;
                    note(&mut report, format!("segments transitivity fails through {}", segments[b]));
                }
            }
        }
        let mut fibers: HashMap<&SegmentsElement, Vec<usize>> = HashMap::new();
        for (i, t) in self.nus.iter().enumerate() {
            fibers.entry(t).or_default().push(i);
        }
        for t in &segments {
            let fiber = fibers.get(t).cloned().unwrap_or_default();
            if !fiber.is_empty() {
                let constructed = initial_object_construction(&self.top, &self.bottom, t).ok();
                let brute = self.least_among(&fiber).map(|i| self.elements[i].clone());
                if constructed.is_none() || constructed != brute {
                    report.initial_objects_verified = false;
                    note(
                        &mut report,
                        format!(
                            "initial object of {t}: construction {:?}, brute force {:?}",
                            constructed.map(|x| x.to_string()),
                            brute.map(|x| x.to_string())
                        ),
                    );
                }
            }
            for (si, s) in self.elements.iter().enumerate() {
                let candidates: Vec<usize> = fiber.iter().copied().filter(|&j| self.leq(si, j)).collect();
                let brute = self.least_among(&candidates).map(|i| self.elements[i].clone());
                let constructed = least_above_construction(s, t);
                let expected_some = segments_leq(&self.nus[si], t);
                if constructed != brute || expected_some != brute.is_some() {
                    report.least_above_verified = false;
                    note(
                        &mut report,
                        format!(
                            "least above {s} in the fiber of {t}: construction {:?}, brute force {:?}",
                            constructed.map(|x| x.to_string()),
                            brute.map(|x| x.to_string())
                        ),
                    );
                }
            }
        }
        Ok(report)
    }
}
