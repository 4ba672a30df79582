use std::fmt;

use chainlab::{q, BasisKey, ComplexBuilder, FormalComplex, Orientation};
use serde::Serialize;
use setcore::{max_set_size, strict_chains, Partition, SetError};

use crate::ResolutionError;

/// Decoration of one flag step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    P,
    Delta,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::P => "p",
            Symbol::Delta => "δ",
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// A word `(e_1 u_12 e_2 … e_N)` on a strict flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PDWord {
    pub flag: Vec<Partition>,
    pub symbols: Vec<Symbol>,
}

impl PDWord {
    /// Number of `δ` symbols.
    pub fn degree(&self) -> i64 {
        self.symbols.iter().filter(|&&s| s == Symbol::Delta).count() as i64
    }

    /// `|H|`, the length of the flag.
    pub fn len(&self) -> usize {
        self.flag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flag.is_empty()
    }

    pub fn key(&self) -> BasisKey {
        BasisKey::new(self.to_string())
    }

    /// Signed terms of the differential.
    pub fn boundary(&self) -> Vec<(i64, PDWord)> {
        let mut out = Vec::new();
        let mut deltas_before = 0i64;
        for k in 0..self.symbols.len() {
            if self.symbols[k] == Symbol::Delta {
                let sign = if deltas_before % 2 == 0 { 1 } else { -1 };
                let mut a = self.clone();
                a.symbols[k] = Symbol::P;
                out.push((sign, a));
                if k + 1 < self.symbols.len() {
                    let mut merged = self.clone();
                    merged.flag.remove(k + 1);
                    let next = merged.symbols.remove(k + 1);
                    merged.symbols[k] = next;
                    out.push((sign, merged));
                }
                deltas_before += 1;
            }
        }
        out
    }
}

impl fmt::Display for PDWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.flag[0])?;
        for (s, p) in self.symbols.iter().zip(&self.flag[1..]) {
            write!(f, " {} {}", s.as_str(), p)?;
        }
        Ok(())
    }
}

/// The complex on an interval together with its words.
#[derive(Clone, Debug)]
pub struct RComplex {
    pub top: Partition,
    pub bottom: Partition,
    pub words: Vec<PDWord>,
    pub complex: FormalComplex,
}

impl RComplex {
    /// The subcomplex spanned by words with `|H| ≤ n`.
    pub fn word_filtration(&self, n: usize) -> Result<FormalComplex, ResolutionError> {
        let keep: std::collections::HashSet<BasisKey> =
            self.words.iter().filter(|w| w.len() <= n).map(PDWord::key).collect();
        Ok(self.complex.subcomplex(|_, k| keep.contains(k))?)
    }

    /// Longest flag length occurring.
    pub fn max_len(&self) -> usize {
        self.words.iter().map(PDWord::len).max().unwrap_or(0)
    }
}

/// Build the word complex on `f ≥ e`.
pub fn build_r_complex(f: &Partition, e: &Partition) -> Result<RComplex, ResolutionError> {
    let bound = max_set_size();
    if f.size() > bound {
        return Err(SetError::SizeLimit { size: f.size(), bound }.into());
    }
    if !f.finer_geq(e)? {
        return Err(ResolutionError::NotOrdered {
            top: f.to_string(),
            bottom: e.to_string(),
        });
    }
    let mut words = Vec::new();
    for chain in strict_chains(f, e)? {
        let steps = chain.len() - 1;
        for mask in 0..(1u32 << steps) {
            let symbols = (0..steps)
                .map(|k| if mask >> k & 1 == 1 { Symbol::Delta } else { Symbol::P })
                .collect();
            words.push(PDWord {
                flag: chain.clone(),
                symbols,
            });
        }
    }
    let mut builder = ComplexBuilder::new(Orientation::Homological);
    for w in &words {
        builder.add_generator(w.degree(), w.key());
    }
    for w in &words {
        for (sign, t) in w.boundary() {
            builder.add_entry(w.degree(), w.key(), t.key(), q(sign));
        }
    }
    Ok(RComplex {
        top: f.clone(),
        bottom: e.clone(),
        words,
        complex: builder.build()?,
    })
}
