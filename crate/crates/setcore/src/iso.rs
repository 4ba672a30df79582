use std::fmt;

use serde::{Serialize, Serializer};

use crate::{SetError, SetMap};

/// Largest interior set handled by exhaustive relabeling.
pub const MAX_INTERIOR: usize = 7;

/// A canonical encoding of a diagram of finite sets up to relabeling of its
/// interior sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClassKey(Vec<u8>);

impl IsoClassKey {
    /// Wraps an encoding produced by a caller-specific canonicalization.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for IsoClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for IsoClassKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    from: usize,
    to: usize,
    images: Vec<usize>,
}

/// A finite diagram of sets and maps. Boundary sets keep their labels; interior
/// sets may be relabeled freely.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    sizes: Vec<usize>,
    boundary: Vec<bool>,
    arrows: Vec<Arrow>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a set and return its index.
    pub fn add_set(&mut self, size: usize, boundary: bool) -> usize {
        self.sizes.push(size);
        self.boundary.push(boundary);
        self.sizes.len() - 1
    }

    /// Add a map between two previously added sets.
    pub fn add_map(&mut self, from: usize, to: usize, map: &SetMap) -> Result<(), SetError> {
        if from >= self.sizes.len() || to >= self.sizes.len() {
            return Err(SetError::MalformedTower(format!(
                "arrow {from}->{to} references a missing set"
            )));
        }
        if map.source().size() != self.sizes[from] || map.target().size() != self.sizes[to] {
            return Err(SetError::MalformedTower(format!(
                "arrow {from}->{to} has shape {}->{} but the sets have sizes {}->{}",
                map.source().size(),
                map.target().size(),
                self.sizes[from],
                self.sizes[to]
            )));
        }
        self.arrows.push(Arrow {
            from,
            to,
            images: map.images().to_vec(),
        });
        Ok(())
    }

    /// Forget which sets are boundary sets.
    pub fn all_interior(&self) -> Diagram {
        let mut d = self.clone();
        d.boundary.iter_mut().for_each(|b| *b = false);
        d
    }

    fn encode(&self, perms: &[&[usize]]) -> Vec<u8> {
        let mut out = Vec::with_capacity(64);
        out.push(self.sizes.len() as u8);
        for (s, &b) in self.sizes.iter().zip(&self.boundary) {
            out.push(*s as u8);
            out.push(b as u8);
        }
        for a in &self.arrows {
            out.push(a.from as u8);
            out.push(a.to as u8);
            let mut relabeled = vec![0u8; a.images.len()];
            for (x, &t) in a.images.iter().enumerate() {
                relabeled[perms[a.from][x]] = perms[a.to][t] as u8;
            }
            out.extend(relabeled);
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// The minimal encoding over all relabelings of interior sets.
///
/// Two diagrams with the same sets, boundary flags and arrow shapes receive the
/// same key exactly when some family of bijections of the interior sets carries
/// one onto the other.
pub fn canonical_key(diagram: &Diagram) -> Result<IsoClassKey, SetError> {
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(diagram.sizes.len());
    for (&n, &b) in diagram.sizes.iter().zip(&diagram.boundary) {
        if b {
            choices.push(vec![(0..n).collect()]);
        } else {
            if n > MAX_INTERIOR {
                return Err(SetError::SizeLimit {
                    size: n,
                    bound: MAX_INTERIOR,
                });
            }
            choices.push(permutations(n));
        }
    }
    let mut idx = vec![0usize; choices.len()];
    let mut best: Option<Vec<u8>> = None;
    loop {
        let perms: Vec<&[usize]> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].as_slice())
            .collect();
        let enc = diagram.encode(&perms);
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(IsoClassKey(best.unwrap_or_default()));
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All surjections `{0..n} → {0..k}` as image vectors, in lexicographic order.
pub fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    all_maps(n, k)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; k];
            m.iter().for_each(|&t| seen[t] = true);
            seen.into_iter().all(|b| b)
        })
        .collect()
}

/// All injections `{0..k} → {0..n}` as image vectors, in lexicographic order.
pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    all_maps(k, n)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; n];
            m.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
        })
        .collect()
}

/// All maps `{0..n} → {0..k}` as image vectors, in lexicographic order.
pub fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// All permutations of `{0..n}` in a fixed order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p = permutations(n);
    p.sort();
    p
}
