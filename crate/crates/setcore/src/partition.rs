use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{max_set_size, FinSet, SetError, SetMap};

/// An equivalence relation on `{0, .., n-1}`.
///
/// Stored as a restricted growth string: element `x` lies in block
/// `labels[x]`, and blocks are numbered in order of their least element, so
/// equal relations have equal representations.
///
/// The order is the refinement order with *finer = greater*: the discrete
/// relation ω is the top element and the indiscrete relation α the bottom.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    labels: Vec<u8>,
}

impl Partition {
    /// Build from an arbitrary block labelling: `x ~ y` iff `tags[x] == tags[y]`.
    pub fn from_tags<T: PartialEq>(tags: &[T]) -> Self {
        let mut labels = Vec::with_capacity(tags.len());
        let mut reps: Vec<usize> = Vec::new();
        for (x, t) in tags.iter().enumerate() {
            match reps.iter().position(|&r| tags[r] == *t) {
                Some(b) => labels.push(b as u8),
                None => {
                    labels.push(reps.len() as u8);
                    reps.push(x);
                }
            }
        }
        Partition { labels }
    }

    /// Build from explicit blocks, which must be disjoint, nonempty and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, SetError> {
        let mut tags = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(SetError::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(SetError::InvalidPartition(format!(
                        "element {x} outside a carrier of size {n}"
                    )));
                }
                if tags[x] != usize::MAX {
                    return Err(SetError::InvalidPartition(format!(
                        "element {x} occurs in two blocks"
                    )));
                }
                tags[x] = b;
            }
        }
        if let Some(x) = tags.iter().position(|&t| t == usize::MAX) {
            return Err(SetError::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Self::from_tags(&tags))
    }

    /// The discrete relation ω (every block a singleton).
    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).map(|x| x as u8).collect(),
        }
    }

    /// The indiscrete relation α (a single block, or no block when `n = 0`).
    pub fn indiscrete(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    /// The kernel of a map: `x ~ y` iff both have the same image.
    pub fn kernel(map: &SetMap) -> Self {
        Self::from_tags(map.images())
    }

    /// Size of the carrier.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Index of the block containing `x`; blocks are numbered by least element.
    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x] as usize
    }

    /// The block index of every element.
    pub fn block_labels(&self) -> Vec<usize> {
        self.labels.iter().map(|&l| l as usize).collect()
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Blocks in canonical form: each block sorted, blocks sorted by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(x);
        }
        blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_indiscrete(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self ≥ other`: every block of `self` is contained in a block of `other`.
    pub fn finer_geq(&self, other: &Partition) -> Result<bool, SetError> {
        self.check_carrier(other)?;
        Ok(self.geq(other))
    }

    /// Unchecked form of [`Partition::finer_geq`]; carriers must agree.
    pub fn geq(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            let target = other.labels[x];
            let slot = &mut image[l as usize];
            if *slot == u8::MAX {
                *slot = target;
            } else if *slot != target {
                return false;
            }
        }
        true
    }

    /// Strictly finer.
    pub fn gt(&self, other: &Partition) -> bool {
        self != other && self.geq(other)
    }

    /// `self` covers `other`: strictly finer with nothing strictly between.
    pub fn covers(&self, other: &Partition) -> bool {
        self.gt(other) && self.num_blocks() == other.num_blocks() + 1
    }

    /// The coarsest relation finer than both (`x ~ y` iff related in both).
    pub fn intersection(&self, other: &Partition) -> Result<Partition, SetError> {
        self.check_carrier(other)?;
        let tags: Vec<(u8, u8)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Self::from_tags(&tags))
    }

    /// The finest relation coarser than both (transitive closure of the union).
    pub fn union_closure(&self, other: &Partition) -> Result<Partition, SetError> {
        self.check_carrier(other)?;
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for rel in [self, other] {
            let mut first = vec![usize::MAX; rel.num_blocks()];
            for x in 0..n {
                let b = rel.block_of(x);
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    let (a, c) = (find(&mut parent, first[b]), find(&mut parent, x));
                    parent[a] = c;
                }
            }
        }
        let tags: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Ok(Self::from_tags(&tags))
    }

    /// Restriction to the listed elements, re-indexed `0..elements.len()` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Partition {
        let tags: Vec<u8> = elements.iter().map(|&x| self.labels[x]).collect();
        Self::from_tags(&tags)
    }

    /// The pullback along `map`: `x ~ y` iff `map(x) ~ map(y)`.
    pub fn pullback(&self, map: &SetMap) -> Result<Partition, SetError> {
        if map.target().size() != self.size() {
            return Err(SetError::CarrierMismatch {
                left: map.target().size(),
                right: self.size(),
            });
        }
        let tags: Vec<u8> = map.images().iter().map(|&t| self.labels[t]).collect();
        Ok(Self::from_tags(&tags))
    }

    /// The finest relation on the target of `map` making `map` compatible with `self`.
    pub fn push(&self, map: &SetMap) -> Result<Partition, SetError> {
        if map.source().size() != self.size() {
            return Err(SetError::CarrierMismatch {
                left: map.source().size(),
                right: self.size(),
            });
        }
        let m = map.target().size();
        let mut rel = Partition::discrete(m);
        for block in self.blocks() {
            let imgs: Vec<usize> = block.iter().map(|&x| map.image(x)).collect();
            let tags: Vec<usize> = (0..m)
                .map(|t| if imgs.contains(&t) { imgs[0] } else { t })
                .collect();
            rel = rel.union_closure(&Partition::from_tags(&tags))?;
        }
        Ok(rel)
    }

    /// The quotient surjection `0..n → blocks`; block `b` is the target element `b`.
    pub fn projection(&self) -> SetMap {
        SetMap::from_images(self.num_blocks(), self.block_labels())
            .expect("block labels are in range")
    }

    /// Compact text form such as `01|2` using default labels.
    pub fn compact(&self) -> String {
        self.compact_with(&FinSet::new(self.size()))
    }

    /// Compact text form with explicit element labels; multi-character labels are comma separated.
    pub fn compact_with(&self, carrier: &FinSet) -> String {
        let wide = carrier.labels().iter().any(|l| l.chars().count() != 1);
        self.blocks()
            .iter()
            .map(|b| {
                let parts: Vec<&str> = b.iter().map(|&x| carrier.label(x)).collect();
                if wide {
                    parts.join(",")
                } else {
                    parts.concat()
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    fn check_carrier(&self, other: &Partition) -> Result<(), SetError> {
        if self.size() != other.size() {
            return Err(SetError::CarrierMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then(self.num_blocks().cmp(&other.num_blocks()))
            .then_with(|| self.blocks().cmp(&other.blocks()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let blocks: Vec<Vec<usize>> = Vec::deserialize(deserializer)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &blocks).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `{0, .., n-1}` in canonical order: by number of blocks,
/// then by canonical block list.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>, SetError> {
    let bound = max_set_size();
    if n > bound {
        return Err(SetError::SizeLimit { size: n, bound });
    }
    Ok(all_partitions(n))
}

/// All partitions of `{0, .., n-1}` without the size check.
pub(crate) fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    fn rec(pos: usize, max: u8, labels: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if pos == labels.len() {
            out.push(Partition {
                labels: labels.clone(),
            });
            return;
        }
        for l in 0..=max {
            labels[pos] = l;
            let next = if l == max { max + 1 } else { max };
            rec(pos + 1, next, labels, out);
        }
    }
    if n == 0 {
        out.push(Partition { labels });
    } else {
        rec(1, 1, &mut labels, &mut out);
    }
    out.sort();
    out
}

/// All partitions `g` with `top ≥ g ≥ bottom`, in canonical order.
pub fn interval(top: &Partition, bottom: &Partition) -> Result<Vec<Partition>, SetError> {
    if !top.finer_geq(bottom)? {
        return Err(SetError::InvalidPartition(format!(
            "{top} is not finer than {bottom}"
        )));
    }
    let all = enumerate_partitions(top.size())?;
    Ok(all
        .into_iter()
        .filter(|g| top.geq(g) && g.geq(bottom))
        .collect())
}

/// All strict chains `top = c_0 > c_1 > … > c_k = bottom`, in a deterministic order
/// (shorter chains first, then lexicographic in canonical partition order).
/// When `top = bottom` the single chain `[top]` is returned.
pub fn strict_chains(top: &Partition, bottom: &Partition) -> Result<Vec<Vec<Partition>>, SetError> {
    let elems = interval(top, bottom)?;
    let mut out = Vec::new();
    let mut current = vec![top.clone()];
    fn rec(
        elems: &[Partition],
        bottom: &Partition,
        current: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        let last = current.last().expect("chain is nonempty").clone();
        if last == *bottom {
            out.push(current.clone());
            return;
        }
        for g in elems {
            if last.gt(g) && g.geq(bottom) {
                current.push(g.clone());
                rec(elems, bottom, current, out);
                current.pop();
            }
        }
    }
    rec(&elems, bottom, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The quotient surjection `S → S/e`; each target element is labelled by the
/// label of the least element of its block.
pub fn quotient_map(s: &FinSet, e: &Partition) -> Result<SetMap, SetError> {
    if s.size() != e.size() {
        return Err(SetError::CarrierMismatch {
            left: s.size(),
            right: e.size(),
        });
    }
    let target = FinSet::with_labels(e.blocks().iter().map(|b| s.label(b[0]).to_string()))?;
    SetMap::new(s.clone(), target, e.block_labels())
}
