//! Skeleton towers `S ↪ U₀ ↠ U₁ ↠ ⋯ ↠ Uₙ = T`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use setcore::{all_permutations, IsoClassKey, Partition, SetMap};

use crate::error::BodyError;

/// A tower stored on its top set.
///
/// The top set is `U₀ = {0, …, top−1}` and the injection `i: S ↪ U₀` sends
/// `s` to `s`, so the first `source` points of `U₀` are the image of `S`. The
/// surjection `P: U₀ ↠ T` is the composite of all steps, and level `k` is the
/// quotient of `U₀` by `flag[k]`; the flag runs strictly downward from the
/// discrete relation to `ker P`. Every tower is isomorphic to one in this form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tower {
    source: usize,
    target: usize,
    projection: Vec<usize>,
    flag: Vec<Partition>,
}

impl Tower {
    /// Builds a tower from the composite projection and the flag.
    pub fn new(
        source: usize,
        target: usize,
        projection: Vec<usize>,
        flag: Vec<Partition>,
    ) -> Result<Self, BodyError> {
        let top = projection.len();
        if source > top {
            return Err(BodyError::InvalidTower(format!(
                "source of size {source} does not fit into a top set of size {top}"
            )));
        }
        let map = SetMap::from_images(target, projection.clone())?;
        if !map.is_surjective() {
            return Err(BodyError::InvalidTower("the composite projection is not surjective".into()));
        }
        let first = flag.first().ok_or_else(|| BodyError::InvalidTower("empty flag".into()))?;
        if first.size() != top || !first.is_discrete() {
            return Err(BodyError::InvalidTower("the flag must start at the discrete relation".into()));
        }
        if *flag.last().expect("nonempty") != map.kernel() {
            return Err(BodyError::InvalidTower("the flag must end at the kernel of the projection".into()));
        }
        for w in flag.windows(2) {
            if w[1].size() != top || !w[0].gt(&w[1]) {
                return Err(BodyError::InvalidTower("the flag must decrease strictly".into()));
            }
        }
        Ok(Self { source, target, projection, flag })
    }

    /// The tower `𝔭_i ℝ_p` with a single step, or `𝔭_i` when `p` is bijective.
    pub fn one_step(source: usize, p: &SetMap) -> Result<Self, BodyError> {
        let top = p.source().size();
        let mut flag = vec![Partition::discrete(top)];
        if !p.kernel().is_discrete() {
            flag.push(p.kernel());
        }
        Self::new(source, p.target().size(), p.images().to_vec(), flag)
    }

    /// Builds a tower from an injection `i: S ↪ U₀` and proper surjections
    /// `p₁, …, pₙ`, relabelling `U₀` so that `i` becomes the standard inclusion.
    pub fn from_maps(i: &SetMap, steps: &[SetMap]) -> Result<Self, BodyError> {
        if !i.is_injective() {
            return Err(BodyError::InvalidTower("i is not injective".into()));
        }
        let top = i.target().size();
        let mut order: Vec<usize> = i.images().to_vec();
        order.extend((0..top).filter(|u| !i.images().contains(u)));
        let mut composite = SetMap::identity(top);
        let mut flag = vec![Partition::discrete(top)];
        for p in steps {
            if p.kind() != setcore::MapKind::ProperSurjection {
                return Err(BodyError::InvalidTower("every step must be a proper surjection".into()));
            }
            composite = p.after(&composite)?;
            flag.push(composite.kernel());
        }
        let relabel = |e: &Partition| Partition::from_tags(&order.iter().map(|&u| e.block_of(u)).collect::<Vec<_>>());
        let projection = order.iter().map(|&u| composite.image(u)).collect();
        Self::new(i.source().size(), composite.target().size(), projection, flag.iter().map(relabel).collect())
    }

    /// Size of `S`.
    pub fn source(&self) -> usize {
        self.source
    }

    /// Size of `T`.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Size of the top set `U₀`.
    pub fn top(&self) -> usize {
        self.projection.len()
    }

    /// Number of steps `n`.
    pub fn length(&self) -> usize {
        self.flag.len() - 1
    }

    /// The composite projection `P: U₀ ↠ T`.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// The flag of kernels of `U₀ → U_k`.
    pub fn flag(&self) -> &[Partition] {
        &self.flag
    }

    /// Size of level `k`.
    pub fn level_size(&self, k: usize) -> usize {
        self.flag[k].num_blocks()
    }

    /// The ambient map `F = P∘i: S → T`.
    pub fn ambient(&self) -> Vec<usize> {
        self.projection[..self.source].to_vec()
    }

    /// Whether both towers live over the same ambient map.
    pub fn same_ambient(&self, other: &Tower) -> bool {
        self.source == other.source && self.target == other.target && self.ambient() == other.ambient()
    }

    /// The same tower with another flag between the discrete relation and `ker P`.
    pub fn with_flag(&self, flag: Vec<Partition>) -> Result<Self, BodyError> {
        Self::new(self.source, self.target, self.projection.clone(), flag)
    }

    /// The image of the tower under a bijection of `U₀` fixing the image of `S`;
    /// `perm[u]` is the new label of `u`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.top();
        let mut inverse = vec![0; n];
        for (u, &v) in perm.iter().enumerate() {
            inverse[v] = u;
        }
        let projection = (0..n).map(|v| self.projection[inverse[v]]).collect();
        let flag = self
            .flag
            .iter()
            .map(|e| Partition::from_tags(&(0..n).map(|v| e.block_of(inverse[v])).collect::<Vec<_>>()))
            .collect();
        Self { source: self.source, target: self.target, projection, flag }
    }

    fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.source as u8, self.target as u8, self.top() as u8, self.flag.len() as u8];
        out.extend(self.projection.iter().map(|&x| x as u8));
        for e in &self.flag {
            out.extend(e.block_labels().iter().map(|&x| x as u8));
        }
        out
    }

    /// Bijections of `U₀` fixing the image of `S`, as relabelling vectors.
    fn extra_permutations(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let extra = self.top() - self.source;
        all_permutations(extra).into_iter().map(move |p| {
            (0..self.source).chain(p.iter().map(|&x| x + self.source)).collect()
        })
    }

    /// Canonical representative of the isomorphism class together with the
    /// relabelling carrying `self` onto it.
    pub fn canonical_form(&self) -> (Tower, Vec<usize>) {
        let mut best: Option<(Vec<u8>, Tower, Vec<usize>)> = None;
        for perm in self.extra_permutations() {
            let candidate = self.relabel(&perm);
            let code = candidate.encode();
            if best.as_ref().is_none_or(|(b, _, _)| code < *b) {
                best = Some((code, candidate, perm));
            }
        }
        let (_, tower, perm) = best.expect("at least the identity permutation");
        (tower, perm)
    }

    /// Canonical key of the isomorphism class.
    pub fn canonical_key(&self) -> IsoClassKey {
        IsoClassKey::from_bytes(self.canonical_form().0.encode())
    }

    /// Automorphisms: bijections of `U₀` fixing `S` and preserving `P` and the flag.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.extra_permutations().filter(|p| self.relabel(p) == *self).collect()
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}↪{}] ", self.source, self.top())?;
        let flag: Vec<String> = self.flag.iter().map(|e| e.compact()).collect();
        write!(f, "{} ; P=", flag.join(" > "))?;
        let images: Vec<String> = self.projection.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", images.join(""))
    }
}

/// Isomorphism classes of towers over `F: S → T` (given by its image list)
/// whose top set has at most `max_interior` points, in canonical order.
pub fn enumerate_ske(ambient: &SetMap, max_interior: usize) -> Result<Vec<Tower>, BodyError> {
    let source = ambient.source().size();
    let target = ambient.target().size();
    let bound = setcore::max_set_size();
    if max_interior > bound {
        return Err(BodyError::BoundExceeded { size: max_interior, bound });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for top in source..=max_interior {
        for extra in setcore::all_maps(top - source, target) {
            let mut projection = ambient.images().to_vec();
            projection.extend(extra);
            let map = SetMap::from_images(target, projection.clone())?;
            if !map.is_surjective() {
                continue;
            }
            for chain in setcore::strict_chains(&Partition::discrete(top), &map.kernel())? {
                let tower = Tower::new(source, target, projection.clone(), chain)?;
                let (canonical, _) = tower.canonical_form();
                if seen.insert(canonical.encode()) {
                    out.push(canonical);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All flags on `U₀` refining the flag of `tower` (including the flag itself),
/// in deterministic order.
pub fn refinements(tower: &Tower) -> Result<Vec<Vec<Partition>>, BodyError> {
    let mut out: Vec<Vec<Partition>> = vec![vec![tower.flag[0].clone()]];
    for w in tower.flag.windows(2) {
        let chains = setcore::strict_chains(&w[0], &w[1])?;
        let mut next = Vec::with_capacity(out.len() * chains.len());
        for prefix in &out {
            for chain in &chains {
                let mut flag = prefix.clone();
                flag.extend(chain[1..].iter().cloned());
                next.push(flag);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// All partitions of an `n`-set lying strictly between `upper` and `lower`.
pub(crate) fn strictly_between(upper: &Partition, lower: &Partition) -> Vec<Partition> {
    setcore::interval(upper, lower)
        .unwrap_or_default()
        .into_iter()
        .filter(|e| e != upper && e != lower)
        .collect()
}
