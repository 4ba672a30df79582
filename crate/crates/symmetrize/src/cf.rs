//! Objects of the groupoid `C_f`: pairs `S ↪ U ↠ T` with `p∘i = f` and `p`
//! `i`-super-surjective.

use std::fmt;

use bodies::{is_supersurjective, Tower};
use serde::Serialize;
use setcore::{all_maps, Partition, SetMap};

use crate::error::SymmError;

/// An object `(i, p)` of `C_f`, stored as a tower with at most one step.
///
/// The first `|S|` points of `U` are `i(S)`; the remaining points are the
/// extra points. Isomorphisms are bijections of `U` fixing `i(S)` and
/// commuting with `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CfObject {
    tower: Tower,
}

impl CfObject {
    /// The object with `U = S ⊔ extras`, `i` the inclusion and `p` extending
    /// `f` by `extra_images`.
    pub fn new(f: &SetMap, extra_images: &[usize]) -> Result<Self, SymmError> {
        if !f.is_surjective() {
            return Err(SymmError::NotSurjective);
        }
        let mut images = f.images().to_vec();
        images.extend_from_slice(extra_images);
        let p = SetMap::from_images(f.target().size(), images)?;
        Self::from_tower(Tower::one_step(f.source().size(), &p)?)
    }

    /// Wraps a tower after checking that it has at most one step and is
    /// super-surjective.
    pub fn from_tower(tower: Tower) -> Result<Self, SymmError> {
        if tower.length() > 1 {
            return Err(SymmError::NotOneStep(tower.to_string()));
        }
        let object = Self { tower };
        if !is_supersurjective(&object.inclusion(), &object.surjection()) {
            return Err(SymmError::NotSupersurjective(object.to_string()));
        }
        Ok(object)
    }

    /// The underlying tower `𝔭_i ℝ_p`.
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// `|S|`.
    pub fn source(&self) -> usize {
        self.tower.source()
    }

    /// `|T|`.
    pub fn target(&self) -> usize {
        self.tower.target()
    }

    /// `|U|`.
    pub fn top(&self) -> usize {
        self.tower.top()
    }

    /// The inclusion `i: S ↪ U`.
    pub fn inclusion(&self) -> SetMap {
        SetMap::from_images(self.top(), (0..self.source()).collect()).expect("S fits into U")
    }

    /// The surjection `p: U ↠ T`.
    pub fn surjection(&self) -> SetMap {
        SetMap::from_images(self.target(), self.tower.projection().to_vec()).expect("p lands in T")
    }

    /// The ambient map `f = p∘i`.
    pub fn ambient(&self) -> SetMap {
        SetMap::from_images(self.target(), self.tower.ambient()).expect("f lands in T")
    }

    /// `ker p` as a partition of `U`.
    pub fn kernel(&self) -> Partition {
        self.tower.flag().last().expect("nonempty flag").clone()
    }

    /// The image under a relabelling of `U` fixing `i(S)`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self { tower: self.tower.relabel(perm) }
    }

    /// The canonical representative of the isomorphism class and the
    /// relabelling carrying `self` onto it.
    pub fn canonical_form(&self) -> (Self, Vec<usize>) {
        let (tower, perm) = self.tower.canonical_form();
        (Self { tower }, perm)
    }

    /// Whether the object is its own canonical representative.
    pub fn is_canonical(&self) -> bool {
        self.canonical_form().0 == *self
    }

    /// `Aut_{C_f}(i, p)` as relabellings of `U`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.tower.automorphisms()
    }
}

impl fmt::Display for CfObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.tower.projection().iter().map(|x| x.to_string()).collect();
        write!(f, "{}↪{} p={}", self.source(), self.top(), p.join(""))
    }
}

/// Canonical representatives of all isomorphism classes of `C_f` with
/// `|U| ≤ max_u`, ordered by `|U|` and then by their encoding.
pub fn enumerate_cf(f: &SetMap, max_u: usize) -> Result<Vec<CfObject>, SymmError> {
    if !f.is_surjective() {
        return Err(SymmError::NotSurjective);
    }
    let bound = setcore::max_set_size();
    if max_u > bound {
        return Err(SymmError::BoundExceeded { size: max_u, bound });
    }
    let s = f.source().size();
    let mut out = Vec::new();
    for top in s..=max_u.max(s) {
        for extra in all_maps(top - s, f.target().size()) {
            if extra.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            if let Ok(object) = CfObject::new(f, &extra) {
                out.push(object.canonical_form().0);
            }
        }
    }
    out.sort_by(|a, b| a.top().cmp(&b.top()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}
