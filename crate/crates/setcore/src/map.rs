use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{FinSet, Partition, SetError};

/// Classification of a set map by injectivity and surjectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Bijection,
    Injection,
    ProperSurjection,
    General,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Bijection => "bijection",
            MapKind::Injection => "injection",
            MapKind::ProperSurjection => "proper-surjection",
            MapKind::General => "general",
        })
    }
}

/// A map of finite sets given by the image index of every source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMap {
    source: FinSet,
    target: FinSet,
    images: Vec<usize>,
}

impl SetMap {
    pub fn new(source: FinSet, target: FinSet, images: Vec<usize>) -> Result<Self, SetError> {
        if images.len() != source.size() {
            return Err(SetError::CarrierMismatch {
                left: images.len(),
                right: source.size(),
            });
        }
        if let Some((element, &image)) = images
            .iter()
            .enumerate()
            .find(|(_, &t)| t >= target.size())
        {
            return Err(SetError::ImageOutOfRange {
                element,
                image,
                target: target.size(),
            });
        }
        Ok(SetMap {
            source,
            target,
            images,
        })
    }

    /// A map between default-labelled sets `{0..images.len()} → {0..target_size}`.
    pub fn from_images(target_size: usize, images: Vec<usize>) -> Result<Self, SetError> {
        Self::new(FinSet::new(images.len()), FinSet::new(target_size), images)
    }

    pub fn identity(n: usize) -> Self {
        SetMap {
            source: FinSet::new(n),
            target: FinSet::new(n),
            images: (0..n).collect(),
        }
    }

    /// The map from `{0..n}` to a one-point set.
    pub fn to_point(n: usize) -> Self {
        SetMap {
            source: FinSet::new(n),
            target: FinSet::point(),
            images: vec![0; n],
        }
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &t in &self.images {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &t in &self.images {
            seen[t] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn kind(&self) -> MapKind {
        match (self.is_injective(), self.is_surjective()) {
            (true, true) => MapKind::Bijection,
            (true, false) => MapKind::Injection,
            (false, true) => MapKind::ProperSurjection,
            (false, false) => MapKind::General,
        }
    }

    /// Source elements mapping to `t`, in increasing order.
    pub fn fiber(&self, t: usize) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.images[x] == t)
            .collect()
    }

    pub fn kernel(&self) -> Partition {
        Partition::kernel(self)
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn after(&self, inner: &SetMap) -> Result<SetMap, SetError> {
        if inner.target.size() != self.source.size() {
            return Err(SetError::NotComposable {
                inner_target: inner.target.size(),
                outer_source: self.source.size(),
            });
        }
        Ok(SetMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    /// Disjoint union of maps: sources and targets are concatenated in order.
    pub fn disjoint_union(maps: &[SetMap]) -> SetMap {
        let mut images = Vec::new();
        let mut offset = 0;
        for m in maps {
            images.extend(m.images.iter().map(|&t| t + offset));
            offset += m.target.size();
        }
        SetMap::from_images(offset, images).expect("offsets stay in range")
    }
}

#[derive(Serialize, Deserialize)]
struct SetMapRepr {
    source: FinSet,
    target: FinSet,
    pairs: Vec<(String, String)>,
}

impl Serialize for SetMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SetMapRepr {
            source: self.source.clone(),
            target: self.target.clone(),
            pairs: self
                .images
                .iter()
                .enumerate()
                .map(|(x, &t)| {
                    (
                        self.source.label(x).to_string(),
                        self.target.label(t).to_string(),
                    )
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = SetMapRepr::deserialize(deserializer)?;
        let mut images = vec![usize::MAX; repr.source.size()];
        for (s, t) in &repr.pairs {
            let x = repr
                .source
                .index_of(s)
                .ok_or_else(|| D::Error::custom(format!("unknown source element {s:?}")))?;
            let y = repr
                .target
                .index_of(t)
                .ok_or_else(|| D::Error::custom(format!("unknown target element {t:?}")))?;
            images[x] = y;
        }
        if images.contains(&usize::MAX) {
            return Err(D::Error::custom("map is not defined on every source element"));
        }
        SetMap::new(repr.source, repr.target, images).map_err(D::Error::custom)
    }
}
