use std::fmt;

use serde::{Serialize, Serializer};
use setcore::{max_set_size, strict_chains, Partition};

use crate::{IntervalIndex, PosetError, SegmentsElement};

/// Color of a zebra step: `i` (small) or `I` (capital).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Small,
    Capital,
}

impl Color {
    pub fn symbol(self) -> &'static str {
        match self {
            Color::Small => "i",
            Color::Capital => "I",
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

/// A strict flag `f = e_1 > … > e_n = e` with a color on every step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZebraElement {
    flag: Vec<Partition>,
    colors: Vec<Color>,
}

impl ZebraElement {
    pub fn new(flag: Vec<Partition>, colors: Vec<Color>) -> Result<Self, PosetError> {
        if flag.is_empty() {
            return Err(PosetError::InvalidElement("empty flag".into()));
        }
        if colors.len() + 1 != flag.len() {
            return Err(PosetError::InvalidElement(format!(
                "{} colors for a flag of length {}",
                colors.len(),
                flag.len()
            )));
        }
        for w in flag.windows(2) {
            if w[0].size() != w[1].size() {
                return Err(PosetError::IntervalMismatch);
            }
            if !w[0].gt(&w[1]) {
                return Err(PosetError::InvalidElement(format!(
                    "flag step {} > {} is not strict",
                    w[0], w[1]
                )));
            }
        }
        Ok(ZebraElement { flag, colors })
    }

    pub fn flag(&self) -> &[Partition] {
        &self.flag
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn top(&self) -> &Partition {
        &self.flag[0]
    }

    pub fn bottom(&self) -> &Partition {
        self.flag.last().expect("flag is nonempty")
    }

    fn position(&self, p: &Partition) -> Option<usize> {
        self.flag.iter().position(|q| q == p)
    }
}

impl fmt::Display for ZebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.flag[0])?;
        for (c, p) in self.colors.iter().zip(&self.flag[1..]) {
            write!(f, " {} {}", c.symbol(), p)?;
        }
        write!(f, ")")
    }
}

/// The zebra order: `y` refines the flag of `x`; every `i`-step of `x` is
/// subdivided in `y` into `i`-steps only; every `I`-step of `x` is subdivided
/// into steps that are all `i` except possibly the leftmost one.
pub fn zebra_leq(x: &ZebraElement, y: &ZebraElement) -> Result<bool, PosetError> {
    if x.top() != y.top() || x.bottom() != y.bottom() {
        return Err(PosetError::IntervalMismatch);
    }
    let mut positions = Vec::with_capacity(x.flag.len());
    for p in &x.flag {
        match y.position(p) {
            Some(i) => positions.push(i),
            None => return Ok(false),
        }
    }
    for (k, c) in x.colors.iter().enumerate() {
        let (lo, hi) = (positions[k], positions[k + 1]);
        let sub = &y.colors[lo..hi];
        let ok = match c {
            Color::Small => sub.iter().all(|&s| s == Color::Small),
            Color::Capital => sub[1..].iter().all(|&s| s == Color::Small),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All zebra elements on `[e, f]`: strict chains in canonical chain order, each
/// with every coloring (`i` before `I`, leftmost step most significant).
pub fn enumerate_zebra(f: &Partition, e: &Partition) -> Result<Vec<ZebraElement>, PosetError> {
    let bound = max_set_size();
    if f.size() > bound {
        return Err(setcore::SetError::SizeLimit { size: f.size(), bound }.into());
    }
    let mut out = Vec::new();
    for chain in strict_chains(f, e)? {
        let steps = chain.len() - 1;
        for mask in 0..(1u32 << steps) {
            let colors = (0..steps)
                .map(|k| {
                    if mask & (1 << (steps - 1 - k)) != 0 {
                        Color::Capital
                    } else {
                        Color::Small
                    }
                })
                .collect();
            out.push(ZebraElement { flag: chain.clone(), colors });
        }
    }
    Ok(out)
}

/// The flag of segments formed by the `I`-colored steps, in flag order.
pub fn nu(s: &ZebraElement) -> SegmentsElement {
    let segs = s
        .colors
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Color::Capital)
        .map(|(k, _)| (s.flag[k].clone(), s.flag[k + 1].clone()))
        .collect();
    SegmentsElement::new(segs).expect("I-steps of a strict flag form a flag of segments")
}

/// The constructed candidate for the least element above `s` in the fiber of `t`.
///
/// The flag of `s` is merged with the endpoints of `t`; a step equal to a
/// segment of `t` is colored `I`, every other step `i`. Returns `None` when
/// `nu(s) ≤ t` fails.
pub(crate) fn least_above_construction(s: &ZebraElement, t: &SegmentsElement) -> Option<ZebraElement> {
    if !crate::segments_leq(&nu(s), t) || !t.within(s.top(), s.bottom()) {
        return None;
    }
    let mut points: Vec<Partition> = s.flag.clone();
    for (a, b) in t.segments() {
        for p in [a, b] {
            if !points.contains(p) {
                points.push(p.clone());
            }
        }
    }
    points.sort_by(|x, y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if x.geq(y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    if points.windows(2).any(|w| !w[0].gt(&w[1])) {
        return None;
    }
    let colors = points
        .windows(2)
        .map(|w| {
            if t.segments().iter().any(|(a, b)| *a == w[0] && *b == w[1]) {
                Color::Capital
            } else {
                Color::Small
            }
        })
        .collect();
    let candidate = ZebraElement { flag: points, colors };
    (nu(&candidate) == *t).then_some(candidate)
}

/// The least element `s_t` of `{x : nu(x) = t, x ≥ s}`, or `None` when `nu(s) ≤ t` fails.
///
/// The construction is cross-checked against a brute-force search over the
/// fiber; a disagreement is reported as [`PosetError::Discrepancy`].
pub fn least_above(s: &ZebraElement, t: &SegmentsElement) -> Result<Option<ZebraElement>, PosetError> {
    let index = IntervalIndex::new(s.top(), s.bottom())?;
    let constructed = least_above_construction(s, t);
    let brute = index.least_above_brute(s, t)?;
    if constructed != brute {
        return Err(PosetError::Discrepancy(format!(
            "least element above {s} in the fiber of {t}: construction {:?}, brute force {:?}",
            constructed.map(|x| x.to_string()),
            brute.map(|x| x.to_string())
        )));
    }
    Ok(constructed)
}

/// The initial object of the fiber of `t`:
/// `(f i a_1 I b_1 i a_2 I … I b_n i e)` with every `x i x` fragment collapsed.
pub(crate) fn initial_object_construction(
    f: &Partition,
    e: &Partition,
    t: &SegmentsElement,
) -> Result<ZebraElement, PosetError> {
    if !t.within(f, e) {
        return Err(PosetError::EmptyFiber(t.to_string()));
    }
    let mut flag = vec![f.clone()];
    let mut colors = Vec::new();
    for (a, b) in t.segments() {
        if flag.last() != Some(a) {
            flag.push(a.clone());
            colors.push(Color::Small);
        }
        flag.push(b.clone());
        colors.push(Color::Capital);
    }
    if flag.last() != Some(e) {
        flag.push(e.clone());
        colors.push(Color::Small);
    }
    ZebraElement::new(flag, colors).map_err(|_| PosetError::EmptyFiber(t.to_string()))
}

/// The initial object `t_i` of the fiber of `t` over `[e, f]`, verified least
/// in the fiber by brute force.
pub fn initial_object(f: &Partition, e: &Partition, t: &SegmentsElement) -> Result<ZebraElement, PosetError> {
    let index = IntervalIndex::new(f, e)?;
    let fiber = index.fiber(t);
    if fiber.is_empty() {
        return Err(PosetError::EmptyFiber(t.to_string()));
    }
    let constructed = initial_object_construction(f, e, t)?;
    let brute = index.least_in_fiber(t);
    if brute.as_ref() != Some(&constructed) {
        return Err(PosetError::Discrepancy(format!(
            "initial object of the fiber of {t}: construction {constructed}, brute force {:?}",
            brute.map(|x| x.to_string())
        )));
    }
    Ok(constructed)
}
