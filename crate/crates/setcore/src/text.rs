//! Compact text grammar for partitions and maps.
//!
//! ```text
//! partition := block ("|" block)*
//! block     := label+            (single-character labels, e.g. "12|3")
//!            | label ("," label)* (when any label is longer than one character)
//! map       := "[" n "]->pt"                 constant map from {1..n} to a point
//!            | "[" n "]->[" n "]"            identity of {1..n}
//!            | clause (";" clause)*
//! clause    := label ("," label)* "->" label   the listed sources map to the label
//! ```
//!
//! Element sets are ordered numerically when every label is an integer and
//! lexicographically otherwise. JSON is accepted as well: a partition as a
//! list of blocks, a map as an object with `source`, `target` and `pairs`, or
//! as a bare list of `[source, target]` pairs.

use serde_json::Value;

use crate::{FinSet, Partition, SetError, SetMap};

fn natural_sort(labels: &mut Vec<String>) {
    labels.sort();
    labels.dedup();
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap_or_default());
    }
}

fn json_label(v: &Value) -> Result<String, SetError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(SetError::Parse(format!("element must be a string or number, got {other}"))),
    }
}

/// Parse a partition, returning its carrier and the relation.
pub fn parse_partition(text: &str) -> Result<(FinSet, Partition), SetError> {
    let text = text.trim();
    let blocks: Vec<Vec<String>> = if text.starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| SetError::Parse(e.to_string()))?;
        let arr = v
            .as_array()
            .ok_or_else(|| SetError::Parse("partition JSON must be a list of blocks".into()))?;
        arr.iter()
            .map(|b| {
                b.as_array()
                    .ok_or_else(|| SetError::Parse("block must be a list".into()))?
                    .iter()
                    .map(json_label)
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        if text.is_empty() {
            return Err(SetError::Parse("empty partition".into()));
        }
        let wide = text.contains(',');
        text.split('|')
            .map(|b| {
                let b = b.trim();
                if b.is_empty() {
                    return Err(SetError::Parse("empty block".into()));
                }
                Ok(if wide {
                    b.split(',').map(|s| s.trim().to_string()).collect()
                } else {
                    b.chars().map(|c| c.to_string()).collect()
                })
            })
            .collect::<Result<_, _>>()?
    };
    let mut labels: Vec<String> = blocks.iter().flatten().cloned().collect();
    let total = labels.len();
    natural_sort(&mut labels);
    if labels.len() != total {
        return Err(SetError::Parse("an element occurs twice".into()));
    }
    let carrier = FinSet::with_labels(labels)?;
    let idx: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().map(|l| carrier.index_of(l).expect("label collected")).collect())
        .collect();
    let p = Partition::from_blocks(carrier.size(), &idx)?;
    Ok((carrier, p))
}

/// Parse a partition on a given carrier.
pub fn parse_partition_on(text: &str, carrier: &FinSet) -> Result<Partition, SetError> {
    let (c, p) = parse_partition(text)?;
    if c.size() != carrier.size() {
        return Err(SetError::CarrierMismatch {
            left: c.size(),
            right: carrier.size(),
        });
    }
    let tags: Vec<usize> = (0..carrier.size())
        .map(|x| {
            c.index_of(carrier.label(x))
                .map(|y| p.block_of(y))
                .ok_or_else(|| SetError::Parse(format!("unknown element {:?}", carrier.label(x))))
        })
        .collect::<Result<_, _>>()?;
    Ok(Partition::from_tags(&tags))
}

fn map_from_pairs(pairs: Vec<(String, String)>, target: Option<FinSet>) -> Result<SetMap, SetError> {
    let mut src: Vec<String> = pairs.iter().map(|p| p.0.clone()).collect();
    let n = src.len();
    natural_sort(&mut src);
    if src.len() != n {
        return Err(SetError::Parse("a source element is listed twice".into()));
    }
    let target = match target {
        Some(t) => t,
        None => {
            let mut tgt: Vec<String> = pairs.iter().map(|p| p.1.clone()).collect();
            natural_sort(&mut tgt);
            FinSet::with_labels(tgt)?
        }
    };
    let source = FinSet::with_labels(src)?;
    let mut images = vec![0; n];
    for (s, t) in &pairs {
        let x = source.index_of(s).expect("label collected");
        images[x] = target
            .index_of(t)
            .ok_or_else(|| SetError::Parse(format!("unknown target element {t:?}")))?;
    }
    SetMap::new(source, target, images)
}

fn one_based(n: usize) -> FinSet {
    FinSet::with_labels((1..=n).map(|i| i.to_string())).expect("distinct labels")
}

/// Parse a map in compact or JSON form.
pub fn parse_map(text: &str) -> Result<SetMap, SetError> {
    let text = text.trim();
    if text.starts_with('{') || text.starts_with("[[") {
        let v: Value = serde_json::from_str(text).map_err(|e| SetError::Parse(e.to_string()))?;
        if v.is_object() {
            return serde_json::from_value(v).map_err(|e| SetError::Parse(e.to_string()));
        }
        let pairs = v
            .as_array()
            .expect("checked to be a list")
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([s, t]) => Ok((json_label(s)?, json_label(t)?)),
                _ => Err(SetError::Parse("each pair must be [source, target]".into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        return map_from_pairs(pairs, None);
    }
    if let Some(rest) = text.strip_prefix('[') {
        let (n, tail) = rest
            .split_once(']')
            .ok_or_else(|| SetError::Parse("unterminated [n]".into()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| SetError::Parse(format!("bad size {n:?}")))?;
        let tail = tail.trim();
        let tail = tail
            .strip_prefix("->")
            .ok_or_else(|| SetError::Parse("expected -> after [n]".into()))?
            .trim();
        if tail == "pt" {
            return SetMap::new(one_based(n), FinSet::point(), vec![0; n]);
        }
        if tail == format!("[{n}]") {
            return SetMap::new(one_based(n), one_based(n), (0..n).collect());
        }
        return Err(SetError::Parse(format!("unsupported target {tail:?}")));
    }
    let mut pairs = Vec::new();
    for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let (lhs, rhs) = clause
            .split_once("->")
            .ok_or_else(|| SetError::Parse(format!("clause {clause:?} lacks ->")))?;
        let t = rhs.trim();
        if t.is_empty() {
            return Err(SetError::Parse(format!("clause {clause:?} lacks a target")));
        }
        for s in lhs.split(',').map(str::trim) {
            if s.is_empty() {
                return Err(SetError::Parse(format!("clause {clause:?} has an empty source")));
            }
            pairs.push((s.to_string(), t.to_string()));
        }
    }
    if pairs.is_empty() {
        return Err(SetError::Parse("empty map".into()));
    }
    map_from_pairs(pairs, None)
}
