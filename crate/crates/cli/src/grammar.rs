//! Parsers for the command-line argument grammar.
//!
//! Sets, maps and partitions use the grammar of [`setcore::text`]. Towers and
//! squares add the following forms, and JSON is accepted for both:
//!
//! ```text
//! tower      := source ":" projection ":" flag
//! projection := digit+ | int ("," int)*     images of the top set 0..n-1
//! flag       := partition (">" partition)*  from the discrete relation down
//!                                           to ker P, on labels 0..n-1
//! square     := images ";" images           i: S ↪ R, then p: R ↠ T
//! images     := digit+ | int ("," int)*
//! ```
//!
//! A tower in JSON is `{"source": s, "projection": [...], "flag": [[[0], [1]], ...]}`
//! with partitions as block lists; a square is `{"i": [...], "p": [...]}`.

use bodies::{Square, Tower};
use serde::Deserialize;
use setcore::text::parse_partition_on;
use setcore::{FinSet, Partition, SetMap};

use crate::CliError;

/// Parses a list of indices written as digits (`001`) or comma separated.
pub fn parse_images(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parsed: Result<Vec<usize>, _> = if text.contains(',') {
        text.split(',').map(|x| x.trim().parse::<usize>()).collect()
    } else {
        text.chars().map(|c| c.to_string().parse::<usize>()).collect()
    };
    parsed.map_err(|e| CliError::parse("index list", format!("{text:?}: {e}")))
}

fn target_size(images: &[usize]) -> usize {
    images.iter().max().map_or(0, |m| m + 1)
}

#[derive(Deserialize)]
struct TowerJson {
    source: usize,
    projection: Vec<usize>,
    flag: Vec<Partition>,
}

/// Parses a tower in the compact grammar or as JSON.
pub fn parse_tower(text: &str) -> Result<Tower, CliError> {
    let text = text.trim();
    let (source, projection, flag) = if text.starts_with('{') {
        let t: TowerJson = serde_json::from_str(text).map_err(|e| CliError::parse("tower", e))?;
        (t.source, t.projection, t.flag)
    } else {
        let parts: Vec<&str> = text.split(':').collect();
        let [source, projection, flag] = parts.as_slice() else {
            return Err(CliError::parse("tower", format!("{text:?} is not source:projection:flag")));
        };
        let source = source.trim().parse::<usize>().map_err(|e| CliError::parse("tower source", e))?;
        let projection = parse_images(projection)?;
        let carrier = FinSet::new(projection.len());
        let flag = flag
            .split('>')
            .map(|p| parse_partition_on(p.trim(), &carrier))
            .collect::<Result<Vec<_>, _>>()?;
        (source, projection, flag)
    };
    let target = target_size(&projection);
    Ok(Tower::new(source, target, projection, flag)?)
}

#[derive(Deserialize)]
struct SquareJson {
    i: Vec<usize>,
    p: Vec<usize>,
}

/// Parses a square `S ↪ R ↠ T` given by `i` and `p`; the rest of the square
/// is the image factorization of `p∘i`.
pub fn parse_square(text: &str) -> Result<Square, CliError> {
    let text = text.trim();
    let (i, p) = if text.starts_with('{') {
        let s: SquareJson = serde_json::from_str(text).map_err(|e| CliError::parse("square", e))?;
        (s.i, s.p)
    } else {
        let (i, p) = text
            .split_once(';')
            .ok_or_else(|| CliError::parse("square", format!("{text:?} is not i;p")))?;
        (parse_images(i)?, parse_images(p)?)
    };
    let r = p.len();
    let i = SetMap::from_images(r, i)?;
    let p = SetMap::from_images(target_size(&p), p)?;
    Ok(Square::from_top(i, p)?)
}

/// Parses two partitions on the same carrier; the carrier is read from `top`.
pub fn parse_interval(top: &str, bottom: &str) -> Result<(FinSet, Partition, Partition), CliError> {
    let (carrier, f) = setcore::text::parse_partition(top)?;
    let e = parse_partition_on(bottom, &carrier)?;
    if !f.geq(&e) {
        return Err(CliError::Usage(format!("{top} is not finer than {bottom}")));
    }
    Ok((carrier, f, e))
}

/// The set `{1, …, n}`.
pub fn one_based(n: usize) -> FinSet {
    FinSet::with_labels((1..=n).map(|i| i.to_string())).expect("labels are distinct")
}
