use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Exact rational scalar.
pub type Q = BigRational;

/// Render a rational as `"n"` or `"n/d"`.
pub fn q_to_string(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sparse matrix with exact rational entries, stored as `(row, col, value)`
/// triples sorted by column then row, without zeros or duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Q)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Build from triples; duplicate positions are summed and zeros dropped.
    ///
    /// # Panics
    /// If a triple lies outside the declared shape.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Q)>,
    {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((c, r)).or_insert_with(Q::zero) += v;
        }
        SparseMatrix {
            rows,
            cols,
            entries: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((c, r), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Nonzero entries as `(row, col, value)`, sorted by column then row.
    pub fn entries(&self) -> &[(usize, usize, Q)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.entries
            .binary_search_by(|(r, c, _)| (*c, *r).cmp(&(col, row)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    /// If the inner dimensions disagree.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions disagree");
        let mut by_col: HashMap<usize, Vec<(usize, &Q)>> = HashMap::new();
        for (r, c, v) in &self.entries {
            by_col.entry(*c).or_default().push((*r, v));
        }
        let mut out = Vec::new();
        for (k, c, v) in &rhs.entries {
            if let Some(col) = by_col.get(k) {
                for (r, a) in col {
                    out.push((*r, *c, *a * v));
                }
            }
        }
        SparseMatrix::from_triples(self.rows, rhs.cols, out)
    }

    /// Entrywise difference `self - rhs`.
    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SparseMatrix::from_triples(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .cloned()
                .chain(rhs.entries.iter().map(|(r, c, v)| (*r, *c, -v.clone()))),
        )
    }

    /// Rank over the rationals by fraction-free row reduction on integer rows.
    pub fn rank(&self) -> usize {
        let mut rows: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (r, c, v) in &self.entries {
            rows.entry(*r).or_default().push((*c, v.clone()));
        }
        let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
        for (_, mut row) in rows {
            row.sort_by_key(|(c, _)| *c);
            let mut current = integer_row(&row);
            while let Some((lead, _)) = current.first() {
                match pivots.get(lead) {
                    Some(p) => current = eliminate(&current, p),
                    None => {
                        pivots.insert(*lead, current);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// Scale a rational row to a primitive integer row.
fn integer_row(row: &[(usize, Q)]) -> Vec<(usize, BigInt)> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    primitive(ints)
}

fn primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
    row
}

/// `a_lead * row - row_lead * pivot`, which clears the shared leading column.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    primitive(out)
}

#[derive(Serialize)]
pub(crate) struct MatrixRepr {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&SparseMatrix> for MatrixRepr {
    fn from(m: &SparseMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m
                .entries
                .iter()
                .map(|(r, c, v)| (*r, *c, q_to_string(v)))
                .collect(),
        }
    }
}
