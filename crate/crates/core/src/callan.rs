//! Callan sequences: ordered lists of pairs `(S_i, T_i)` of nonempty, pairwise
//! disjoint subsets of `{1..n}` and `{1..k}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One `(S, T)` pair. As a forest label it is ordered by the smallest row,
/// which is a total order on any family of pairwise disjoint row sets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CallanPair {
    #[serde(rename = "S")]
    pub rows: BTreeSet<usize>,
    #[serde(rename = "T")]
    pub cols: BTreeSet<usize>,
}

impl CallanPair {
    pub fn new<R, C>(rows: R, cols: C) -> Self
    where
        R: IntoIterator<Item = usize>,
        C: IntoIterator<Item = usize>,
    {
        CallanPair {
            rows: rows.into_iter().collect(),
            cols: cols.into_iter().collect(),
        }
    }

    /// Smallest row; panics on an empty row set, which validation rules out.
    pub fn min_row(&self) -> usize {
        *self.rows.first().expect("empty row set")
    }

    pub fn max_row(&self) -> usize {
        *self.rows.last().expect("empty row set")
    }
}

impl Ord for CallanPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .first()
            .cmp(&other.rows.first())
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

impl PartialOrd for CallanPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CallanPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.rows, self.cols)
    }
}

/// A validated `(n, k)`-Callan sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCallan")]
pub struct CallanSequence {
    n: usize,
    k: usize,
    pairs: Vec<CallanPair>,
}

#[derive(Deserialize)]
struct RawCallan {
    n: usize,
    k: usize,
    pairs: Vec<CallanPair>,
}

impl TryFrom<RawCallan> for CallanSequence {
    type Error = Error;

    fn try_from(raw: RawCallan) -> Result<Self> {
        CallanSequence::new(raw.n, raw.k, raw.pairs)
    }
}

impl CallanSequence {
    pub fn new(n: usize, k: usize, pairs: Vec<CallanPair>) -> Result<Self> {
        validate(n, k, &pairs)?;
        Ok(CallanSequence { n, k, pairs })
    }

    pub fn empty(n: usize, k: usize) -> Self {
        CallanSequence {
            n,
            k,
            pairs: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pairs(&self) -> &[CallanPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when the `S`-sets partition `{1..n}` and the `T`-sets partition `{1..k}`.
    pub fn is_full_partition(&self) -> bool {
        let rows: usize = self.pairs.iter().map(|p| p.rows.len()).sum();
        let cols: usize = self.pairs.iter().map(|p| p.cols.len()).sum();
        rows == self.n && cols == self.k
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("Callan sequences always serialize")
    }
}

fn validate(n: usize, k: usize, pairs: &[CallanPair]) -> Result<()> {
    let mut seen_rows = BTreeSet::new();
    let mut seen_cols = BTreeSet::new();
    for (i, pair) in pairs.iter().enumerate() {
        let i = i + 1;
        if pair.rows.is_empty() {
            return Err(Error::InvalidCallan(format!("S_{i} is empty")));
        }
        if pair.cols.is_empty() {
            return Err(Error::InvalidCallan(format!("T_{i} is empty")));
        }
        for &r in &pair.rows {
            if r == 0 || r > n {
                return Err(Error::InvalidCallan(format!("S_{i} contains {r}, outside 1..={n}")));
            }
            if !seen_rows.insert(r) {
                return Err(Error::InvalidCallan(format!("row {r} appears in two S-sets")));
            }
        }
        for &c in &pair.cols {
            if c == 0 || c > k {
                return Err(Error::InvalidCallan(format!("T_{i} contains {c}, outside 1..={k}")));
            }
            if !seen_cols.insert(c) {
                return Err(Error::InvalidCallan(format!("column {c} appears in two T-sets")));
            }
        }
    }
    Ok(())
}

impl fmt::Debug for CallanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Callan({},{}) {:?}", self.n, self.k, self.pairs)
    }
}
