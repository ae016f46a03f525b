//! Permutation pairs `(alpha, beta)` and their point-sequence view.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point `(a, b)`. The derived order compares `a` first, which on a
/// set with distinct first coordinates is the order by first coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub usize, pub usize);

impl Point {
    #[inline]
    pub fn first(self) -> usize {
        self.0
    }

    #[inline]
    pub fn second(self) -> usize {
        self.1
    }

    /// Strictly smaller in both coordinates.
    pub fn below_left_of(self, other: Point) -> bool {
        self.0 < other.0 && self.1 < other.1
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Checks that `seq` is a permutation of `1..=seq.len()`.
pub fn check_permutation(seq: &[usize]) -> Result<()> {
    let n = seq.len();
    let mut seen = vec![false; n + 1];
    for &x in seq {
        if x == 0 || x > n {
            return Err(Error::InvalidPermutation(format!("{x} is outside 1..={n}")));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidPermutation(format!("{x} is repeated")));
        }
    }
    Ok(())
}

/// The point set `{(1, eta_1), ..., (n, eta_n)}`.
pub fn point_set(eta: &[usize]) -> Vec<Point> {
    eta.iter().enumerate().map(|(i, &e)| Point(i + 1, e)).collect()
}

/// A pair of permutations of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermPair {
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl PermPair {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::InvalidPermutation(format!(
                "lengths differ: {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        check_permutation(&alpha)?;
        check_permutation(&beta)?;
        Ok(PermPair { alpha, beta })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// The sequence `(a_1, b_1), ..., (a_n, b_n)`.
    pub fn to_points(&self) -> PointSequence {
        PointSequence(
            self.alpha
                .iter()
                .zip(&self.beta)
                .map(|(&a, &b)| Point(a, b))
                .collect(),
        )
    }

    /// The permutation `eta` with `{(a_i, b_i)} = P_eta`.
    pub fn eta(&self) -> Vec<usize> {
        let mut eta = vec![0; self.len()];
        for (&a, &b) in self.alpha.iter().zip(&self.beta) {
            eta[a - 1] = b;
        }
        eta
    }

    /// 1-based position `i` with `a_i < a_{i+1}` and `b_i < b_{i+1}`, if any.
    pub fn first_common_rise(&self) -> Option<usize> {
        (1..self.len()).find(|&i| self.alpha[i - 1] < self.alpha[i] && self.beta[i - 1] < self.beta[i])
    }

    /// Two whitespace-separated integer lines: alpha, then beta.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut read = |name: &str| -> Result<Vec<usize>> {
            let line = lines.next().unwrap_or("");
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("{name}: cannot parse {tok:?}"))
                    })
                })
                .collect()
        };
        let alpha = read("alpha")?;
        let beta = read("beta")?;
        PermPair::new(alpha, beta)
    }

    pub fn render(&self) -> String {
        let line = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n", line(&self.alpha), line(&self.beta))
    }
}

/// A sequence of points whose first coordinates, and whose second coordinates,
/// each form a permutation of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointSequence(Vec<Point>);

impl PointSequence {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let firsts: Vec<usize> = points.iter().map(|p| p.0).collect();
        let seconds: Vec<usize> = points.iter().map(|p| p.1).collect();
        check_permutation(&firsts)?;
        check_permutation(&seconds)?;
        Ok(PointSequence(points))
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn into_points(self) -> Vec<Point> {
        self.0
    }

    pub fn point_set(&self) -> BTreeSet<Point> {
        self.0.iter().copied().collect()
    }

    pub fn to_pair(&self) -> PermPair {
        PermPair {
            alpha: self.0.iter().map(|p| p.0).collect(),
            beta: self.0.iter().map(|p| p.1).collect(),
        }
    }
}
