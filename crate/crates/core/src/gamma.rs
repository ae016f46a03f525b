//! Γ-pattern recognition and the auxiliary graphs of the matrix-to-sequence map.
//!
//! A Γ is a pair of 1's in one row together with a third 1 somewhere below
//! the left one of the pair. With columns numbered from the right, "left"
//! means the larger column index, and the leading-1 of a row (its leftmost
//! 1) is the one with the *largest* column index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::callan::CallanPair;
use crate::error::{Error, Result};
use crate::forest::LabeledForest;
use crate::matrix::{BinaryMatrix, Pos};

/// Three 1's forming a Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GammaWitness {
    pub upper_left: Pos,
    pub upper_right: Pos,
    pub lower_left: Pos,
}

impl fmt::Display for GammaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} over {}",
            self.upper_left, self.upper_right, self.lower_left
        )
    }
}

/// The Γ minimizing `(row, left column, right column, lower row)`, or `None`
/// when the matrix is Γ-free.
pub fn find_gamma_witness(m: &BinaryMatrix) -> Option<GammaWitness> {
    for row in 1..=m.rows() {
        let cols: Vec<usize> = m.row_ones(row).collect();
        for (i, &left) in cols.iter().enumerate() {
            // any smaller column index lies to the right
            let Some(&right) = cols[..i].first() else {
                continue;
            };
            if let Some(lower) = m.col_ones(left).find(|&r| r < row) {
                return Some(GammaWitness {
                    upper_left: Pos::new(row, left),
                    upper_right: Pos::new(row, right),
                    lower_left: Pos::new(lower, left),
                });
            }
        }
    }
    None
}

pub fn is_gamma_free(m: &BinaryMatrix) -> bool {
    // every 1 with another 1 below it must be the rightmost 1 of its row
    (1..=m.rows()).all(|row| {
        m.row_ones(row)
            .skip(1)
            .all(|col| (1..row).all(|r| !m.get(r, col)))
    })
}

pub(crate) fn ensure_gamma_free(m: &BinaryMatrix) -> Result<()> {
    match find_gamma_witness(m) {
        Some(w) => Err(Error::NotGammaFree(w)),
        None => Ok(()),
    }
}

/// Highest 1 of every non-empty column.
pub fn top_ones(m: &BinaryMatrix) -> BTreeSet<Pos> {
    (1..=m.cols())
        .filter_map(|col| m.highest_one(col).map(|row| Pos::new(row, col)))
        .collect()
}

/// Leftmost 1 of every non-empty row (largest column index).
pub fn leading_ones(m: &BinaryMatrix) -> BTreeSet<Pos> {
    (1..=m.rows())
        .filter_map(|row| m.leftmost_one(row).map(|col| Pos::new(row, col)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowClass {
    Empty,
    /// Holds at least one top-1.
    Top,
    /// Holds 1's, none of them a top-1.
    Special,
}

/// Class of every row; index 0 is row 1.
pub fn classify_rows(m: &BinaryMatrix) -> Vec<RowClass> {
    let mut classes: Vec<RowClass> = (1..=m.rows())
        .map(|r| {
            if m.is_row_empty(r) {
                RowClass::Empty
            } else {
                RowClass::Special
            }
        })
        .collect();
    for p in top_ones(m) {
        classes[p.row - 1] = RowClass::Top;
    }
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// The longest edge leaving a special row.
    Special,
    Regular,
}

/// Edge from a non-top 1 to the next 1 above it in its column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Pos,
    pub to: Pos,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn length(&self) -> usize {
        self.to.row - self.from.row
    }
}

/// The column graph on the 1's of a Γ-free matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    pub vertices: Vec<Pos>,
    /// Sorted by start position.
    pub edges: Vec<Edge>,
}

impl EdgeGraph {
    pub fn special_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Special)
    }

    pub fn regular_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Regular)
    }

    pub fn indegree(&self, v: Pos) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    pub fn outdegree(&self, v: Pos) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }
}

impl fmt::Display for EdgeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            let kind = match e.kind {
                EdgeKind::Special => "special",
                EdgeKind::Regular => "regular",
            };
            writeln!(f, "{} -> {} [{kind}]", e.from, e.to)?;
        }
        Ok(())
    }
}

/// Builds the column graph. Rejects matrices containing a Γ.
pub fn build_edge_graph(m: &BinaryMatrix) -> Result<EdgeGraph> {
    ensure_gamma_free(m)?;
    let classes = classify_rows(m);
    let mut edges = Vec::new();
    for from in m.ones() {
        if let Some(above) = (from.row + 1..=m.rows()).find(|&r| m.get(r, from.col)) {
            edges.push(Edge {
                from,
                to: Pos::new(above, from.col),
                kind: EdgeKind::Regular,
            });
        }
    }
    // longest edge of each special row; lengths within a row are distinct
    let mut longest: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        if classes[e.from.row - 1] != RowClass::Special {
            continue;
        }
        let slot = longest.entry(e.from.row).or_insert(i);
        if edges[*slot].length() < e.length() {
            *slot = i;
        }
    }
    for i in longest.into_values() {
        edges[i].kind = EdgeKind::Special;
    }
    Ok(EdgeGraph {
        vertices: m.ones().collect(),
        edges,
    })
}

/// Rows joined by the horizontal projections of the special edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPathGraph {
    /// Non-empty rows, increasing.
    pub vertices: Vec<usize>,
    /// `(from, to)` row pairs, increasing.
    pub edges: Vec<(usize, usize)>,
    /// Each path listed bottom to top; paths ordered by their lowest row.
    pub paths: Vec<Vec<usize>>,
}

/// Projects the special edges to rows, returning the path graph and one
/// `(R, C)` pair per path, ordered by smallest row.
///
/// `C` is the set of top-1 columns in the row `max R`, the path's end.
pub fn project_rows(g: &EdgeGraph, m: &BinaryMatrix) -> (RowPathGraph, Vec<CallanPair>) {
    let vertices: Vec<usize> = (1..=m.rows()).filter(|&r| !m.is_row_empty(r)).collect();
    let mut edges: Vec<(usize, usize)> = g.special_edges().map(|e| (e.from.row, e.to.row)).collect();
    edges.sort_unstable();
    let next: BTreeMap<usize, usize> = edges.iter().copied().collect();
    let has_pred: BTreeSet<usize> = edges.iter().map(|&(_, t)| t).collect();

    let mut top_cols: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for p in top_ones(m) {
        top_cols.entry(p.row).or_default().insert(p.col);
    }

    let mut paths = Vec::new();
    let mut pairs = Vec::new();
    for &start in vertices.iter().filter(|r| !has_pred.contains(r)) {
        let mut path = vec![start];
        let mut cur = start;
        while let Some(&t) = next.get(&cur) {
            path.push(t);
            cur = t;
        }
        let cols = top_cols.get(&cur).cloned().unwrap_or_default();
        pairs.push(CallanPair {
            rows: path.iter().copied().collect(),
            cols,
        });
        paths.push(path);
    }
    (
        RowPathGraph {
            vertices,
            edges,
            paths,
        },
        pairs,
    )
}

/// Projects the regular edges onto the `(R, C)` pairs, giving an increasing
/// forest under the smallest-row order.
pub fn build_increasing_forest(
    g: &EdgeGraph,
    pairs: &[CallanPair],
) -> Result<LabeledForest<CallanPair>> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        for &r in &p.rows {
            owner.insert(r, i);
        }
    }
    let block_of = |row: usize| -> Result<&CallanPair> {
        owner
            .get(&row)
            .map(|&i| &pairs[i])
            .ok_or_else(|| Error::InvalidForest(format!("row {row} belongs to no pair")))
    };
    let mut links = Vec::new();
    for e in g.regular_edges() {
        links.push((block_of(e.from.row)?.clone(), block_of(e.to.row)?.clone()));
    }
    LabeledForest::from_edges(pairs.iter().cloned(), links)
}

/// Whether `m` is the matrix of a complete non-ambiguous forest: square,
/// Γ-free, no empty line, and every top-1 is a leading-1.
pub fn is_complete_naf(m: &BinaryMatrix) -> bool {
    m.rows() == m.cols()
        && !m.has_empty_line()
        && is_gamma_free(m)
        && top_ones(m) == leading_ones(m)
}

/// Number of tree components of the non-ambiguous forest drawn by `m`: the
/// 1's with no 1 below them in their column and no 1 to their right.
pub fn naf_root_count(m: &BinaryMatrix) -> usize {
    m.ones()
        .filter(|p| m.col_ones(p.col).next() == Some(p.row) && m.rightmost_one(p.row) == Some(p.col))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> BinaryMatrix {
        BinaryMatrix::parse("0110\n1100\n0101").unwrap()
    }

    fn b() -> BinaryMatrix {
        BinaryMatrix::parse("0100\n0110\n1011").unwrap()
    }

    #[test]
    fn witness_in_matrix_a() {
        let w = find_gamma_witness(&a()).unwrap();
        assert_eq!(w.upper_left, Pos::new(3, 3));
        assert_eq!(w.upper_right, Pos::new(3, 2));
        assert_eq!(w.lower_left, Pos::new(1, 3));
        assert!(!is_gamma_free(&a()));
    }

    #[test]
    fn matrix_b_and_zero_matrix_are_gamma_free() {
        assert_eq!(find_gamma_witness(&b()), None);
        assert!(is_gamma_free(&b()));
        assert_eq!(find_gamma_witness(&BinaryMatrix::zeros(3, 3)), None);
    }

    #[test]
    fn top_ones_examples() {
        let t = top_ones(&b());
        assert_eq!(t.len(), 4);
        assert_eq!((1..=4).filter(|c| t.iter().any(|p| p.col == *c)).count(), 4);
        assert!(top_ones(&BinaryMatrix::zeros(2, 2)).is_empty());
        let col = BinaryMatrix::from_ones(3, 1, [Pos::new(1, 1), Pos::new(3, 1)]).unwrap();
        assert_eq!(top_ones(&col), BTreeSet::from([Pos::new(3, 1)]));
    }

    #[test]
    fn leading_ones_examples() {
        let id = BinaryMatrix::from_ones(2, 2, [Pos::new(1, 1), Pos::new(2, 2)]).unwrap();
        assert_eq!(leading_ones(&id), BTreeSet::from([Pos::new(1, 1), Pos::new(2, 2)]));
        let row = BinaryMatrix::from_ones(1, 3, [Pos::new(1, 1), Pos::new(1, 3)]).unwrap();
        assert_eq!(leading_ones(&row), BTreeSet::from([Pos::new(1, 3)]));
        assert!(leading_ones(&BinaryMatrix::zeros(2, 3)).is_empty());
    }

    #[test]
    fn edge_graph_two_by_two_column() {
        let m = BinaryMatrix::from_ones(2, 2, [Pos::new(1, 1), Pos::new(2, 1)]).unwrap();
        let g = build_edge_graph(&m).unwrap();
        assert_eq!(
            g.edges,
            vec![Edge {
                from: Pos::new(1, 1),
                to: Pos::new(2, 1),
                kind: EdgeKind::Special
            }]
        );
        assert_eq!(g.to_string(), "(1,1) -> (2,1) [special]\n");
        let (h, pairs) = project_rows(&g, &m);
        assert_eq!(h.paths, vec![vec![1, 2]]);
        assert_eq!(pairs, vec![CallanPair::new([1, 2], [1])]);
    }

    #[test]
    fn edge_graph_isolated_ones() {
        let m = BinaryMatrix::from_ones(3, 3, [Pos::new(1, 2), Pos::new(2, 3), Pos::new(3, 1)]).unwrap();
        let g = build_edge_graph(&m).unwrap();
        assert!(g.edges.is_empty());
        let (h, pairs) = project_rows(&g, &m);
        assert_eq!(h.paths.len(), 3);
        assert_eq!(pairs.len(), 3);
    }

    #[test]
    fn edge_graph_matrix_b() {
        let g = build_edge_graph(&b()).unwrap();
        assert_eq!(g.edges.len(), b().count_ones() - top_ones(&b()).len());
        assert_eq!(g.edges.len(), 2);
    }

    #[test]
    fn edge_graph_rejects_gamma() {
        assert!(matches!(build_edge_graph(&a()), Err(Error::NotGammaFree(_))));
    }

    #[test]
    fn forest_with_one_special_edge() {
        // row 2 holds both top-1's, the 1 at (1,1) points up along a special edge
        let m = BinaryMatrix::from_ones(2, 2, [Pos::new(2, 2), Pos::new(2, 1), Pos::new(1, 1)]).unwrap();
        let g = build_edge_graph(&m).unwrap();
        let (_, pairs) = project_rows(&g, &m);
        assert_eq!(pairs, vec![CallanPair::new([1, 2], [1, 2])]);
        let f = build_increasing_forest(&g, &pairs).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.edge_count(), 0);
    }

    #[test]
    fn forest_with_one_regular_edge() {
        // visual "01" over "11": row 2 is top (column 1), row 1 is top (column 2),
        // the 1 at (1,1) points to (2,1) along a regular edge
        let m = BinaryMatrix::parse("01\n11").unwrap();
        let g = build_edge_graph(&m).unwrap();
        assert_eq!(g.regular_edges().count(), 1);
        let (_, pairs) = project_rows(&g, &m);
        let f = build_increasing_forest(&g, &pairs).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.edge_count(), 1);
        assert!(f.is_increasing());
    }

    #[test]
    fn complete_naf_examples() {
        assert!(is_complete_naf(&BinaryMatrix::parse("1").unwrap()));
        assert!(!is_complete_naf(&BinaryMatrix::parse("11\n11").unwrap()));
        assert!(!is_complete_naf(&b()));
        assert!(is_complete_naf(&BinaryMatrix::parse("01\n11").unwrap()));
        assert_eq!(naf_root_count(&BinaryMatrix::parse("01\n11").unwrap()), 1);
        assert_eq!(naf_root_count(&BinaryMatrix::parse("10\n01").unwrap()), 2);
    }
}
