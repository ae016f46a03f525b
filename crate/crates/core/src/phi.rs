//! The bijection between Γ-free `n x k` matrices and `(n, k)`-Callan sequences.
//!
//! Forward: build the column graph, join rows along special edges into
//! `(R, C)` pairs, project the regular edges to an increasing forest on the
//! pairs, and list that forest in pre-order.
//!
//! Backward: decode the sequence into the increasing forest and fill the
//! matrix one pair at a time, children before parents. Each column receives
//! its 1's from top to bottom.

use std::collections::VecDeque;

use crate::callan::{CallanPair, CallanSequence};
use crate::error::Result;
use crate::forest::LabeledForest;
use crate::gamma::{build_edge_graph, build_increasing_forest, project_rows};
use crate::matrix::{BinaryMatrix, Pos};
use crate::pi::{pi, pi_inverse};

/// The increasing forest on the `(R, C)` pairs of a Γ-free matrix.
pub fn increasing_forest_of(m: &BinaryMatrix) -> Result<LabeledForest<CallanPair>> {
    let g = build_edge_graph(m)?;
    let (_, pairs) = project_rows(&g, m);
    build_increasing_forest(&g, &pairs)
}

/// Maps a Γ-free matrix to its Callan sequence.
pub fn phi(m: &BinaryMatrix) -> Result<CallanSequence> {
    let forest = increasing_forest_of(m)?;
    let pairs = pi(&forest)?;
    CallanSequence::new(m.rows(), m.cols(), pairs)
}

/// Order in which the reconstruction visits the pairs. Any order placing
/// every child before its parent gives the same matrix.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProcessingOrder {
    #[default]
    PostOrder,
    /// Breadth-first from the roots, reversed.
    ReverseLevelOrder,
}

/// Which reconstruction step wrote a 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlacementStep {
    /// The top-1's of the pair, in row `max R`.
    TopOnes,
    /// Start of a regular edge towards a child pair.
    Regular,
    /// Start of a special edge joining consecutive rows of `R`.
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub pos: Pos,
    pub step: PlacementStep,
}

/// Rebuilds the unique Γ-free matrix with the given Callan sequence.
pub fn phi_inverse(s: &CallanSequence) -> BinaryMatrix {
    phi_inverse_traced(s, ProcessingOrder::PostOrder).0
}

/// [`phi_inverse`] with an explicit visiting order, also returning every 1 in
/// the order it was written.
pub fn phi_inverse_traced(
    s: &CallanSequence,
    order: ProcessingOrder,
) -> (BinaryMatrix, Vec<Placement>) {
    let forest = pi_inverse(s.pairs()).expect("pairs of a Callan sequence are distinct");
    let mut trace = Vec::new();
    let m = fill_from_forest(&forest, s.n(), s.k(), order, &mut trace);
    (m, trace)
}

fn visiting_order(
    forest: &LabeledForest<CallanPair>,
    order: ProcessingOrder,
) -> Vec<&CallanPair> {
    match order {
        ProcessingOrder::PostOrder => {
            let mut out = Vec::with_capacity(forest.len());
            // iterative post-order: children in canonical order, then the vertex
            let mut stack: Vec<(&CallanPair, bool)> =
                forest.roots().iter().rev().map(|r| (r, false)).collect();
            while let Some((v, expanded)) = stack.pop() {
                if expanded {
                    out.push(v);
                } else {
                    stack.push((v, true));
                    stack.extend(forest.children(v).iter().rev().map(|c| (c, false)));
                }
            }
            out
        }
        ProcessingOrder::ReverseLevelOrder => {
            let mut out = Vec::with_capacity(forest.len());
            let mut queue: VecDeque<&CallanPair> = forest.roots().iter().collect();
            while let Some(v) = queue.pop_front() {
                out.push(v);
                queue.extend(forest.children(v));
            }
            out.reverse();
            out
        }
    }
}

fn fill_from_forest(
    forest: &LabeledForest<CallanPair>,
    n: usize,
    k: usize,
    order: ProcessingOrder,
    trace: &mut Vec<Placement>,
) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(n, k);
    let mut place = |m: &mut BinaryMatrix, pos: Pos, step: PlacementStep| {
        m.set(pos, true);
        trace.push(Placement { pos, step });
    };
    for pair in visiting_order(forest, order) {
        let top = pair.max_row();
        for &col in &pair.cols {
            place(&mut m, Pos::new(top, col), PlacementStep::TopOnes);
        }
        for child in forest.children(pair) {
            let low = child.min_row();
            let col = m
                .rightmost_one(low)
                .expect("child rows are filled before their parent");
            let row = *pair
                .rows
                .range(..low)
                .next_back()
                .expect("increasing forest: parent has a row below the child's lowest row");
            place(&mut m, Pos::new(row, col), PlacementStep::Regular);
        }
        let mut rows = pair.rows.iter().rev();
        let mut upper = *rows.next().expect("nonempty row set");
        for &row in rows {
            let col = m.rightmost_one(upper).expect("every row of R holds a 1");
            place(&mut m, Pos::new(row, col), PlacementStep::Special);
            upper = row;
        }
    }
    m
}
