//! The pre-order coding of increasing forests as permutations of their vertex set.
//!
//! A tree is listed root first, followed by the listings of its child
//! subtrees taken in decreasing order; a forest is the concatenation of its
//! trees, again in decreasing order of their roots. On increasing forests
//! this coding is a bijection onto the permutations of the vertex set.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::forest::LabeledForest;

/// Pre-order listing of a single rooted tree.
pub fn pre_order<L: Ord + Clone + fmt::Debug>(tree: &LabeledForest<L>) -> Result<Vec<L>> {
    match tree.roots() {
        [root] => Ok(tree.subtree_labels(root)),
        roots => Err(Error::NotATree(roots.len())),
    }
}

/// Encodes an increasing forest as a sequence of its vertices.
pub fn pi<L: Ord + Clone + fmt::Debug>(forest: &LabeledForest<L>) -> Result<Vec<L>> {
    if let Some((p, c)) = forest.first_decreasing_edge() {
        return Err(Error::NotIncreasing(format!("{p:?} is the parent of {c:?}")));
    }
    Ok(forest
        .roots()
        .iter()
        .flat_map(|r| forest.subtree_labels(r))
        .collect())
}

/// Decodes a sequence of distinct labels into the unique increasing forest
/// whose pre-order listing it is.
///
/// Single scan: the stack holds the path from the current root to the most
/// recent vertex, and each new vertex hangs below the deepest stack entry
/// smaller than it (or becomes a new root).
pub fn pi_inverse<L: Ord + Clone + fmt::Debug>(seq: &[L]) -> Result<LabeledForest<L>> {
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(seq.len());
    let mut stack: Vec<&L> = Vec::new();
    for x in seq {
        if !seen.insert(x) {
            return Err(Error::RepeatedLabel(format!("{x:?}")));
        }
        while stack.last().is_some_and(|&top| top > x) {
            stack.pop();
        }
        entries.push((x.clone(), stack.last().map(|&p| p.clone())));
        stack.push(x);
    }
    LabeledForest::from_parents(entries)
}
