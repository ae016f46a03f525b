//! Exhaustive generators for every object family, used as ground truth.
//!
//! All generators return their objects sorted by the type's `Ord`, which for
//! matrices is the rendered text, and refuse sizes beyond their hard limits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::callan::{CallanPair, CallanSequence};
use crate::error::{Error, Result};
use crate::forest::LabeledForest;
use crate::gamma::{is_complete_naf, is_gamma_free};
use crate::matrix::BinaryMatrix;
use crate::par::Exec;
use crate::perm::{point_set, PermPair};
use crate::psi::{is_leftmost_valid, is_properly_labeled, leaf_permutation, PointForest};

pub const PRUNED_CELL_LIMIT: usize = 25;
pub const NAIVE_CELL_LIMIT: usize = 16;
pub const CALLAN_LIMIT: usize = 5;
pub const FOREST_LIMIT: usize = 7;
pub const PERMUTATION_LIMIT: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GammaMode {
    /// Filter all `2^(nk)` matrices.
    Naive,
    /// Backtrack cell by cell, never extending a partial matrix holding a Γ.
    #[default]
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointForestKind {
    ProperlyLabeled,
    LeftmostValid,
}

fn limit(family: &'static str, ok: bool, limit: impl fmt::Display, requested: impl fmt::Display) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SizeLimit {
            family,
            limit: limit.to_string(),
            requested: requested.to_string(),
        })
    }
}

fn check_gamma_size(n: usize, k: usize, mode: GammaMode) -> Result<()> {
    let cap = match mode {
        GammaMode::Naive => NAIVE_CELL_LIMIT,
        GammaMode::Pruned => PRUNED_CELL_LIMIT,
    };
    limit("Γ-free matrix", n * k <= cap, format!("n*k <= {cap}"), format!("{n}x{k}"))
}

/// Backtracking over cells in visual reading order. `blocked[j]` marks visual
/// column `j` as holding, in a finished row above, a 1 that is not the
/// rightmost 1 of its row; a 1 placed below it would complete a Γ.
struct Backtrack<'a, F> {
    n: usize,
    k: usize,
    raster: Vec<bool>,
    blocked: Vec<bool>,
    visit: &'a mut F,
}

impl<F: FnMut(&[bool])> Backtrack<'_, F> {
    fn run(&mut self, cell: usize) {
        if cell == self.n * self.k {
            (self.visit)(&self.raster);
            return;
        }
        let j = cell % self.k;
        self.raster[cell] = false;
        self.after(cell);
        if !self.blocked[j] {
            self.raster[cell] = true;
            self.after(cell);
            self.raster[cell] = false;
        }
    }

    fn after(&mut self, cell: usize) {
        if cell % self.k != self.k - 1 {
            self.run(cell + 1);
            return;
        }
        let start = cell + 1 - self.k;
        let ones: Vec<usize> = (0..self.k).filter(|&j| self.raster[start + j]).collect();
        let newly: Vec<usize> = ones
            .iter()
            .copied()
            .rev()
            .skip(1)
            .filter(|&j| !self.blocked[j])
            .collect();
        for &j in &newly {
            self.blocked[j] = true;
        }
        self.run(cell + 1);
        for &j in &newly {
            self.blocked[j] = false;
        }
    }
}

/// Runs the pruned search from a fixed first row (any first row is Γ-free).
fn pruned_from_first_row<F: FnMut(&[bool])>(n: usize, k: usize, first: &[bool], visit: &mut F) {
    let mut search = Backtrack {
        n,
        k,
        raster: vec![false; n * k],
        blocked: vec![false; k],
        visit,
    };
    search.raster[..k].copy_from_slice(first);
    search.after(k - 1);
}

fn first_rows(k: usize) -> Vec<Vec<bool>> {
    (0..1u64 << k)
        .map(|mask| (0..k).map(|j| mask >> (k - 1 - j) & 1 == 1).collect())
        .collect()
}

fn from_raster(n: usize, k: usize, raster: &[bool]) -> BinaryMatrix {
    let rows: Vec<Vec<bool>> = raster.chunks(k.max(1)).map(<[bool]>::to_vec).collect();
    if n == 0 || k == 0 {
        return BinaryMatrix::zeros(n, k);
    }
    BinaryMatrix::from_visual_rows(&rows).expect("rectangular raster")
}

/// Every Γ-free `n x k` matrix, sorted.
pub fn enumerate_gamma_free(n: usize, k: usize, mode: GammaMode) -> Result<Vec<BinaryMatrix>> {
    enumerate_gamma_free_with(n, k, mode, Exec::default())
}

pub fn enumerate_gamma_free_with(
    n: usize,
    k: usize,
    mode: GammaMode,
    exec: Exec,
) -> Result<Vec<BinaryMatrix>> {
    check_gamma_size(n, k, mode)?;
    if n == 0 || k == 0 {
        return Ok(vec![BinaryMatrix::zeros(n, k)]);
    }
    match mode {
        GammaMode::Naive => {
            let cells = n * k;
            let masks: Vec<u64> = (0..1u64 << cells).collect();
            let found = exec.map(&masks, |&mask| {
                let raster: Vec<bool> = (0..cells).map(|c| mask >> (cells - 1 - c) & 1 == 1).collect();
                let m = from_raster(n, k, &raster);
                is_gamma_free(&m).then_some(m)
            });
            Ok(found.into_iter().flatten().collect())
        }
        GammaMode::Pruned => {
            let parts = exec.map(&first_rows(k), |first| {
                let mut out = Vec::new();
                pruned_from_first_row(n, k, first, &mut |r: &[bool]| out.push(from_raster(n, k, r)));
                out
            });
            Ok(parts.into_iter().flatten().collect())
        }
    }
}

/// Number of Γ-free `n x k` matrices by pruned search, without materializing them.
pub fn count_gamma_free(n: usize, k: usize, exec: Exec) -> Result<u64> {
    check_gamma_size(n, k, GammaMode::Pruned)?;
    if n == 0 || k == 0 {
        return Ok(1);
    }
    let counts = exec.map(&first_rows(k), |first| {
        let mut count = 0u64;
        pruned_from_first_row(n, k, first, &mut |_: &[bool]| count += 1);
        count
    });
    Ok(counts.into_iter().sum())
}

/// Set partitions of `{1..=n}` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<BTreeSet<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<BTreeSet<usize>>, out: &mut Vec<Vec<BTreeSet<usize>>>) {
        if i > n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].insert(i);
            go(i + 1, n, blocks, out);
            blocks[b].remove(&i);
        }
        blocks.push(BTreeSet::from([i]));
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

/// Sequences of pairwise disjoint nonempty subsets of `{1..=n}`, grouped by
/// length: partition `{1..=n+1}`, drop the block holding the dummy `n+1`, and
/// order the remaining blocks in every way.
fn disjoint_set_sequences(n: usize) -> BTreeMap<usize, Vec<Vec<BTreeSet<usize>>>> {
    let dummy = n + 1;
    let mut by_len: BTreeMap<usize, Vec<Vec<BTreeSet<usize>>>> = BTreeMap::new();
    for partition in set_partitions(dummy) {
        let blocks: Vec<BTreeSet<usize>> = partition.into_iter().filter(|b| !b.contains(&dummy)).collect();
        let m = blocks.len();
        let seqs = by_len.entry(m).or_default();
        for order in blocks.iter().permutations(m) {
            seqs.push(order.into_iter().cloned().collect());
        }
    }
    by_len
}

/// Every `(n, k)`-Callan sequence, sorted.
pub fn enumerate_callan(n: usize, k: usize) -> Result<Vec<CallanSequence>> {
    limit(
        "Callan sequence",
        n <= CALLAN_LIMIT && k <= CALLAN_LIMIT,
        format!("n, k <= {CALLAN_LIMIT}"),
        format!("({n},{k})"),
    )?;
    let rows = disjoint_set_sequences(n);
    let cols = disjoint_set_sequences(k);
    let mut out = Vec::new();
    for (m, row_seqs) in &rows {
        let Some(col_seqs) = cols.get(m) else { continue };
        for s in row_seqs {
            for t in col_seqs {
                let pairs = s
                    .iter()
                    .zip(t)
                    .map(|(r, c)| CallanPair {
                        rows: r.clone(),
                        cols: c.clone(),
                    })
                    .collect();
                out.push(CallanSequence::new(n, k, pairs)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every increasing forest on the given labels, sorted. Each vertex picks a
/// smaller vertex as parent or stays a root.
pub fn enumerate_increasing_forests<L>(labels: &[L]) -> Result<Vec<LabeledForest<L>>>
where
    L: Ord + Clone + fmt::Debug,
{
    let labels: Vec<L> = labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    limit(
        "increasing forest",
        labels.len() <= FOREST_LIMIT,
        format!("at most {FOREST_LIMIT} labels"),
        labels.len(),
    )?;
    let choices = labels.iter().enumerate().map(|(i, _)| 0..=i).multi_cartesian_product();
    let mut out: Vec<LabeledForest<L>> = if labels.is_empty() {
        vec![LabeledForest::empty()]
    } else {
        choices
            .map(|choice| {
                let entries = labels.iter().zip(&choice).map(|(v, &c)| {
                    // 0 means root, c > 0 means the (c-1)-th smallest label
                    (v.clone(), (c > 0).then(|| labels[c - 1].clone()))
                });
                LabeledForest::from_parents(entries).expect("parents precede children")
            })
            .collect()
    };
    out.sort();
    Ok(out)
}

/// Properly labeled or leftmost-valid forests on `P_eta`, sorted.
pub fn enumerate_point_forests(eta: &[usize], kind: PointForestKind) -> Result<Vec<PointForest>> {
    crate::perm::check_permutation(eta)?;
    limit(
        "point forest",
        eta.len() <= PERMUTATION_LIMIT,
        format!("n <= {PERMUTATION_LIMIT}"),
        eta.len(),
    )?;
    let keep = match kind {
        PointForestKind::ProperlyLabeled => is_properly_labeled,
        PointForestKind::LeftmostValid => is_leftmost_valid,
    };
    Ok(enumerate_increasing_forests(&point_set(eta))?
        .into_iter()
        .filter(keep)
        .collect())
}

/// Matrices of complete non-ambiguous forests with `n` leaves, sorted.
pub fn enumerate_complete_naf(n: usize) -> Result<Vec<BinaryMatrix>> {
    limit(
        "complete non-ambiguous forest",
        n <= PERMUTATION_LIMIT,
        format!("n <= {PERMUTATION_LIMIT}"),
        n,
    )?;
    Ok(enumerate_gamma_free(n, n, GammaMode::Pruned)?
        .into_iter()
        .filter(is_complete_naf)
        .collect())
}

/// [`enumerate_complete_naf`] grouped by the permutation `eta` of the leaf set.
pub fn complete_naf_by_eta(n: usize) -> Result<BTreeMap<Vec<usize>, Vec<BinaryMatrix>>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<BinaryMatrix>> = BTreeMap::new();
    for m in enumerate_complete_naf(n)? {
        groups.entry(leaf_permutation(&m)).or_default().push(m);
    }
    Ok(groups)
}

/// Permutations of `{1..=n}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (1..=n).permutations(n).collect()
}

/// Pairs in `S_n x S_n` with no common rise, sorted.
pub fn enumerate_no_common_rise(n: usize) -> Result<Vec<PermPair>> {
    limit(
        "permutation pair",
        n <= PERMUTATION_LIMIT,
        format!("n <= {PERMUTATION_LIMIT}"),
        n,
    )?;
    let perms = permutations(n);
    let mut out = Vec::new();
    for alpha in &perms {
        for beta in &perms {
            let p = PermPair::new(alpha.clone(), beta.clone())?;
            if p.first_common_rise().is_none() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// [`enumerate_no_common_rise`] grouped by the `eta` of the point set.
pub fn no_common_rise_by_eta(n: usize) -> Result<BTreeMap<Vec<usize>, Vec<PermPair>>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<PermPair>> = BTreeMap::new();
    for p in enumerate_no_common_rise(n)? {
        groups.entry(p.eta()).or_default().push(p);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_free_small_counts() {
        assert_eq!(enumerate_gamma_free(2, 2, GammaMode::Pruned).unwrap().len(), 14);
        assert_eq!(enumerate_gamma_free(2, 2, GammaMode::Naive).unwrap().len(), 14);
        assert_eq!(enumerate_gamma_free(3, 3, GammaMode::Pruned).unwrap().len(), 230);
        for k in 0..6 {
            assert_eq!(enumerate_gamma_free(1, k, GammaMode::Pruned).unwrap().len(), 1 << k);
        }
        assert_eq!(enumerate_gamma_free(0, 3, GammaMode::Naive).unwrap().len(), 1);
    }

    #[test]
    fn modes_agree_and_are_sorted() {
        for n in 0..=4 {
            for k in 0..=4 {
                let naive = enumerate_gamma_free(n, k, GammaMode::Naive).unwrap();
                let pruned = enumerate_gamma_free(n, k, GammaMode::Pruned).unwrap();
                assert_eq!(naive, pruned, "{n}x{k}");
                assert!(pruned.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(count_gamma_free(n, k, Exec::Sequential).unwrap(), pruned.len() as u64);
            }
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            enumerate_gamma_free(5, 4, GammaMode::Naive),
            Err(Error::SizeLimit { .. })
        ));
        assert!(enumerate_gamma_free(6, 5, GammaMode::Pruned).is_err());
        assert!(enumerate_callan(6, 1).is_err());
        assert!(enumerate_increasing_forests(&(0..8).collect::<Vec<_>>()).is_err());
        assert!(enumerate_no_common_rise(6).is_err());
        assert!(enumerate_complete_naf(6).is_err());
    }

    #[test]
    fn callan_examples() {
        assert_eq!(enumerate_callan(0, 0).unwrap(), vec![CallanSequence::empty(0, 0)]);
        assert_eq!(enumerate_callan(2, 2).unwrap().len(), 14);
        let one = enumerate_callan(1, 1).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one[0].is_empty());
        assert_eq!(one[1].pairs(), &[CallanPair::new([1], [1])]);
    }

    #[test]
    fn increasing_forest_examples() {
        assert_eq!(enumerate_increasing_forests(&[1]).unwrap().len(), 1);
        let two = enumerate_increasing_forests(&[1, 2]).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&LabeledForest::from_edges([1, 2], []).unwrap()));
        assert!(two.contains(&LabeledForest::from_edges([1, 2], [(1, 2)]).unwrap()));
        assert_eq!(enumerate_increasing_forests(&[1, 2, 3, 4, 5]).unwrap().len(), 120);
    }

    #[test]
    fn point_forest_examples() {
        for kind in [PointForestKind::ProperlyLabeled, PointForestKind::LeftmostValid] {
            assert_eq!(enumerate_point_forests(&[1], kind).unwrap().len(), 1);
            assert_eq!(enumerate_point_forests(&[3, 1, 2], kind).unwrap().len(), 4);
        }
    }

    #[test]
    fn complete_naf_and_pairs() {
        assert_eq!(enumerate_complete_naf(1).unwrap(), vec![BinaryMatrix::parse("1").unwrap()]);
        assert_eq!(enumerate_complete_naf(2).unwrap().len(), 3);
        assert_eq!(enumerate_no_common_rise(1).unwrap().len(), 1);
        assert_eq!(enumerate_no_common_rise(2).unwrap().len(), 3);
    }
}
