//! Complete non-ambiguous forests versus permutation pairs with no common rise.
//!
//! Both sides are encoded as forests on a point set `P_eta`, ordered by first
//! coordinate:
//!
//! * a *properly labeled* forest has `a < c` for every parent `(a, b)` of
//!   `(c, d)`, and some vertex below `(c, d)` (inclusive) with second
//!   coordinate smaller than `b`. These are exactly the forests read off
//!   complete non-ambiguous forest matrices.
//! * a *leftmost-valid* forest is increasing in the first coordinate and the
//!   leftmost (largest) child of every vertex has smaller second coordinate
//!   than its parent. Under the pre-order coding these are exactly the point
//!   sequences with no common rise.
//!
//! [`f_convert`] turns a leftmost-valid tree into a properly labeled tree on
//! the same vertices with the same root by repeatedly merging the trees that
//! precede the leftmost "bad" child subtree under that subtree's root.
//! [`f_inverse`] undoes it.

use std::collections::BTreeSet;

use crate::callan::{CallanPair, CallanSequence};
use crate::error::{Error, Result};
use crate::forest::{LabeledForest, Node};
use crate::gamma::{is_complete_naf, top_ones};
use crate::matrix::BinaryMatrix;
use crate::perm::{PermPair, Point, PointSequence};
use crate::phi::{increasing_forest_of, phi_inverse};
use crate::pi::{pi, pi_inverse};

/// A forest whose vertices are points.
pub type PointForest = LabeledForest<Point>;

/// Whether `p` has a position where both permutations rise.
pub fn has_common_rise(p: &PermPair) -> bool {
    p.first_common_rise().is_some()
}

fn distinct_coordinates(f: &PointForest) -> bool {
    let firsts: BTreeSet<usize> = f.vertices().map(|p| p.0).collect();
    let seconds: BTreeSet<usize> = f.vertices().map(|p| p.1).collect();
    firsts.len() == f.len() && seconds.len() == f.len()
}

fn min_second_below(f: &PointForest, v: &Point) -> usize {
    f.subtree_labels(v).iter().map(|p| p.1).min().expect("nonempty subtree")
}

fn node_min_second(t: &Node<Point>) -> usize {
    t.children
        .iter()
        .map(node_min_second)
        .fold(t.label.1, usize::min)
}

fn properly_labeled_violation(f: &PointForest) -> Option<String> {
    if !distinct_coordinates(f) {
        return Some("coordinates are not distinct".into());
    }
    for (p, c) in f.edges() {
        if p.0 >= c.0 {
            return Some(format!("{p:?} is the parent of {c:?}"));
        }
        if min_second_below(f, c) >= p.1 {
            return Some(format!(
                "no vertex below {c:?} has second coordinate under {}",
                p.1
            ));
        }
    }
    None
}

fn leftmost_valid_violation(f: &PointForest) -> Option<String> {
    if !distinct_coordinates(f) {
        return Some("coordinates are not distinct".into());
    }
    for (p, c) in f.edges() {
        if p.0 >= c.0 {
            return Some(format!("{p:?} is the parent of {c:?}"));
        }
    }
    for u in f.vertices() {
        if let Some(v) = f.leftmost_child(u) {
            if v.1 >= u.1 {
                return Some(format!("leftmost child {v:?} of {u:?}"));
            }
        }
    }
    None
}

pub fn is_properly_labeled(f: &PointForest) -> bool {
    properly_labeled_violation(f).is_none()
}

pub fn is_leftmost_valid(f: &PointForest) -> bool {
    leftmost_valid_violation(f).is_none()
}

fn single_root(t: &PointForest) -> Result<Point> {
    match t.roots() {
        [r] => Ok(*r),
        roots => Err(Error::NotATree(roots.len())),
    }
}

/// Converts a leftmost-valid tree into a properly labeled tree with the same
/// vertex set and root.
pub fn f_convert(t: &PointForest) -> Result<PointForest> {
    let root = single_root(t)?;
    if let Some(why) = leftmost_valid_violation(t) {
        return Err(Error::NotLeftmostValid(why));
    }
    LabeledForest::from_nodes(vec![convert_node(t.node_at(&root))])
}

fn convert_node(t: Node<Point>) -> Node<Point> {
    if t.children.is_empty() {
        return t;
    }
    let root = t.label;
    // children arrive in decreasing first coordinate
    let mut seq: Vec<Node<Point>> = t.children.into_iter().map(convert_node).collect();
    while let Some(i) = seq.iter().position(|tree| node_min_second(tree) > root.1) {
        assert_ne!(i, 0, "the first tree always holds the leftmost child of {root:?}");
        let mut bad = seq.remove(i);
        bad.children.extend(seq.drain(..i));
        bad.canonicalize();
        seq.insert(0, bad);
    }
    Node {
        label: root,
        children: seq,
    }
}

/// Inverts [`f_convert`]: the unique leftmost-valid tree mapped onto the given
/// properly labeled tree.
pub fn f_inverse(t: &PointForest) -> Result<PointForest> {
    single_root(t)?;
    if let Some(why) = properly_labeled_violation(t) {
        return Err(Error::NotProperlyLabeled(why));
    }
    LabeledForest::from_nodes(vec![invert_tree(t)])
}

fn invert_tree(t: &PointForest) -> Node<Point> {
    let root = t.roots()[0];
    let Some(&u) = t.leftmost_child(&root) else {
        return Node::leaf(root);
    };
    let below_root = |v: &Point| min_second_below(t, v) < root.1;

    // first vertex in pre-order with smaller second coordinate than the root;
    // proper labeling puts it inside the subtree of the leftmost child
    let v1 = t
        .subtree_labels(&u)
        .into_iter()
        .find(|p| p.1 < root.1)
        .expect("properly labeled: the leftmost child's subtree dips below the root");

    let mut parts: Vec<PointForest> = vec![t.subtree(&v1)];
    let mut cur = v1;
    while cur != u {
        let parent = *t.parent(&cur).expect("u is an ancestor of v1");
        let good: Vec<Point> = t
            .children(&parent)
            .iter()
            .filter(|&&w| w != cur && below_root(&w))
            .copied()
            .collect();
        parts.extend(good.iter().map(|w| t.subtree(w)));
        parts.push(prune(t, &parent, |w| *w == cur || good.contains(w)));
        cur = parent;
    }
    parts.extend(
        t.children(&root)
            .iter()
            .filter(|&&w| w != u)
            .map(|w| t.subtree(w)),
    );

    let mut node = Node {
        label: root,
        children: parts.iter().map(invert_tree).collect(),
    };
    node.canonicalize();
    node
}

/// Subtree at `v` without the child subtrees selected by `drop`.
fn prune(t: &PointForest, v: &Point, drop: impl Fn(&Point) -> bool) -> PointForest {
    let mut entries = vec![(*v, None)];
    for c in t.children(v).iter().filter(|c| !drop(c)) {
        for w in t.subtree_labels(c) {
            entries.push((w, t.parent(&w).copied()));
        }
    }
    LabeledForest::from_parents(entries).expect("pruned subtree is a tree")
}

/// Applies [`f_convert`] to every component of a leftmost-valid forest.
pub fn psi(f: &PointForest) -> Result<PointForest> {
    let parts: Result<Vec<_>> = f.components().iter().map(f_convert).collect();
    LabeledForest::union(parts?)
}

/// Applies [`f_inverse`] to every component of a properly labeled forest.
pub fn psi_inverse(f: &PointForest) -> Result<PointForest> {
    let parts: Result<Vec<_>> = f.components().iter().map(f_inverse).collect();
    LabeledForest::union(parts?)
}

/// The permutation `eta` whose point set is the set of top-1 positions.
pub fn leaf_permutation(m: &BinaryMatrix) -> Vec<usize> {
    let mut eta = vec![0; m.rows()];
    for p in top_ones(m) {
        eta[p.row - 1] = p.col;
    }
    eta
}

/// The properly labeled forest of a complete non-ambiguous forest matrix:
/// its pair forest with `({i}, {eta_i})` relabeled to `(i, eta_i)`.
pub fn properly_labeled_forest_of(m: &BinaryMatrix) -> Result<PointForest> {
    if !is_complete_naf(m) {
        return Err(Error::NotCompleteNaf(format!(
            "{}x{} matrix fails the square / Γ-free / no empty line / top-1 = leading-1 test",
            m.rows(),
            m.cols()
        )));
    }
    increasing_forest_of(m)?.map_labels(|pair| {
        Point(
            pair.min_row(),
            *pair.cols.first().expect("nonempty column set"),
        )
    })
}

/// Maps a complete non-ambiguous forest matrix to a pair with no common rise
/// whose point set is the set of leaves.
pub fn matrix_to_pair(m: &BinaryMatrix) -> Result<PermPair> {
    let proper = properly_labeled_forest_of(m)?;
    let leftmost = psi_inverse(&proper)?;
    let seq = pi(&leftmost)?;
    Ok(PointSequence::new(seq)?.to_pair())
}

/// Inverse of [`matrix_to_pair`].
pub fn pair_to_matrix(p: &PermPair) -> Result<BinaryMatrix> {
    if let Some(i) = p.first_common_rise() {
        return Err(Error::CommonRise(i));
    }
    let n = p.len();
    let leftmost = pi_inverse(p.to_points().points())?;
    let proper = psi(&leftmost)?;
    let blocks = proper.map_labels(|pt| CallanPair::new([pt.0], [pt.1]))?;
    let s = CallanSequence::new(n, n, pi(&blocks)?)?;
    Ok(phi_inverse(&s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(edges: &[(Point, Point)], vertices: &[Point]) -> PointForest {
        LabeledForest::from_edges(vertices.iter().copied(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn common_rise_examples() {
        assert!(has_common_rise(&PermPair::new(vec![1, 2], vec![1, 2]).unwrap()));
        assert!(!has_common_rise(&PermPair::new(vec![1, 2], vec![2, 1]).unwrap()));
    }

    #[test]
    fn single_vertex_fixed() {
        let t = tree(&[], &[Point(1, 1)]);
        assert_eq!(f_convert(&t).unwrap(), t);
        assert_eq!(f_inverse(&t).unwrap(), t);
    }

    #[test]
    fn two_vertex_tree_fixed() {
        let t = tree(&[(Point(1, 2), Point(2, 1))], &[Point(1, 2), Point(2, 1)]);
        assert!(is_leftmost_valid(&t));
        assert!(is_properly_labeled(&t));
        assert_eq!(f_convert(&t).unwrap(), t);
        assert_eq!(f_inverse(&t).unwrap(), t);
    }

    #[test]
    fn merging_example() {
        // root (1,2) with children (3,1) (leftmost, good) and (2,3) (bad):
        // (3,1) is merged under (2,3)
        let v = [Point(1, 2), Point(2, 3), Point(3, 1)];
        let t = tree(&[(v[0], v[1]), (v[0], v[2])], &v);
        assert!(is_leftmost_valid(&t));
        assert!(!is_properly_labeled(&t));
        let f = f_convert(&t).unwrap();
        assert_eq!(f, tree(&[(v[0], v[1]), (v[1], v[2])], &v));
        assert!(is_properly_labeled(&f));
        assert_eq!(f_inverse(&f).unwrap(), t);
    }

    #[test]
    fn predicates_reject() {
        let t = tree(&[(Point(1, 1), Point(2, 2))], &[Point(1, 1), Point(2, 2)]);
        assert!(!is_leftmost_valid(&t));
        assert!(!is_properly_labeled(&t));
        assert!(matches!(f_convert(&t), Err(Error::NotLeftmostValid(_))));
        assert!(matches!(f_inverse(&t), Err(Error::NotProperlyLabeled(_))));
        let two = tree(&[], &[Point(1, 1), Point(2, 2)]);
        assert_eq!(f_convert(&two), Err(Error::NotATree(2)));
    }

    #[test]
    fn one_by_one() {
        let m = BinaryMatrix::parse("1").unwrap();
        let p = matrix_to_pair(&m).unwrap();
        assert_eq!((p.alpha(), p.beta()), (&[1][..], &[1][..]));
        assert_eq!(pair_to_matrix(&p).unwrap(), m);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            matrix_to_pair(&BinaryMatrix::parse("11\n11").unwrap()),
            Err(Error::NotCompleteNaf(_))
        ));
        let rise = PermPair::new(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(pair_to_matrix(&rise), Err(Error::CommonRise(1)));
    }
}
