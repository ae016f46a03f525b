//! Unordered rooted forests over totally ordered labels.
//!
//! A forest is determined by its vertex set and parent map. The canonical
//! presentation lists the roots, and the children of every vertex, in
//! decreasing label order; "leftmost child" always means the largest child.
//! The label's `Ord` implementation is the key order.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A labeled forest in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledForest<L: Ord> {
    parent: BTreeMap<L, Option<L>>,
    children: BTreeMap<L, Vec<L>>,
    roots: Vec<L>,
}

/// Nested tree form, used for serialization and for recursive algorithms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound(deserialize = "L: Deserialize<'de>"))]
pub struct Node<L> {
    pub label: L,
    #[serde(default)]
    pub children: Vec<Node<L>>,
}

impl<L> Node<L> {
    pub fn leaf(label: L) -> Self {
        Node {
            label,
            children: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        1 + self.children.iter().map(Node::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Labels in pre-order, children visited in their stored order.
    pub fn labels(&self) -> Vec<&L> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            out.push(&node.label);
            stack.extend(node.children.iter().rev());
        }
        out
    }
}

impl<L: Ord + Clone> Node<L> {
    /// Sorts children decreasingly at every level.
    pub fn canonicalize(&mut self) {
        for child in &mut self.children {
            child.canonicalize();
        }
        self.children.sort_by(|a, b| b.label.cmp(&a.label));
    }
}

impl<L: Ord + Clone> Default for LabeledForest<L> {
    fn default() -> Self {
        LabeledForest {
            parent: BTreeMap::new(),
            children: BTreeMap::new(),
            roots: Vec::new(),
        }
    }
}

impl<L: Ord + Clone + fmt::Debug> LabeledForest<L> {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the canonical forest from a complete parent map.
    ///
    /// Fails if a parent is not a vertex or if the parent map has a cycle.
    pub fn from_parents<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, Option<L>)>,
    {
        let mut parent = BTreeMap::new();
        for (v, p) in entries {
            if parent.insert(v.clone(), p).is_some() {
                return Err(Error::InvalidForest(format!("vertex {v:?} listed twice")));
            }
        }
        let mut children: BTreeMap<L, Vec<L>> =
            parent.keys().map(|v| (v.clone(), Vec::new())).collect();
        let mut roots = Vec::new();
        for (v, p) in &parent {
            match p {
                None => roots.push(v.clone()),
                Some(p) => match children.get_mut(p) {
                    Some(list) => list.push(v.clone()),
                    None => {
                        return Err(Error::InvalidForest(format!(
                            "parent {p:?} of {v:?} is not a vertex"
                        )))
                    }
                },
            }
        }
        for list in children.values_mut() {
            list.reverse();
        }
        roots.reverse();
        let forest = LabeledForest {
            parent,
            children,
            roots,
        };
        let reachable: usize = forest.roots.iter().map(|r| forest.subtree_size(r)).sum();
        if reachable != forest.len() {
            return Err(Error::InvalidForest("parent map contains a cycle".into()));
        }
        Ok(forest)
    }

    /// Builds the canonical forest from a vertex list and `(parent, child)` edges.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
    {
        let mut parent: BTreeMap<L, Option<L>> = BTreeMap::new();
        for v in vertices {
            if parent.insert(v.clone(), None).is_some() {
                return Err(Error::InvalidForest(format!("vertex {v:?} listed twice")));
            }
        }
        for (p, c) in edges {
            match parent.get_mut(&c) {
                None => return Err(Error::InvalidForest(format!("{c:?} is not a vertex"))),
                Some(Some(q)) => {
                    return Err(Error::InvalidForest(format!(
                        "{c:?} has two parents, {q:?} and {p:?}"
                    )))
                }
                Some(slot) => *slot = Some(p),
            }
        }
        Self::from_parents(parent)
    }

    /// Canonicalizes nested trees given with children in any order.
    pub fn from_nodes(nodes: Vec<Node<L>>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut stack: Vec<(Node<L>, Option<L>)> = nodes.into_iter().map(|n| (n, None)).collect();
        while let Some((node, parent)) = stack.pop() {
            let label = node.label;
            for child in node.children {
                stack.push((child, Some(label.clone())));
            }
            entries.push((label, parent));
        }
        Self::from_parents(entries)
    }

    /// Nested form, roots and children in canonical (decreasing) order.
    pub fn to_nodes(&self) -> Vec<Node<L>> {
        self.roots.iter().map(|r| self.node_at(r)).collect()
    }

    /// Nested form of the subtree rooted at `v`.
    pub fn node_at(&self, v: &L) -> Node<L> {
        Node {
            label: v.clone(),
            children: self.children(v).iter().map(|c| self.node_at(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Vertices in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = &L> {
        self.parent.keys()
    }

    pub fn contains(&self, v: &L) -> bool {
        self.parent.contains_key(v)
    }

    /// Roots in decreasing order.
    pub fn roots(&self) -> &[L] {
        &self.roots
    }

    /// Children of `v` in decreasing order; empty for unknown vertices.
    pub fn children(&self, v: &L) -> &[L] {
        self.children.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn parent(&self, v: &L) -> Option<&L> {
        self.parent.get(v).and_then(Option::as_ref)
    }

    /// The largest child of `v`.
    pub fn leftmost_child(&self, v: &L) -> Option<&L> {
        self.children(v).first()
    }

    /// `(parent, child)` pairs in increasing child order.
    pub fn edges(&self) -> impl Iterator<Item = (&L, &L)> {
        self.parent
            .iter()
            .filter_map(|(v, p)| p.as_ref().map(|p| (p, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.len() - self.roots.len()
    }

    /// Vertices of the subtree at `v`, pre-order with children in canonical order.
    pub fn subtree_labels(&self, v: &L) -> Vec<L> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u.clone());
            stack.extend(self.children(u).iter().rev());
        }
        out
    }

    fn subtree_size(&self, v: &L) -> usize {
        let mut count = 0;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            count += 1;
            stack.extend(self.children(u));
        }
        count
    }

    /// The rooted subtree spanned by `v` and its descendants.
    pub fn subtree(&self, v: &L) -> Self {
        let labels = self.subtree_labels(v);
        let entries = labels.into_iter().map(|u| {
            let p = if &u == v { None } else { self.parent(&u).cloned() };
            (u, p)
        });
        Self::from_parents(entries).expect("subtree of a valid forest")
    }

    /// Tree components in decreasing root order.
    pub fn components(&self) -> Vec<Self> {
        self.roots.iter().map(|r| self.subtree(r)).collect()
    }

    /// Vertex-disjoint union. Fails on shared vertices.
    pub fn union<I>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = Self>,
    {
        Self::from_parents(parts.into_iter().flat_map(|f| f.parent))
    }

    /// First vertex (as a `(parent, child)` pair) violating the increasing property.
    pub fn first_decreasing_edge(&self) -> Option<(&L, &L)> {
        self.edges().find(|(p, c)| p >= c)
    }

    pub fn is_increasing(&self) -> bool {
        self.first_decreasing_edge().is_none()
    }

    /// Relabels through `f`, which must be injective; the result is re-canonicalized.
    pub fn map_labels<M, F>(&self, mut f: F) -> Result<LabeledForest<M>>
    where
        M: Ord + Clone + fmt::Debug,
        F: FnMut(&L) -> M,
    {
        let mut cache = BTreeMap::new();
        for v in self.parent.keys() {
            cache.insert(v.clone(), f(v));
        }
        LabeledForest::from_parents(
            self.parent
                .iter()
                .map(|(v, p)| (cache[v].clone(), p.as_ref().map(|p| cache[p].clone()))),
        )
    }
}

impl<L: Ord + Clone + fmt::Debug> fmt::Debug for LabeledForest<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node<L: Ord + Clone + fmt::Debug>(
            forest: &LabeledForest<L>,
            v: &L,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            write!(f, "{v:?}")?;
            let children = forest.children(v);
            if !children.is_empty() {
                f.write_str("[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write_node(forest, c, f)?;
                }
                f.write_str("]")?;
            }
            Ok(())
        }
        f.write_str("{")?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_node(self, r, f)?;
        }
        f.write_str("}")
    }
}

struct NodeView<'a, L: Ord> {
    forest: &'a LabeledForest<L>,
    label: &'a L,
}

impl<L: Ord + Clone + fmt::Debug + Serialize> Serialize for NodeView<'_, L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Node", 2)?;
        st.serialize_field("label", self.label)?;
        let children: Vec<NodeView<'_, L>> = self
            .forest
            .children(self.label)
            .iter()
            .map(|c| NodeView {
                forest: self.forest,
                label: c,
            })
            .collect();
        st.serialize_field("children", &children)?;
        st.end()
    }
}

impl<L: Ord + Clone + fmt::Debug + Serialize> Serialize for LabeledForest<L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.roots.iter().map(|r| NodeView {
            forest: self,
            label: r,
        }))
    }
}

impl<'de, L> Deserialize<'de> for LabeledForest<L>
where
    L: Ord + Clone + fmt::Debug + Deserialize<'de>,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<Node<L>>::deserialize(deserializer)?;
        LabeledForest::from_nodes(nodes).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn children_sorted_decreasing_regardless_of_insertion() {
        let a = LabeledForest::from_edges([1, 2, 3], [(1, 2), (1, 3)]).unwrap();
        let b = LabeledForest::from_edges([3, 2, 1], [(1, 3), (1, 2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.children(&1), &[3, 2]);
        assert_eq!(a.leftmost_child(&1), Some(&3));
    }

    #[test]
    fn single_vertex_and_root_order() {
        let single = LabeledForest::from_edges([7], []).unwrap();
        assert_eq!(single.roots(), &[7]);
        assert_eq!(single.clone(), LabeledForest::from_nodes(single.to_nodes()).unwrap());
        let two = LabeledForest::from_edges([1, 2], []).unwrap();
        assert_eq!(two.roots(), &[2, 1]);
    }

    #[test]
    fn cycle_and_double_parent_rejected() {
        assert!(LabeledForest::from_parents([(1, Some(2)), (2, Some(1))]).is_err());
        assert!(LabeledForest::from_parents([(1, Some(1))]).is_err());
        assert!(LabeledForest::from_edges([1, 2, 3], [(1, 3), (2, 3)]).is_err());
        assert!(LabeledForest::from_edges([1, 2], [(1, 5)]).is_err());
    }

    #[test]
    fn serialization_is_nested_and_canonical() {
        let f = LabeledForest::from_edges([1, 2, 3, 4], [(1, 2), (1, 3)]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"[{"label":4,"children":[]},{"label":1,"children":[{"label":3,"children":[]},{"label":2,"children":[]}]}]"#
        );
        let back: LabeledForest<i32> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        // children may be given in any order and omitted when empty
        let loose: LabeledForest<i32> =
            serde_json::from_str(r#"[{"label":1,"children":[{"label":2},{"label":3}]},{"label":4}]"#)
                .unwrap();
        assert_eq!(loose, f);
    }

    #[test]
    fn subtree_and_components() {
        let f = LabeledForest::from_edges([1, 2, 3, 4, 5], [(1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(f.subtree_labels(&1), vec![1, 4, 2, 3]);
        let sub = f.subtree(&2);
        assert_eq!(sub.roots(), &[2]);
        assert_eq!(sub.len(), 2);
        let comps = f.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].roots(), &[5]);
        assert_eq!(LabeledForest::union(comps).unwrap(), f);
    }
}
