//! Rooted trees and balanced forests (the guest structures).
//!
//! A tree's parity classes are fixed by depth: `V_e` (even depth, contains the
//! root) is the A-class and `V_o` is the B-class. A forest carries one extra
//! bit per component recording which side of the forest's global 2-coloring
//! the component's even-depth class lies on.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Side;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("parent index {parent} of vertex {vertex} out of range")]
    ParentOutOfRange { vertex: usize, parent: usize },
    #[error("root {root} out of range for {n} vertices")]
    RootOutOfRange { root: usize, n: usize },
    #[error("vertex {vertex} declares no parent but is not the root {root}")]
    MultipleRoots { vertex: usize, root: usize },
    #[error("root {root} must not have a parent")]
    RootHasParent { root: usize },
    #[error("cycle or disconnected part detected at vertex {vertex}")]
    NotATree { vertex: usize },
    #[error("tree must be nonempty")]
    Empty,
}

/// Rooted tree encoded by a parent array (`parent[root] = None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
    #[serde(skip)]
    depth: Vec<usize>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn new(parent: Vec<Option<usize>>, root: usize) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if root >= n {
            return Err(TreeError::RootOutOfRange { root, n });
        }
        if parent[root].is_some() {
            return Err(TreeError::RootHasParent { root });
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match p {
                Some(p) => {
                    if *p >= n {
                        return Err(TreeError::ParentOutOfRange { vertex: v, parent: *p });
                    }
                    children[*p].push(v);
                }
                None => {
                    if v != root {
                        return Err(TreeError::MultipleRoots { vertex: v, root });
                    }
                }
            }
        }
        // BFS from the root; any unreached vertex closes a cycle or is
        // disconnected (same failure class for a parent array).
        let mut depth = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([root]);
        depth[root] = 0;
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                queue.push_back(c);
            }
        }
        if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(TreeError::NotATree { vertex: v });
        }
        Ok(Self { parent, root, depth, children })
    }

    /// Re-derives the cached depth/children arrays. Needed after
    /// deserialization, where only the parent array travels.
    pub fn revalidate(parent: Vec<Option<usize>>, root: usize) -> Result<Self, TreeError> {
        Self::new(parent, root)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parent_array(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Parity class of a vertex: even depth is the A-class.
    pub fn class_of(&self, v: usize) -> Side {
        if self.depth[v] % 2 == 0 {
            Side::A
        } else {
            Side::B
        }
    }

    /// Vertices of even depth (`V_e`, houses the root).
    pub fn even_class(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.depth[v] % 2 == 0).collect()
    }

    /// Vertices of odd depth (`V_o`).
    pub fn odd_class(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.depth[v] % 2 == 1).collect()
    }

    pub fn even_class_size(&self) -> usize {
        self.depth.iter().filter(|&&d| d % 2 == 0).count()
    }

    pub fn odd_class_size(&self) -> usize {
        self.vertex_count() - self.even_class_size()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.even_class_size() == self.vertex_count()
    }

    /// Edges as (parent, child) pairs in child order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).filter_map(move |v| self.parent[v].map(|p| (p, v)))
    }

    /// Vertices in BFS order from the root (parents before children).
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = std::collections::VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            queue.extend(self.children[v].iter().copied());
        }
        order
    }

    /// Subtree size of every vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.vertex_count()];
        for &v in self.bfs_order().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }
}

/// Vertex-disjoint rooted trees with class labels consistent with one global
/// 2-coloring. `even_is_a[c]` says whether component `c`'s even-depth class
/// lies on the forest's A side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedForest {
    components: Vec<RootedTree>,
    even_is_a: Vec<bool>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("components and class labels disagree in length ({components} vs {labels})")]
    LabelMismatch { components: usize, labels: usize },
}

impl BalancedForest {
    pub fn new(components: Vec<RootedTree>, even_is_a: Vec<bool>) -> Result<Self, ForestError> {
        if components.len() != even_is_a.len() {
            return Err(ForestError::LabelMismatch {
                components: components.len(),
                labels: even_is_a.len(),
            });
        }
        Ok(Self { components, even_is_a })
    }

    /// Forest consisting of one tree, its even class on side A.
    pub fn single(tree: RootedTree) -> Self {
        Self { components: vec![tree], even_is_a: vec![true] }
    }

    pub fn components(&self) -> &[RootedTree] {
        &self.components
    }

    pub fn even_is_a(&self, comp: usize) -> bool {
        self.even_is_a[comp]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|t| t.vertex_count()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|t| t.edge_count()).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.components.iter().map(|t| t.max_degree()).max().unwrap_or(0)
    }

    /// Size of the forest's A class under the global coloring.
    pub fn a_class_size(&self) -> usize {
        self.components
            .iter()
            .zip(&self.even_is_a)
            .map(|(t, &ea)| if ea { t.even_class_size() } else { t.odd_class_size() })
            .sum()
    }

    pub fn b_class_size(&self) -> usize {
        self.vertex_count() - self.a_class_size()
    }

    pub fn is_balanced(&self) -> bool {
        self.a_class_size() == self.b_class_size()
    }

    /// Offset of each component in the forest's global vertex numbering.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for t in &self.components {
            offsets.push(acc);
            acc += t.vertex_count();
        }
        offsets
    }

    /// Class of a global vertex index under the forest coloring.
    pub fn class_of_global(&self, gid: usize) -> Side {
        let (comp, local) = self.locate(gid);
        let t = &self.components[comp];
        let even = t.depth(local) % 2 == 0;
        if even == self.even_is_a[comp] {
            Side::A
        } else {
            Side::B
        }
    }

    /// Maps a global index back to (component, local index).
    pub fn locate(&self, gid: usize) -> (usize, usize) {
        let mut acc = 0;
        for (c, t) in self.components.iter().enumerate() {
            if gid < acc + t.vertex_count() {
                return (c, gid - acc);
            }
            acc += t.vertex_count();
        }
        panic!("global vertex {gid} out of range");
    }
}

/// Anything that can be embedded: a tree or a forest, with a global vertex
/// numbering, an edge list, and a two-coloring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guest {
    Tree { parents: Vec<Option<usize>>, root: usize },
    Forest { components: Vec<(Vec<Option<usize>>, usize)>, even_is_a: Vec<bool> },
}

impl Guest {
    pub fn from_tree(tree: &RootedTree) -> Self {
        Guest::Tree { parents: tree.parent_array().to_vec(), root: tree.root() }
    }

    pub fn from_forest(forest: &BalancedForest) -> Self {
        Guest::Forest {
            components: forest
                .components()
                .iter()
                .map(|t| (t.parent_array().to_vec(), t.root()))
                .collect(),
            even_is_a: (0..forest.component_count()).map(|c| forest.even_is_a(c)).collect(),
        }
    }

    /// Rebuilds the validated structures.
    pub fn materialize(&self) -> Result<MaterializedGuest, TreeError> {
        match self {
            Guest::Tree { parents, root } => {
                Ok(MaterializedGuest::Tree(RootedTree::new(parents.clone(), *root)?))
            }
            Guest::Forest { components, even_is_a } => {
                let comps = components
                    .iter()
                    .map(|(p, r)| RootedTree::new(p.clone(), *r))
                    .collect::<Result<Vec<_>, _>>()?;
                let forest = BalancedForest::new(comps, even_is_a.clone())
                    .expect("serialized forest labels consistent");
                Ok(MaterializedGuest::Forest(forest))
            }
        }
    }
}

/// Validated guest with uniform accessors over trees and forests.
#[derive(Debug, Clone)]
pub enum MaterializedGuest {
    Tree(RootedTree),
    Forest(BalancedForest),
}

impl MaterializedGuest {
    pub fn vertex_count(&self) -> usize {
        match self {
            MaterializedGuest::Tree(t) => t.vertex_count(),
            MaterializedGuest::Forest(f) => f.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            MaterializedGuest::Tree(t) => t.edge_count(),
            MaterializedGuest::Forest(f) => f.edge_count(),
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            MaterializedGuest::Tree(t) => t.max_degree(),
            MaterializedGuest::Forest(f) => f.max_degree(),
        }
    }

    /// Edges over the global vertex numbering.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            MaterializedGuest::Tree(t) => t.edges().collect(),
            MaterializedGuest::Forest(f) => {
                let offsets = f.offsets();
                f.components()
                    .iter()
                    .enumerate()
                    .flat_map(|(c, t)| {
                        let off = offsets[c];
                        t.edges().map(move |(p, v)| (p + off, v + off)).collect::<Vec<_>>()
                    })
                    .collect()
            }
        }
    }

    /// Class of a global vertex: the side of the host it must map to.
    pub fn class_of(&self, gid: usize) -> Side {
        match self {
            MaterializedGuest::Tree(t) => t.class_of(gid),
            MaterializedGuest::Forest(f) => f.class_of_global(gid),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(parents: Vec<i64>, root: usize) -> Result<RootedTree, TreeError> {
        RootedTree::new(
            parents.into_iter().map(|p| (p >= 0).then_some(p as usize)).collect(),
            root,
        )
    }

    #[test]
    fn single_edge_is_balanced() {
        let t = tree(vec![-1, 0], 0).unwrap();
        assert_eq!(t.even_class_size(), 1);
        assert_eq!(t.odd_class_size(), 1);
        assert!(t.is_balanced());
    }

    #[test]
    fn path_of_four_is_balanced() {
        let t = tree(vec![-1, 0, 1, 2], 0).unwrap();
        assert!(t.is_balanced());
        assert_eq!(t.max_degree(), 2);
    }

    #[test]
    fn star_is_unbalanced() {
        let t = tree(vec![-1, 0, 0, 0], 0).unwrap();
        assert_eq!(t.even_class_size(), 1);
        assert_eq!(t.odd_class_size(), 3);
        assert!(!t.is_balanced());
    }

    #[test]
    fn rejects_cycles_and_multiple_roots() {
        // 1 and 2 point at each other: unreachable from the root.
        assert!(matches!(tree(vec![-1, 2, 1], 0), Err(TreeError::NotATree { .. })));
        assert!(matches!(tree(vec![-1, -1, 0], 0), Err(TreeError::MultipleRoots { .. })));
        assert!(matches!(tree(vec![-1, 0, 9], 0), Err(TreeError::ParentOutOfRange { .. })));
    }

    #[test]
    fn every_tree_edge_joins_the_classes() {
        // 2-coloring check on a fixed non-trivial tree.
        let t = tree(vec![-1, 0, 0, 1, 1, 2, 5], 0).unwrap();
        for (p, v) in t.edges() {
            assert_ne!(t.class_of(p), t.class_of(v));
        }
    }

    #[test]
    fn forest_class_sizes() {
        let t1 = tree(vec![-1, 0], 0).unwrap(); // 1 even + 1 odd
        let t2 = tree(vec![-1, 0, 0], 0).unwrap(); // 1 even + 2 odd
        let f = BalancedForest::new(vec![t1, t2], vec![true, false]).unwrap();
        // Component 2 contributes its odd class (2 vertices) to side A.
        assert_eq!(f.a_class_size(), 1 + 2);
        assert_eq!(f.b_class_size(), 1 + 1);
        assert!(!f.is_balanced());
        assert_eq!(f.class_of_global(0), Side::A);
        assert_eq!(f.class_of_global(2), Side::B); // root of comp 1, even, labeled B
        assert_eq!(f.class_of_global(3), Side::A);
    }
}
