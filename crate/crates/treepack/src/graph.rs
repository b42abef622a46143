//! Bipartite host graphs.
//!
//! A [`BipartiteGraph`] is an immutable value: two named sides `A` and `B`
//! with 0-based vertex indices per side, and a set of edges stored canonically
//! as `(a, b)` pairs. Edge removal returns a fresh value, so a chain of
//! shrinking hosts produced by a packing loop stays auditable.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two sides of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({a}, {b}) out of range for sides ({side_a}, {side_b})")]
    EdgeOutOfRange { a: usize, b: usize, side_a: usize, side_b: usize },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("subset on side {side} is empty")]
    EmptySubset { side: Side },
    #[error("subset index {index} out of range on side {side}")]
    SubsetOutOfRange { side: Side, index: usize },
}

/// Host graph with named sides `A` and `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    side_a: usize,
    side_b: usize,
    edges: BTreeSet<(usize, usize)>,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from an explicit edge list. Rejects out-of-range
    /// indices and duplicates.
    pub fn new(
        side_a: usize,
        side_b: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= side_a || b >= side_b {
                return Err(GraphError::EdgeOutOfRange { a, b, side_a, side_b });
            }
            if !set.insert((a, b)) {
                return Err(GraphError::DuplicateEdge { a, b });
            }
        }
        Ok(Self::from_edge_set(side_a, side_b, set))
    }

    /// The complete host `K_{side_a, side_b}`.
    pub fn complete(side_a: usize, side_b: usize) -> Self {
        let set = (0..side_a)
            .flat_map(|a| (0..side_b).map(move |b| (a, b)))
            .collect();
        Self::from_edge_set(side_a, side_b, set)
    }

    fn from_edge_set(side_a: usize, side_b: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adj_a = vec![Vec::new(); side_a];
        let mut adj_b = vec![Vec::new(); side_b];
        for &(a, b) in &edges {
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        // BTreeSet iteration keeps adj_a sorted; adj_b needs a sort.
        for nbrs in &mut adj_b {
            nbrs.sort_unstable();
        }
        Self { side_a, side_b, edges, adj_a, adj_b }
    }

    pub fn side_size(&self, side: Side) -> usize {
        match side {
            Side::A => self.side_a,
            Side::B => self.side_b,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.side_a == self.side_b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Neighbors (on the opposite side) of vertex `v` on `side`, ascending.
    pub fn neighbors(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::A => &self.adj_a[v],
            Side::B => &self.adj_b[v],
        }
    }

    pub fn degree(&self, side: Side, v: usize) -> usize {
        self.neighbors(side, v).len()
    }

    /// Minimum degree over all vertices of both sides.
    pub fn min_degree(&self) -> usize {
        let da = (0..self.side_a).map(|v| self.adj_a[v].len()).min();
        let db = (0..self.side_b).map(|v| self.adj_b[v].len()).min();
        match (da, db) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => 0,
        }
    }

    /// Number of edges between `sub_a ⊆ A` and `sub_b ⊆ B`.
    pub fn edges_between(&self, sub_a: &[usize], sub_b: &[usize]) -> usize {
        // Scan from the smaller side of the rectangle.
        if sub_a.len() <= sub_b.len() {
            let b_set: BTreeSet<usize> = sub_b.iter().copied().collect();
            sub_a
                .iter()
                .map(|&a| self.adj_a[a].iter().filter(|b| b_set.contains(b)).count())
                .sum()
        } else {
            let a_set: BTreeSet<usize> = sub_a.iter().copied().collect();
            sub_b
                .iter()
                .map(|&b| self.adj_b[b].iter().filter(|a| a_set.contains(a)).count())
                .sum()
        }
    }

    /// Degree of `v` into a subset of the opposite side.
    pub fn degree_into(&self, side: Side, v: usize, subset: &[usize]) -> usize {
        let nbrs = self.neighbors(side, v);
        if subset.len() < nbrs.len() {
            subset
                .iter()
                .filter(|&&u| nbrs.binary_search(&u).is_ok())
                .count()
        } else {
            let sub: BTreeSet<usize> = subset.iter().copied().collect();
            nbrs.iter().filter(|u| sub.contains(u)).count()
        }
    }

    /// Exact density `e(S, T) / (|S| |T|)` between nonempty subsets.
    pub fn density(&self, sub_a: &[usize], sub_b: &[usize]) -> Result<Rational64, GraphError> {
        if sub_a.is_empty() {
            return Err(GraphError::EmptySubset { side: Side::A });
        }
        if sub_b.is_empty() {
            return Err(GraphError::EmptySubset { side: Side::B });
        }
        for &a in sub_a {
            if a >= self.side_a {
                return Err(GraphError::SubsetOutOfRange { side: Side::A, index: a });
            }
        }
        for &b in sub_b {
            if b >= self.side_b {
                return Err(GraphError::SubsetOutOfRange { side: Side::B, index: b });
            }
        }
        let e = self.edges_between(sub_a, sub_b) as i64;
        Ok(Rational64::new(e, (sub_a.len() * sub_b.len()) as i64))
    }

    /// Returns a copy of the graph with the given edges removed.
    ///
    /// Every listed edge must be present; the first absent one is reported.
    pub fn remove_edges(
        &self,
        remove: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MissingEdge> {
        let mut edges = self.edges.clone();
        for (a, b) in remove {
            if !edges.remove(&(a, b)) {
                return Err(MissingEdge { a, b });
            }
        }
        Ok(Self::from_edge_set(self.side_a, self.side_b, edges))
    }
}

/// An edge scheduled for removal was not present in the host.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("host edge ({a}, {b}) is absent")]
pub struct MissingEdge {
    pub a: usize,
    pub b: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g = BipartiteGraph::complete(3, 3);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.min_degree(), 3);
        let g53 = BipartiteGraph::complete(5, 3);
        assert_eq!(g53.edge_count(), 15);
    }

    #[test]
    fn sparse_graph_degrees() {
        let g = BipartiteGraph::new(2, 2, [(0, 0)]).unwrap();
        assert_eq!(g.degree(Side::A, 1), 0);
        assert_eq!(g.degree(Side::A, 0), 1);
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            BipartiteGraph::new(2, 2, [(0, 5)]),
            Err(GraphError::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteGraph::new(2, 2, [(0, 0), (0, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn density_exact_values() {
        let g = BipartiteGraph::complete(3, 3);
        let full: Vec<usize> = (0..3).collect();
        assert_eq!(g.density(&full, &full).unwrap(), Rational64::new(1, 1));

        let minus_one = BipartiteGraph::new(3, 3, {
            let mut e: Vec<(usize, usize)> =
                (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
            e.remove(0);
            e
        })
        .unwrap();
        assert_eq!(minus_one.density(&full, &full).unwrap(), Rational64::new(8, 9));
        assert!(matches!(
            g.density(&[], &full),
            Err(GraphError::EmptySubset { side: Side::A })
        ));
    }

    /// Independent recount of density by a naive double loop.
    #[test]
    fn density_matches_naive_recount() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let na = rng.gen_range(2..10);
            let nb = rng.gen_range(2..10);
            let edges: Vec<(usize, usize)> = (0..na)
                .flat_map(|a| (0..nb).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let g = BipartiteGraph::new(na, nb, edges.clone()).unwrap();
            let sub_a: Vec<usize> = (0..na).filter(|_| rng.gen_bool(0.6)).collect();
            let sub_b: Vec<usize> = (0..nb).filter(|_| rng.gen_bool(0.6)).collect();
            if sub_a.is_empty() || sub_b.is_empty() {
                continue;
            }
            let mut count = 0i64;
            for &a in &sub_a {
                for &b in &sub_b {
                    if edges.contains(&(a, b)) {
                        count += 1;
                    }
                }
            }
            let expect = Rational64::new(count, (sub_a.len() * sub_b.len()) as i64);
            assert_eq!(g.density(&sub_a, &sub_b).unwrap(), expect);
        }
    }

    #[test]
    fn remove_edges_is_persistent() {
        let g = BipartiteGraph::complete(2, 2);
        let g2 = g.remove_edges([(0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g2.edge_count(), 3);
        assert!(matches!(g2.remove_edges([(0, 0)]), Err(MissingEdge { a: 0, b: 0 })));
    }
}
