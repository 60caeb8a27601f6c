//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as one bit row per vertex, so neighbourhood
//! intersections and degree counts inside a vertex subset are a handful of
//! word operations. Graphs up to 64 vertices additionally expose each row as
//! a single `u64` mask, which is what the exhaustive deciders work on.

mod enumerate;
mod format;

pub use enumerate::{enumerate_graphs, EnumerateGraphs, ENUMERATION_CAP};
pub use format::{
    parse_edge_list, parse_graph6, to_dot, to_edge_list, to_graph6, GRAPH6_MAX_ORDER,
};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, true);
            }
        }
        g
    }

    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        Graph::join(&Graph::empty(p), &Graph::empty(q))
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.set(v, (v + 1) % n, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set(v - 1, v, true);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `g1` keep their labels, those of `g2`
    /// are shifted by `g1.order()`.
    pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
        let mut g = Graph::empty(g1.n + g2.n);
        for (u, v) in g1.edges() {
            g.set(u, v, true);
        }
        for (u, v) in g2.edges() {
            g.set(g1.n + u, g1.n + v, true);
        }
        g
    }

    /// Join: the disjoint union plus every edge between the two sides.
    /// Labelling is the same as [`Graph::disjoint_union`].
    pub fn join(g1: &Graph, g2: &Graph) -> Graph {
        let mut g = Graph::disjoint_union(g1, g2);
        for u in 0..g1.n {
            for v in 0..g2.n {
                g.set(u, g1.n + v, true);
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u / WORD, u % WORD);
        let (wv, bv) = (v / WORD, v % WORD);
        if on {
            self.bits[u * self.words + wv] |= 1 << bv;
            self.bits[v * self.words + wu] |= 1 << bu;
        } else {
            self.bits[u * self.words + wv] &= !(1 << bv);
            self.bits[v * self.words + wu] &= !(1 << bu);
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set(u, v, true);
        Ok(())
    }

    /// Returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.set(u, v, false);
        true
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adjacency row of `v` as packed words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn word_count(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as a single mask. Only valid for `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.bits[v * self.words]
    }

    /// All adjacency rows as masks, or `TooLarge` if `n > 64`.
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.n > WORD {
            return Err(Error::TooLarge {
                what: "graph order for mask-based routines",
                limit: WORD,
                actual: self.n,
            });
        }
        Ok((0..self.n).map(|v| self.mask(v)).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Pairs `u < v` that are not edges.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced on `keep`, relabelled to `0..keep.len()` in the order given.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// `G − K`; surviving vertices keep their relative order.
    pub fn delete_vertices(&self, removed: &VertexSet) -> Result<Graph> {
        if let Some(&v) = removed.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(*v)).collect();
        self.induced(&keep)
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.components().len() == 1)
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Applies `perm` (old label -> new label).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "permutation of length {} for graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// Sorted, duplicate-free subset of `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if let Some(&last) = v.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange { vertex: last, n });
            }
        }
        Ok(VertexSet(v))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(BitIter(mask).collect())
    }

    /// Only meaningful when every member is below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vs(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::new(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn empty_graphs() {
        let g = Graph::empty(0);
        assert_eq!((g.order(), g.edge_count()), (0, 0));
        assert_eq!(Graph::empty(3).order(), 3);
        assert_eq!(Graph::empty(5).edge_count(), 0);
        assert_eq!(Graph::empty(0).is_connected(), Err(Error::EmptyGraph));
    }

    #[test]
    fn complete_and_bipartite() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(0), 3);
        let c4 = Graph::complete_bipartite(2, 2);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn join_and_union() {
        assert_eq!(
            Graph::join(&Graph::complete(1), &Graph::empty(3)),
            Graph::complete_bipartite(1, 3)
        );
        assert_eq!(
            Graph::join(&Graph::complete(2), &Graph::complete(3)),
            Graph::complete(5)
        );
        let two_triangles = Graph::disjoint_union(&Graph::complete(3), &Graph::complete(3));
        assert_eq!((two_triangles.order(), two_triangles.edge_count()), (6, 6));
        assert_eq!(two_triangles.is_connected(), Ok(false));
    }

    #[test]
    fn deleting_vertices() {
        assert_eq!(
            Graph::complete(5).delete_vertices(&vs(5, &[0])).unwrap(),
            Graph::complete(4)
        );
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(star.delete_vertices(&vs(4, &[0])).unwrap(), Graph::empty(3));
        assert_eq!(
            Graph::cycle(5)
                .delete_vertices(&vs(5, &[2]))
                .unwrap()
                .edge_count(),
            3
        );
        let p4 = Graph::cycle(5).delete_vertices(&vs(5, &[4])).unwrap();
        assert_eq!(p4, Graph::path(4));
        let bad = VertexSet::from_mask(1 << 7);
        assert!(matches!(
            Graph::complete(5).delete_vertices(&bad),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn degrees_and_connectivity() {
        assert_eq!(Graph::complete_bipartite(1, 3).min_degree(), 1);
        let c5 = Graph::cycle(5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(c5.is_connected(), Ok(true));
    }

    #[test]
    fn edge_insertion_errors() {
        let mut g = Graph::empty(3);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(2, 2), Err(Error::SelfLoop(2)));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn vertex_set_validation() {
        assert_eq!(VertexSet::new(4, [1, 1]), Err(Error::DuplicateVertex(1)));
        assert!(VertexSet::new(4, [4]).is_err());
        assert_eq!(VertexSet::new(4, [3, 0]).unwrap().as_slice(), &[0, 3]);
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = Graph::complete(130);
        assert_eq!(g.edge_count(), 130 * 129 / 2);
        assert_eq!(g.degree(129), 129);
        assert!(g.masks().is_err());
    }

    fn random_graph(n: usize, bits: &[bool]) -> Graph {
        let mut g = Graph::empty(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[i] {
                    g.add_edge(u, v).unwrap();
                }
                i += 1;
            }
        }
        g
    }

    proptest! {
        #[test]
        fn symmetric_and_loop_free(n in 0usize..12, bits in proptest::collection::vec(any::<bool>(), 66)) {
            let g = random_graph(n, &bits);
            for u in 0..n {
                prop_assert!(!g.has_edge(u, u));
                for v in 0..n {
                    prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                }
            }
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        }

        #[test]
        fn deletion_removes_exactly_the_touching_edges(
            n in 1usize..12,
            bits in proptest::collection::vec(any::<bool>(), 66),
            removed in any::<u16>(),
        ) {
            let g = random_graph(n, &bits);
            let k = VertexSet::from_mask(removed as u64 & ((1u64 << n) - 1));
            let touching = g.edges().filter(|&(u, v)| k.contains(u) || k.contains(v)).count();
            let h = g.delete_vertices(&k).unwrap();
            prop_assert_eq!(h.edge_count(), g.edge_count() - touching);
            let survivors: Vec<usize> = (0..n).filter(|v| !k.contains(*v)).collect();
            for (i, &v) in survivors.iter().enumerate() {
                let lost = g.neighbors(v).filter(|&w| k.contains(w)).count();
                prop_assert_eq!(h.degree(i), g.degree(v) - lost);
            }
        }

        #[test]
        fn join_and_union_counts(
            n1 in 0usize..8, n2 in 0usize..8,
            b1 in proptest::collection::vec(any::<bool>(), 28),
            b2 in proptest::collection::vec(any::<bool>(), 28),
        ) {
            let g1 = random_graph(n1, &b1);
            let g2 = random_graph(n2, &b2);
            let u = Graph::disjoint_union(&g1, &g2);
            let j = Graph::join(&g1, &g2);
            prop_assert_eq!(u.order(), n1 + n2);
            prop_assert_eq!(j.order(), n1 + n2);
            prop_assert_eq!(u.edge_count(), g1.edge_count() + g2.edge_count());
            prop_assert_eq!(j.edge_count(), g1.edge_count() + g2.edge_count() + n1 * n2);
        }
    }
}
