//! Simple undirected graphs, edge colorings, complete multipartite structures
//! and monochromatic component analysis.

mod components;
mod io;
mod parts;
mod union_find;

pub use components::{monochromatic_components, Component, ComponentReport};
pub use io::{parse_graph_file, read_graph_file, write_colored, write_uncolored, GraphFile};
pub use parts::{
    intersect_multipartite, materialize_multipartite, multipartite_counts, MultipartiteCounts,
    PartStructure, MATERIALIZE_LIMIT,
};
pub use union_find::UnionFind;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically;
/// an edge's position in that list is its index, which colorings use.
/// Adjacency is kept in CSR form with sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    /// `adj_edge[i]` is the edge index of the adjacency entry `neighbors[i]`.
    adj_edge: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_canonical_unchecked(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_canonical_unchecked(n, edges)
    }

    /// Builds a graph from arbitrary pairs, orienting, sorting and
    /// deduplicating them. Self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidEdge { u: a, v: b, n });
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical_unchecked(n, edges))
    }

    /// Builds a graph from an edge list that must already be canonical.
    pub fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= v || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            if i > 0 && edges[i - 1] >= (u, v) {
                return Err(Error::InvalidEdge { u, v, n });
            }
        }
        Ok(Self::from_canonical_unchecked(n, edges))
    }

    pub(crate) fn from_canonical_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &degree[..n] {
            acc += d;
            offsets.push(acc);
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0usize; acc];
        let mut adj_edge = vec![0usize; acc];
        // lexicographic edge order makes each neighbor list come out sorted:
        // for vertex w, neighbors u < w arrive via (u, w) in increasing u, then
        // neighbors v > w arrive via (w, v) in increasing v.
        for (idx, &(u, v)) in edges.iter().enumerate() {
            neighbors[fill[u]] = v;
            adj_edge[fill[u]] = idx;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            adj_edge[fill[v]] = idx;
            fill[v] += 1;
        }
        let g = Graph {
            n,
            edges,
            offsets,
            neighbors,
            adj_edge,
        };
        debug_assert!((0..n).all(|v| g.neighbors(v).windows(2).all(|w| w[0] < w[1])));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge indices parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adj_edge[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        let (u, v) = (u.min(v), u.max(v));
        let lo = self.offsets[u];
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.adj_edge[lo + i])
    }

    pub(crate) fn membership(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// `e(S)`: edges with both endpoints in `S`. Repeated ids count once.
    pub fn count_edges_within(&self, set: &[usize]) -> Result<u64> {
        let mask = self.membership(set)?;
        let mut count = 0u64;
        for v in (0..self.n).filter(|&v| mask[v]) {
            count += self
                .neighbors(v)
                .iter()
                .filter(|&&w| w > v && mask[w])
                .count() as u64;
        }
        Ok(count)
    }

    /// `e(S, T)`: ordered pairs `(s, t)` in `S x T` that are adjacent.
    pub fn count_ordered_between(&self, s: &[usize], t: &[usize]) -> Result<u64> {
        let in_s = self.membership(s)?;
        let in_t = self.membership(t)?;
        let mut count = 0u64;
        for v in (0..self.n).filter(|&v| in_s[v]) {
            count += self.neighbors(v).iter().filter(|&&w| in_t[w]).count() as u64;
        }
        Ok(count)
    }

    /// Subgraph on the same vertex set keeping the edges for which `keep` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, (usize, usize)) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, &e)| keep(i, e))
            .map(|(_, &e)| e)
            .collect();
        Self::from_canonical_unchecked(self.n, edges)
    }
}

/// Colors `1..=r`, one per edge index of an associated [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    r: usize,
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub const MAX_COLORS: usize = u8::MAX as usize;

    pub fn new(r: usize, colors: Vec<u8>) -> Result<Self> {
        if r == 0 || r > Self::MAX_COLORS {
            return Err(Error::ColoringMismatch(format!(
                "color count {r} outside 1..={}",
                Self::MAX_COLORS
            )));
        }
        if let Some((i, &c)) = colors
            .iter()
            .enumerate()
            .find(|&(_, &c)| c == 0 || c as usize > r)
        {
            return Err(Error::ColoringMismatch(format!(
                "edge {i} has color {c} outside 1..={r}"
            )));
        }
        Ok(Self { r, colors })
    }

    /// Every edge gets `color`.
    pub fn constant(r: usize, m: usize, color: u8) -> Result<Self> {
        Self::new(r, vec![color; m])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> u8 {
        self.colors[edge]
    }

    pub fn set(&mut self, edge: usize, color: u8) {
        debug_assert!(color >= 1 && color as usize <= self.r);
        self.colors[edge] = color;
    }

    pub fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.num_edges() {
            return Err(Error::ColoringMismatch(format!(
                "{} colors for {} edges",
                self.colors.len(),
                g.num_edges()
            )));
        }
        Ok(())
    }

    /// Edges per color, index `c - 1` for color `c`.
    pub fn color_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.r];
        for &c in &self.colors {
            counts[c as usize - 1] += 1;
        }
        counts
    }
}

/// A graph together with a coloring of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub coloring: EdgeColoring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: EdgeColoring) -> Result<Self> {
        coloring.check_matches(&graph)?;
        Ok(Self { graph, coloring })
    }

    pub fn components(&self) -> ComponentReport {
        monochromatic_components(&self.graph, &self.coloring)
            .expect("coloring checked at construction")
    }
}

pub fn binomial2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
