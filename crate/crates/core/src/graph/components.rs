use serde::Serialize;

use super::{EdgeColoring, Graph, UnionFind};
use crate::error::Result;
use crate::ratio::Rational;

/// One monochromatic connected component (at least one edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Component {
    pub color: usize,
    pub vertices: usize,
    pub edges: u64,
    pub min_vertex: usize,
}

impl Component {
    /// Ordering key for "largest": more edges, then more vertices, then the
    /// smaller lowest vertex id, then the smaller color.
    fn rank_key(
        &self,
    ) -> (
        u64,
        usize,
        std::cmp::Reverse<usize>,
        std::cmp::Reverse<usize>,
    ) {
        (
            self.edges,
            self.vertices,
            std::cmp::Reverse(self.min_vertex),
            std::cmp::Reverse(self.color),
        )
    }
}

/// Per-color monochromatic components of a colored graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub n: usize,
    pub r: usize,
    pub total_edges: u64,
    /// `per_color[c - 1]` lists color `c`'s components ordered by lowest vertex.
    pub per_color: Vec<Vec<Component>>,
    pub largest: Option<Component>,
}

impl ComponentReport {
    /// Fraction of all edges lying in the largest component; `None` for an
    /// edgeless graph.
    pub fn z(&self) -> Option<Rational> {
        let largest = self.largest?;
        Some(Rational::new(
            largest.edges as i128,
            self.total_edges as i128,
        ))
    }

    pub fn max_component_edges(&self) -> u64 {
        self.largest.map_or(0, |c| c.edges)
    }

    /// Most vertices in any monochromatic component.
    pub fn max_component_vertices(&self) -> usize {
        self.components().map(|c| c.vertices).max().unwrap_or(0)
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.per_color.iter().flatten()
    }

    pub fn num_components(&self) -> usize {
        self.per_color.iter().map(Vec::len).sum()
    }

    /// All component edge counts, largest first.
    pub fn edge_profile(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.components().map(|c| c.edges).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Connected components of each color class, one union-find sweep per color.
/// Vertices without an edge of a color are not components of that color.
pub fn monochromatic_components(g: &Graph, coloring: &EdgeColoring) -> Result<ComponentReport> {
    coloring.check_matches(g)?;
    let r = coloring.r();
    let n = g.n();

    // bucket edge indices by color
    let counts = coloring.color_counts();
    let mut start = vec![0usize; r + 1];
    for c in 0..r {
        start[c + 1] = start[c] + counts[c] as usize;
    }
    let mut fill = start.clone();
    let mut by_color = vec![0usize; g.num_edges()];
    for (e, &c) in coloring.colors().iter().enumerate() {
        let c = c as usize - 1;
        by_color[fill[c]] = e;
        fill[c] += 1;
    }

    let mut uf = UnionFind::new(n);
    let mut slot = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut per_color = Vec::with_capacity(r);
    let edges = g.edges();
    for c in 0..r {
        let class = &by_color[start[c]..start[c + 1]];
        touched.clear();
        for &e in class {
            let (u, v) = edges[e];
            for w in [u, v] {
                if slot[w] == usize::MAX {
                    slot[w] = usize::MAX - 1;
                    touched.push(w);
                }
            }
            uf.union(u, v);
        }
        touched.sort_unstable();
        let mut comps: Vec<Component> = Vec::new();
        // touched is sorted, so the first member seen of each root is its lowest vertex
        for &w in &touched {
            let root = uf.find(w);
            if slot[root] >= usize::MAX - 1 {
                slot[root] = comps.len();
                comps.push(Component {
                    color: c + 1,
                    vertices: uf.set_size(root),
                    edges: 0,
                    min_vertex: w,
                });
            }
        }
        for &e in class {
            let root = uf.find(edges[e].0);
            comps[slot[root]].edges += 1;
        }
        for &w in &touched {
            slot[w] = usize::MAX;
            uf.reset(w);
        }
        per_color.push(comps);
    }

    let largest = per_color
        .iter()
        .flatten()
        .max_by_key(|c| c.rank_key())
        .copied();
    Ok(ComponentReport {
        n,
        r,
        total_edges: g.num_edges() as u64,
        per_color,
        largest,
    })
}
