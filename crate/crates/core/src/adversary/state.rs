//! Incrementally maintained monochromatic components under single-edge
//! recoloring.
//!
//! Removing an edge runs two interleaved searches, one from each endpoint,
//! inside the old color; they stop as soon as they meet (no split) or one side
//! runs out (that side becomes a new component). Adding an edge relabels the
//! smaller of the two merged components.

use std::collections::BTreeMap;

use super::Objective;
use crate::graph::{EdgeColoring, Graph};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Comp {
    edges: u64,
    vertices: usize,
}

#[derive(Debug, Clone)]
pub struct ComponentState<'g> {
    g: &'g Graph,
    r: usize,
    n: usize,
    colors: Vec<u8>,
    /// color-`c` neighbors of `v` at `(c - 1) * n + v`
    adj: Vec<Vec<usize>>,
    label: Vec<u32>,
    comps: Vec<Comp>,
    free: Vec<u32>,
    /// component edge count -> multiplicity, over all colors
    sizes: BTreeMap<u64, u32>,
    mark: Vec<u32>,
    stamp: u32,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl<'g> ComponentState<'g> {
    pub fn new(g: &'g Graph, coloring: &EdgeColoring) -> Self {
        coloring.check_matches(g).expect("coloring matches graph");
        let (r, n) = (coloring.r(), g.n());
        let mut st = Self {
            g,
            r,
            n,
            colors: coloring.colors().to_vec(),
            adj: vec![Vec::new(); r * n],
            label: vec![NONE; r * n],
            comps: Vec::new(),
            free: Vec::new(),
            sizes: BTreeMap::new(),
            mark: vec![0; n],
            stamp: 0,
            side_a: Vec::new(),
            side_b: Vec::new(),
        };
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let base = (st.colors[e] as usize - 1) * n;
            st.adj[base + u].push(v);
            st.adj[base + v].push(u);
        }
        for c in 0..r {
            for v in 0..n {
                if st.label[c * n + v] == NONE && !st.adj[c * n + v].is_empty() {
                    let id = st.alloc(Comp {
                        edges: 0,
                        vertices: 0,
                    });
                    let mut stack = vec![v];
                    st.label[c * n + v] = id;
                    let (mut verts, mut degree_sum) = (0usize, 0u64);
                    while let Some(x) = stack.pop() {
                        verts += 1;
                        degree_sum += st.adj[c * n + x].len() as u64;
                        for i in 0..st.adj[c * n + x].len() {
                            let y = st.adj[c * n + x][i];
                            if st.label[c * n + y] == NONE {
                                st.label[c * n + y] = id;
                                stack.push(y);
                            }
                        }
                    }
                    st.comps[id as usize] = Comp {
                        edges: degree_sum / 2,
                        vertices: verts,
                    };
                    st.size_add(degree_sum / 2);
                }
            }
        }
        st
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn color(&self, e: usize) -> u8 {
        self.colors[e]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn coloring(&self) -> EdgeColoring {
        EdgeColoring::new(self.r, self.colors.clone()).expect("colors stay in range")
    }

    /// Largest monochromatic component edge count.
    pub fn primary(&self) -> u64 {
        self.sizes.keys().next_back().copied().unwrap_or(0)
    }

    pub fn objective(&self) -> Objective {
        let mut profile = Vec::new();
        for (&size, &count) in self.sizes.iter().rev() {
            profile.extend(std::iter::repeat_n(size, count as usize));
        }
        Objective::from_profile(profile)
    }

    /// Moves edge `e` to color `to` and updates the components of both colors.
    pub fn recolor(&mut self, e: usize, to: u8) {
        let from = self.colors[e];
        if from == to {
            return;
        }
        debug_assert!(to >= 1 && to as usize <= self.r);
        let (u, v) = self.g.edges()[e];
        self.remove_edge(from as usize - 1, u, v);
        self.add_edge(to as usize - 1, u, v);
        self.colors[e] = to;
    }

    fn alloc(&mut self, comp: Comp) -> u32 {
        match self.free.pop() {
            Some(id) => {
                self.comps[id as usize] = comp;
                id
            }
            None => {
                self.comps.push(comp);
                (self.comps.len() - 1) as u32
            }
        }
    }

    fn size_add(&mut self, edges: u64) {
        *self.sizes.entry(edges).or_insert(0) += 1;
    }

    fn size_remove(&mut self, edges: u64) {
        let slot = self.sizes.get_mut(&edges).expect("size present");
        *slot -= 1;
        if *slot == 0 {
            self.sizes.remove(&edges);
        }
    }

    fn unlink(list: &mut Vec<usize>, x: usize) {
        let pos = list.iter().position(|&y| y == x).expect("adjacent");
        list.swap_remove(pos);
    }

    fn remove_edge(&mut self, c: usize, u: usize, v: usize) {
        let base = c * self.n;
        Self::unlink(&mut self.adj[base + u], v);
        Self::unlink(&mut self.adj[base + v], u);
        let id = self.label[base + u];
        debug_assert_eq!(id, self.label[base + v]);
        let old = self.comps[id as usize];
        self.size_remove(old.edges);
        let (du, dv) = (self.adj[base + u].len(), self.adj[base + v].len());
        match (du, dv) {
            (0, 0) => {
                self.label[base + u] = NONE;
                self.label[base + v] = NONE;
                self.free.push(id);
            }
            (0, _) | (_, 0) => {
                let leaf = if du == 0 { u } else { v };
                self.label[base + leaf] = NONE;
                let comp = &mut self.comps[id as usize];
                comp.edges -= 1;
                comp.vertices -= 1;
                let edges = comp.edges;
                self.size_add(edges);
            }
            _ => match self.separate(base, u, v) {
                None => {
                    self.comps[id as usize].edges -= 1;
                    self.size_add(old.edges - 1);
                }
                Some(split_off_a) => {
                    let side = if split_off_a {
                        std::mem::take(&mut self.side_a)
                    } else {
                        std::mem::take(&mut self.side_b)
                    };
                    let degree_sum: u64 =
                        side.iter().map(|&x| self.adj[base + x].len() as u64).sum();
                    let split = Comp {
                        edges: degree_sum / 2,
                        vertices: side.len(),
                    };
                    let new_id = self.alloc(split);
                    for &x in &side {
                        self.label[base + x] = new_id;
                    }
                    let rest = Comp {
                        edges: old.edges - 1 - split.edges,
                        vertices: old.vertices - split.vertices,
                    };
                    self.comps[id as usize] = rest;
                    self.size_add(split.edges);
                    self.size_add(rest.edges);
                    if split_off_a {
                        self.side_a = side;
                    } else {
                        self.side_b = side;
                    }
                }
            },
        }
    }

    /// Interleaved searches from `u` and `v` in the color at `base`. Returns
    /// `None` if they meet, otherwise whether the `u` side (`true`) or the `v`
    /// side (`false`) was exhausted first; that side is left in `side_a` or
    /// `side_b`.
    fn separate(&mut self, base: usize, u: usize, v: usize) -> Option<bool> {
        if self.stamp >= u32::MAX - 2 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 0;
        }
        let (ma, mb) = (self.stamp + 1, self.stamp + 2);
        self.stamp += 2;
        self.side_a.clear();
        self.side_b.clear();
        self.side_a.push(u);
        self.side_b.push(v);
        self.mark[u] = ma;
        self.mark[v] = mb;
        let (mut ia, mut ib) = (0usize, 0usize);
        loop {
            if ia == self.side_a.len() {
                return Some(true);
            }
            let x = self.side_a[ia];
            ia += 1;
            for &y in &self.adj[base + x] {
                if self.mark[y] == mb {
                    return None;
                }
                if self.mark[y] != ma {
                    self.mark[y] = ma;
                    self.side_a.push(y);
                }
            }
            if ib == self.side_b.len() {
                return Some(false);
            }
            let x = self.side_b[ib];
            ib += 1;
            for &y in &self.adj[base + x] {
                if self.mark[y] == ma {
                    return None;
                }
                if self.mark[y] != mb {
                    self.mark[y] = mb;
                    self.side_b.push(y);
                }
            }
        }
    }

    fn add_edge(&mut self, c: usize, u: usize, v: usize) {
        let base = c * self.n;
        let (lu, lv) = (self.label[base + u], self.label[base + v]);
        match (lu == NONE, lv == NONE) {
            (true, true) => {
                let id = self.alloc(Comp {
                    edges: 1,
                    vertices: 2,
                });
                self.label[base + u] = id;
                self.label[base + v] = id;
                self.size_add(1);
            }
            (true, false) | (false, true) => {
                let (fresh, id) = if lu == NONE { (u, lv) } else { (v, lu) };
                let comp = &mut self.comps[id as usize];
                let before = comp.edges;
                comp.edges += 1;
                comp.vertices += 1;
                self.label[base + fresh] = id;
                self.size_remove(before);
                self.size_add(before + 1);
            }
            (false, false) if lu == lv => {
                let before = self.comps[lu as usize].edges;
                self.comps[lu as usize].edges += 1;
                self.size_remove(before);
                self.size_add(before + 1);
            }
            (false, false) => {
                let (a, b) = (self.comps[lu as usize], self.comps[lv as usize]);
                let (keep, gone, start) = if a.vertices >= b.vertices {
                    (lu, lv, v)
                } else {
                    (lv, lu, u)
                };
                self.size_remove(a.edges);
                self.size_remove(b.edges);
                // relabel the smaller component before the new edge joins them
                let mut stack = vec![start];
                self.label[base + start] = keep;
                while let Some(x) = stack.pop() {
                    for i in 0..self.adj[base + x].len() {
                        let y = self.adj[base + x][i];
                        if self.label[base + y] == gone {
                            self.label[base + y] = keep;
                            stack.push(y);
                        }
                    }
                }
                let merged = Comp {
                    edges: a.edges + b.edges + 1,
                    vertices: a.vertices + b.vertices,
                };
                self.comps[keep as usize] = merged;
                self.free.push(gone);
                self.size_add(merged.edges);
            }
        }
        self.adj[base + u].push(v);
        self.adj[base + v].push(u);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::objective;
    use crate::random::{sample_gnp, RngSeed};
    use rand::Rng;

    #[test]
    fn tracks_from_scratch_components_under_random_moves() {
        let mut rng = RngSeed::new(17).rng();
        for (n, p, r) in [(12, 0.5, 2), (30, 0.2, 3), (40, 0.08, 4), (8, 1.0, 3)] {
            let g = sample_gnp(n, p, RngSeed::new(n as u64));
            let colors = (0..g.num_edges())
                .map(|_| rng.gen_range(1..=r as u8))
                .collect();
            let coloring = EdgeColoring::new(r, colors).unwrap();
            let mut st = ComponentState::new(&g, &coloring);
            assert_eq!(st.objective(), objective(&g, &coloring).unwrap());
            for _ in 0..500 {
                let e = rng.gen_range(0..g.num_edges());
                st.recolor(e, rng.gen_range(1..=r as u8));
                assert_eq!(st.objective(), objective(&g, &st.coloring()).unwrap());
            }
        }
    }
}
