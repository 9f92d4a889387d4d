use serde::Serialize;

use super::Objective;
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceResult {
    pub objective: Objective,
    #[serde(serialize_with = "serialize_colors")]
    pub witness: EdgeColoring,
    /// Complete colorings evaluated (pruned subtrees are not counted).
    pub evaluated: u64,
}

fn serialize_colors<S: serde::Serializer>(
    c: &EdgeColoring,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.colors())
}

/// Number of colorings with the first edge fixed to color 1, or `None` on
/// overflow.
fn reduced_count(m: usize, r: usize) -> Option<u128> {
    (r as u128).checked_pow(m.saturating_sub(1) as u32)
}

/// Union-find without path compression so unions can be undone in LIFO order.
struct RollbackUf {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<u64>,
    log: Vec<Option<(usize, usize)>>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Adds an edge and returns the edge count of its component.
    fn add(&mut self, u: usize, v: usize) -> u64 {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            self.edges[a] += 1;
            self.log.push(Some((a, a)));
            return self.edges[a];
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.edges[a] += self.edges[b] + 1;
        self.log.push(Some((a, b)));
        self.edges[a]
    }

    fn undo(&mut self) {
        match self.log.pop().flatten() {
            Some((a, b)) if a == b => self.edges[a] -= 1,
            Some((a, b)) => {
                self.parent[b] = b;
                self.size[a] -= self.size[b];
                self.edges[a] -= self.edges[b] + 1;
            }
            None => unreachable!("undo without add"),
        }
    }

    fn profile_into(&self, out: &mut Vec<u64>) {
        for v in 0..self.parent.len() {
            if self.parent[v] == v && self.edges[v] > 0 {
                out.push(self.edges[v]);
            }
        }
    }
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    r: usize,
    ufs: Vec<RollbackUf>,
    colors: Vec<u8>,
    best: Option<(Objective, Vec<u8>)>,
    evaluated: u64,
    scratch: Vec<u64>,
}

impl Search<'_> {
    fn go(&mut self, i: usize, current_max: u64) {
        if let Some((best, _)) = &self.best {
            if current_max > best.max_component_edges {
                return;
            }
        }
        if i == self.edges.len() {
            self.evaluated += 1;
            self.scratch.clear();
            for uf in &self.ufs {
                uf.profile_into(&mut self.scratch);
            }
            self.scratch.sort_unstable_by(|a, b| b.cmp(a));
            let obj = Objective::from_profile(self.scratch.clone());
            if self.best.as_ref().is_none_or(|(b, _)| obj < *b) {
                self.best = Some((obj, self.colors.clone()));
            }
            return;
        }
        let (u, v) = self.edges[i];
        let top = if i == 0 { 1 } else { self.r };
        for c in 0..top {
            let size = self.ufs[c].add(u, v);
            self.colors[i] = c as u8 + 1;
            self.go(i + 1, current_max.max(size));
            self.ufs[c].undo();
        }
    }
}

/// Exact minimum of [`super::objective`] over all `r`-colorings of `g`.
///
/// The first edge is fixed to color 1, so `r^(e(g) - 1)` colorings are
/// enumerated at most; branches whose partial maximum already exceeds the best
/// complete maximum are cut.
pub fn brute_force_optimum(g: &Graph, r: usize, budget: u128) -> Result<BruteForceResult> {
    if r == 0 || r > EdgeColoring::MAX_COLORS {
        return Err(Error::Domain(format!(
            "color count {r} outside 1..={}",
            EdgeColoring::MAX_COLORS
        )));
    }
    let m = g.num_edges();
    let required = reduced_count(m, r).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut search = Search {
        edges: g.edges(),
        r,
        ufs: (0..r).map(|_| RollbackUf::new(g.n())).collect(),
        colors: vec![1; m],
        best: None,
        evaluated: 0,
        scratch: Vec::new(),
    };
    search.go(0, 0);
    let (objective, colors) = search.best.expect("at least one coloring");
    Ok(BruteForceResult {
        objective,
        witness: EdgeColoring::new(r, colors)?,
        evaluated: search.evaluated,
    })
}

/// All `r`-colorings of `m` edges with edge 0 colored 1, in lexicographic
/// order of the color vector.
pub fn colorings_with_first_fixed(
    m: usize,
    r: usize,
    budget: u128,
) -> Result<impl Iterator<Item = EdgeColoring>> {
    if r == 0 || r > EdgeColoring::MAX_COLORS {
        return Err(Error::Domain(format!(
            "color count {r} outside 1..={}",
            EdgeColoring::MAX_COLORS
        )));
    }
    let required = reduced_count(m, r).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut next = Some(vec![1u8; m]);
    Ok(std::iter::from_fn(move || {
        let out = next.take()?;
        let mut succ = out.clone();
        let mut i = m;
        while i > 1 {
            i -= 1;
            if (succ[i] as usize) < r {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(EdgeColoring::new(r, out).expect("colors in range"))
    }))
}
