//! Slow, direct reference computations used to cross-check the library.

#![allow(dead_code)]

/// Edge counts of all monochromatic components, by breadth-first search over
/// per-color adjacency lists.
pub fn component_edge_counts(
    n: usize,
    edges: &[(usize, usize)],
    colors: &[u8],
    r: usize,
) -> Vec<(u8, usize, u64)> {
    let mut out = Vec::new();
    for c in 1..=r as u8 {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if colors[i] == c {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] || adj[s].is_empty() {
                continue;
            }
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            let (mut verts, mut deg) = (0usize, 0u64);
            while let Some(x) = queue.pop_front() {
                verts += 1;
                deg += adj[x].len() as u64;
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push((c, verts, deg / 2));
        }
    }
    out
}

pub fn max_component_edges(n: usize, edges: &[(usize, usize)], colors: &[u8], r: usize) -> u64 {
    component_edge_counts(n, edges, colors, r)
        .iter()
        .map(|c| c.2)
        .max()
        .unwrap_or(0)
}

pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Minimum over every r-coloring (no symmetry reduction) of the largest
/// monochromatic component edge count.
pub fn min_max_component(n: usize, edges: &[(usize, usize)], r: usize) -> u64 {
    let m = edges.len();
    let total = (r as u64).pow(m as u32);
    let mut best = u64::MAX;
    let mut colors = vec![0u8; m];
    for code in 0..total {
        let mut x = code;
        for c in colors.iter_mut() {
            *c = (x % r as u64) as u8 + 1;
            x /= r as u64;
        }
        best = best.min(max_component_edges(n, edges, &colors, r));
    }
    best
}

/// `e_M(S)`: unordered pairs inside `s` in different blocks.
pub fn multipartite_within(block: &[usize], s: &[usize]) -> u64 {
    let s: Vec<usize> = dedup(s);
    let mut count = 0;
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            count += (block[a] != block[b]) as u64;
        }
    }
    count
}

/// `e_M(S, T)`: ordered pairs `(a, b)` with `a` in `s`, `b` in `t` in
/// different blocks.
pub fn multipartite_between(block: &[usize], s: &[usize], t: &[usize]) -> u64 {
    let (s, t) = (dedup(s), dedup(t));
    let mut count = 0;
    for &a in &s {
        for &b in &t {
            count += (block[a] != block[b]) as u64;
        }
    }
    count
}

fn dedup(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
