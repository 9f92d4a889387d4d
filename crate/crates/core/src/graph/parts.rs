use super::{binomial2, Graph};
use crate::error::{Error, Result};

/// Largest vertex count [`materialize_multipartite`] will build.
pub const MATERIALIZE_LIMIT: usize = 5000;

/// A partition of `0..n` into at least two nonempty blocks. It stands for the
/// complete multipartite graph `M` whose edges join distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartStructure {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl PartStructure {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least 2 blocks, got {}",
                blocks.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in more than one block"
                    )));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is in no block"
            )));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        Ok(Self { block_of, blocks })
    }

    /// Builds from a label per vertex; blocks are numbered by first appearance.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let b = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
        Self::from_blocks(labels.len(), blocks)
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `e(M)` without building `M`.
    pub fn num_edges(&self) -> u64 {
        let n = self.n() as u64;
        let within: u64 = self.blocks.iter().map(|b| binomial2(b.len() as u64)).sum();
        binomial2(n) - within
    }

    pub fn crosses(&self, u: usize, v: usize) -> bool {
        self.block_of[u] != self.block_of[v]
    }

    /// Per-block sizes of `set`, deduplicated. Errors on out-of-range ids.
    fn block_profile(&self, set: &[usize]) -> Result<(u64, Vec<u64>)> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut per_block = vec![0u64; self.blocks.len()];
        let mut size = 0;
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !std::mem::replace(&mut seen[v], true) {
                per_block[self.block_of[v]] += 1;
                size += 1;
            }
        }
        Ok((size, per_block))
    }
}

/// `e_M(S)`, `e_M(T)` and the ordered `e_M(S, T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipartiteCounts {
    pub within_s: u64,
    pub within_t: u64,
    pub between: u64,
}

/// Edge counts in the complete multipartite graph of `parts`, computed from
/// block intersection sizes alone.
pub fn multipartite_counts(
    parts: &PartStructure,
    s: &[usize],
    t: &[usize],
) -> Result<MultipartiteCounts> {
    let (s_len, s_blocks) = parts.block_profile(s)?;
    let (t_len, t_blocks) = parts.block_profile(t)?;
    let within =
        |len: u64, blocks: &[u64]| (len * len - blocks.iter().map(|x| x * x).sum::<u64>()) / 2;
    let same: u64 = s_blocks.iter().zip(&t_blocks).map(|(a, b)| a * b).sum();
    Ok(MultipartiteCounts {
        within_s: within(s_len, &s_blocks),
        within_t: within(t_len, &t_blocks),
        between: s_len * t_len - same,
    })
}

pub fn materialize_multipartite(parts: &PartStructure) -> Result<Graph> {
    let n = parts.n();
    if n > MATERIALIZE_LIMIT {
        return Err(Error::TooLarge {
            what: "multipartite graph",
            size: n,
            limit: MATERIALIZE_LIMIT,
        });
    }
    let mut edges = Vec::with_capacity(parts.num_edges() as usize);
    for u in 0..n {
        for v in u + 1..n {
            if parts.crosses(u, v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_canonical_unchecked(n, edges))
}

/// `G ∩ M`: `g` with every edge inside a block removed.
pub fn intersect_multipartite(g: &Graph, parts: &PartStructure) -> Result<Graph> {
    if parts.n() != g.n() {
        return Err(Error::VertexCountMismatch {
            expected: g.n(),
            found: parts.n(),
        });
    }
    Ok(g.filter_edges(|_, (u, v)| parts.crosses(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(n: usize, blocks: &[&[usize]]) -> PartStructure {
        PartStructure::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(PartStructure::from_blocks(3, vec![vec![0, 1, 2]]).is_err());
        assert!(PartStructure::from_blocks(3, vec![vec![0, 1], vec![]]).is_err());
        assert!(PartStructure::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(PartStructure::from_blocks(3, vec![vec![0], vec![1]]).is_err());
        assert!(PartStructure::from_blocks(3, vec![vec![0], vec![1, 5]]).is_err());
        let p = PartStructure::from_labels(&[7, 3, 7, 9]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn counts_on_k22() {
        let p = parts(4, &[&[0, 1], &[2, 3]]);
        let all = [0, 1, 2, 3];
        let c = multipartite_counts(&p, &all, &all).unwrap();
        assert_eq!((c.within_s, c.between), (4, 8));
        assert_eq!(multipartite_counts(&p, &[0, 1], &all).unwrap().within_s, 0);
    }

    #[test]
    fn counts_match_materialized_graph() {
        let p = parts(6, &[&[0, 1, 2], &[3, 4], &[5]]);
        let s = [0, 3, 5];
        let c = multipartite_counts(&p, &s, &s).unwrap();
        assert_eq!((c.within_s, c.between), (3, 6));
        let m = materialize_multipartite(&p).unwrap();
        assert_eq!(m.count_edges_within(&s).unwrap(), 3);
        assert_eq!(m.count_ordered_between(&s, &s).unwrap(), 6);
        assert_eq!(m.num_edges() as u64, p.num_edges());
    }

    #[test]
    fn materialize_small_cases() {
        let m = materialize_multipartite(&parts(2, &[&[0], &[1]])).unwrap();
        assert_eq!(m.edges(), &[(0, 1)]);
        let m = materialize_multipartite(&parts(3, &[&[0, 1], &[2]])).unwrap();
        assert_eq!(m.edges(), &[(0, 2), (1, 2)]);
        let singletons: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        let m =
            materialize_multipartite(&PartStructure::from_blocks(5, singletons).unwrap()).unwrap();
        assert_eq!(m, Graph::complete(5));
        let big =
            PartStructure::from_labels(&(0..5001).map(|v| v % 2).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            materialize_multipartite(&big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn intersect_removes_intra_block_edges() {
        let k4 = Graph::complete(4);
        let g = intersect_multipartite(&k4, &parts(4, &[&[0, 1], &[2, 3]])).unwrap();
        assert_eq!(g.num_edges(), 4);
        let singletons: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        let same = intersect_multipartite(&k4, &PartStructure::from_blocks(4, singletons).unwrap())
            .unwrap();
        assert_eq!(same, k4);
        // a triangle on {0,1,2} inside one block disappears, the pendant edge 2-3 stays
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let cut = intersect_multipartite(&g, &parts(4, &[&[0, 1, 2], &[3]])).unwrap();
        assert_eq!(cut.edges(), &[(2, 3)]);
    }
}
