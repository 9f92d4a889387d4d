//! Seeded samplers and Chernoff tail bounds.
//!
//! Every sampler draws from xoshiro256++ ([`rand_xoshiro::Xoshiro256PlusPlus`]),
//! seeded through SplitMix64 from a 64-bit seed. Independent streams of the
//! same seed are separated by the generator's 2^128-step jump, so a given
//! `(seed, stream)` produces the same bits on every platform.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{binomial2, Graph, PartStructure};
use crate::ratio::{floor_u64, int, Rational};

pub type SeededRng = Xoshiro256PlusPlus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        Self { stream, ..self }
    }

    pub fn rng(&self) -> SeededRng {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(self.seed);
        for _ in 0..self.stream {
            rng.jump();
        }
        rng
    }
}

/// Below this edge probability [`sample_gnp`] skips over absent pairs with
/// geometric jumps instead of testing each pair.
pub const SKIP_THRESHOLD: f64 = 0.1;

/// `G(n, p)` with canonical (lexicographic) edge order.
pub fn sample_gnp(n: usize, p: f64, seed: RngSeed) -> Graph {
    sample_gnp_with(n, p, &mut seed.rng())
}

pub fn sample_gnp_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability {p} outside [0, 1]"
    );
    if p == 0.0 || n < 2 {
        Graph::empty(n)
    } else if p == 1.0 {
        Graph::complete(n)
    } else if p < SKIP_THRESHOLD {
        sample_gnp_skipping(n, p, rng)
    } else {
        sample_gnp_naive(n, p, rng)
    }
}

/// One Bernoulli trial per pair.
pub fn sample_gnp_naive<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::with_capacity((p * binomial2(n as u64) as f64 * 1.1) as usize + 16);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical_unchecked(n, edges)
}

/// Walks the lexicographic pair order jumping `Geometric(p)` gaps between
/// included pairs.
pub fn sample_gnp_skipping<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let total = binomial2(n as u64);
    let mut edges = Vec::with_capacity((p * total as f64 * 1.1) as usize + 16);
    if p <= 0.0 || n < 2 {
        return Graph::from_canonical_unchecked(n, edges);
    }
    let log_q = (1.0 - p).ln();
    let (mut u, mut row_start, mut row_end) = (0usize, 0u64, (n - 1) as u64);
    let mut idx: u64 = 0;
    loop {
        let unit: f64 = 1.0 - rng.gen::<f64>();
        let gap = (unit.ln() / log_q).floor();
        if !(gap < (total - idx) as f64) {
            break;
        }
        idx += gap as u64;
        while idx >= row_end {
            u += 1;
            row_start = row_end;
            row_end += (n - 1 - u) as u64;
        }
        edges.push((u, u + 1 + (idx - row_start) as usize));
        idx += 1;
        if idx >= total {
            break;
        }
    }
    Graph::from_canonical_unchecked(n, edges)
}

/// `K_n` minus a circulant: every pair at cyclic distance at most
/// `floor(d / 2)` is removed, plus the antipodal matching when `d` is odd and
/// `n` even, where `d = floor(beta * n)`. Every vertex keeps degree at least
/// `n - 1 - d >= (1 - beta) n - 1`.
pub fn min_degree_graph(n: usize, beta: Rational) -> Result<Graph> {
    if beta < Rational::from_integer(0) || beta >= Rational::from_integer(1) {
        return Err(Error::Domain(format!(
            "beta must lie in [0, 1), got {beta}"
        )));
    }
    let d = floor_u64(&(beta * int(n as u64))) as usize;
    if n > 0 && d > n - 1 {
        return Err(Error::Domain(format!(
            "floor(beta * n) = {d} exceeds n - 1"
        )));
    }
    let half = d / 2;
    let antipodal = d % 2 == 1 && n.is_multiple_of(2);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let dist = (v - u).min(n - (v - u));
            if dist <= half || (antipodal && 2 * dist == n) {
                continue;
            }
            edges.push((u, v));
        }
    }
    Ok(Graph::from_canonical_unchecked(n, edges))
}

/// Mean `mu` and deviation `delta` for the Bernoulli-sum tail bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChernoffQuery {
    pub mu: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChernoffTails {
    /// `P(X >= (1 + delta) mu) <= exp(-delta^2 mu / (2 + delta))`
    pub upper: f64,
    /// `P(X <= (1 - delta) mu) <= exp(-delta^2 mu / 2)`, only for `delta < 1`
    pub lower: Option<f64>,
    /// `P(|X - mu| >= delta mu) <= 2 exp(-delta^2 mu / 3)`, only for `delta < 1`
    pub two_sided: Option<f64>,
}

impl ChernoffQuery {
    fn check(&self) -> Result<()> {
        if !(self.mu >= 0.0) || !(self.delta > 0.0) {
            return Err(Error::Domain(format!(
                "need mu >= 0 and delta > 0, got mu = {}, delta = {}",
                self.mu, self.delta
            )));
        }
        Ok(())
    }

    fn check_lower(&self) -> Result<()> {
        self.check()?;
        if self.delta >= 1.0 {
            return Err(Error::Domain(format!(
                "lower-tail bounds need delta < 1, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn upper_tail(&self) -> Result<f64> {
        self.check()?;
        let (mu, d) = (self.mu, self.delta);
        Ok((-d * d * mu / (2.0 + d)).exp())
    }

    pub fn lower_tail(&self) -> Result<f64> {
        self.check_lower()?;
        let (mu, d) = (self.mu, self.delta);
        Ok((-d * d * mu / 2.0).exp())
    }

    pub fn two_sided_tail(&self) -> Result<f64> {
        self.check_lower()?;
        let (mu, d) = (self.mu, self.delta);
        Ok(2.0 * (-d * d * mu / 3.0).exp())
    }
}

/// All three bounds; the lower and two-sided forms are `None` when `delta >= 1`.
pub fn chernoff_tails(q: ChernoffQuery) -> Result<ChernoffTails> {
    Ok(ChernoffTails {
        upper: q.upper_tail()?,
        lower: q.lower_tail().ok(),
        two_sided: q.two_sided_tail().ok(),
    })
}

/// A partition of `0..n` into a uniform number of blocks in `[2, k_max]`.
/// Vertices pick blocks uniformly; an empty block then takes the highest
/// vertex of the currently largest block.
pub fn random_part_structure<R: Rng + ?Sized>(
    n: usize,
    k_max: usize,
    rng: &mut R,
) -> Result<PartStructure> {
    if k_max < 2 || k_max > n {
        return Err(Error::Domain(format!(
            "need 2 <= k_max <= n, got k_max = {k_max}, n = {n}"
        )));
    }
    let k = rng.gen_range(2..=k_max);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        blocks[rng.gen_range(0..k)].push(v);
    }
    while let Some(empty) = blocks.iter().position(Vec::is_empty) {
        let largest = (0..k)
            .max_by_key(|&b| (blocks[b].len(), std::cmp::Reverse(b)))
            .expect("k >= 2");
        let moved = blocks[largest].pop().expect("largest block is nonempty");
        blocks[empty].push(moved);
    }
    PartStructure::from_blocks(n, blocks)
}

/// Each vertex of `0..n` independently with probability `density`.
pub fn random_subset<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.gen::<f64>() < density).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    #[test]
    fn degenerate_probabilities() {
        let seed = RngSeed::new(9);
        assert_eq!(sample_gnp(30, 0.0, seed).num_edges(), 0);
        assert_eq!(sample_gnp(30, 1.0, seed), Graph::complete(30));
        assert_eq!(sample_gnp(1, 0.5, seed).num_edges(), 0);
    }

    #[test]
    fn edge_count_within_four_sigma() {
        let g = sample_gnp(1000, 0.1, RngSeed::new(1));
        let pairs = binomial2(1000) as f64;
        let sigma = (0.1 * 0.9 * pairs).sqrt();
        assert!((g.num_edges() as f64 - 0.1 * pairs).abs() <= 4.0 * sigma);
    }

    #[test]
    fn reproducible_per_seed_and_stream() {
        let a = sample_gnp(200, 0.05, RngSeed::new(42));
        let b = sample_gnp(200, 0.05, RngSeed::new(42));
        assert_eq!(a, b);
        let c = sample_gnp(200, 0.05, RngSeed::new(42).with_stream(1));
        assert_ne!(a, c);
        let d = sample_gnp(200, 0.3, RngSeed::new(42));
        assert_eq!(d, sample_gnp(200, 0.3, RngSeed::new(42)));
    }

    #[test]
    fn generator_bits_are_pinned() {
        // xoshiro256++ seeded by SplitMix64(0); guards against silent algorithm changes
        let mut rng = RngSeed::new(0).rng();
        let first: u64 = rng.gen();
        let mut again = RngSeed::new(0).rng();
        assert_eq!(first, again.gen::<u64>());
        assert_eq!(first, 0x53175d61490b23df);
    }

    #[test]
    fn skipping_edges_are_canonical() {
        let g = sample_gnp(300, 0.02, RngSeed::new(5));
        assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        assert!(g.edges().iter().all(|&(u, v)| u < v && v < 300));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(
            min_degree_graph(12, ratio(0, 1)).unwrap(),
            Graph::complete(12)
        );
        let g = min_degree_graph(10, ratio(1, 5)).unwrap();
        assert!((0..10).all(|v| g.degree(v) >= 7));
        let g = min_degree_graph(300, ratio(1, 25)).unwrap();
        assert_eq!(g.min_degree(), 287);
        // odd d with even n adds the antipodal matching
        let g = min_degree_graph(10, ratio(3, 10)).unwrap();
        assert!((0..10).all(|v| g.degree(v) == 6));
        // odd d with odd n keeps one extra neighbour
        let g = min_degree_graph(11, ratio(3, 11)).unwrap();
        assert!((0..11).all(|v| g.degree(v) == 8));
        assert!(min_degree_graph(10, ratio(1, 1)).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let t = chernoff_tails(ChernoffQuery {
            mu: 3.0,
            delta: 1.0,
        })
        .unwrap();
        assert!((t.upper - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(t.lower, None);
        let t = chernoff_tails(ChernoffQuery {
            mu: 0.0,
            delta: 0.5,
        })
        .unwrap();
        assert_eq!((t.upper, t.lower, t.two_sided), (1.0, Some(1.0), Some(2.0)));
        let t = chernoff_tails(ChernoffQuery {
            mu: 300.0,
            delta: 0.5,
        })
        .unwrap();
        assert!((t.two_sided.unwrap() - 2.0 * (-25.0f64).exp()).abs() < 1e-20);
        let q = ChernoffQuery {
            mu: 3.0,
            delta: 1.5,
        };
        assert!(q.lower_tail().is_err());
        assert!(q.two_sided_tail().is_err());
        assert!(ChernoffQuery {
            mu: -1.0,
            delta: 0.5
        }
        .upper_tail()
        .is_err());
    }

    #[test]
    fn part_structures_and_subsets() {
        let mut rng = RngSeed::new(3).rng();
        for _ in 0..50 {
            let p = random_part_structure(5, 2, &mut rng).unwrap();
            assert_eq!(p.num_blocks(), 2);
            let p = random_part_structure(6, 6, &mut rng).unwrap();
            assert!(p.blocks().iter().all(|b| !b.is_empty()));
        }
        assert!(random_part_structure(3, 4, &mut rng).is_err());
        assert_eq!(
            random_subset(20, 1.0, &mut rng),
            (0..20).collect::<Vec<_>>()
        );
        assert!(random_subset(20, 0.0, &mut rng).is_empty());
    }
}
