//! Random colorings with varied structure, for stress-testing bounds.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::construct::gyarfas_coloring;
use crate::graph::{EdgeColoring, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzKind {
    /// Independent uniform colors.
    Uniform,
    /// Independent colors with random skewed weights.
    Biased,
    /// Color determined by a random table over random vertex labels.
    VertexLabels,
    /// Cluster construction with permuted vertices and colors plus a few flips;
    /// falls back to `Uniform` when the construction does not exist for `r`.
    PermutedGyarfas,
}

impl FuzzKind {
    pub const ALL: [FuzzKind; 4] = [
        Self::Uniform,
        Self::Biased,
        Self::VertexLabels,
        Self::PermutedGyarfas,
    ];
}

pub fn uniform_coloring<R: Rng + ?Sized>(m: usize, r: usize, rng: &mut R) -> EdgeColoring {
    let colors = (0..m).map(|_| rng.gen_range(1..=r as u8)).collect();
    EdgeColoring::new(r, colors).expect("colors in range")
}

pub fn fuzz_coloring<R: Rng + ?Sized>(
    g: &Graph,
    r: usize,
    kind: FuzzKind,
    rng: &mut R,
) -> EdgeColoring {
    assert!((1..=EdgeColoring::MAX_COLORS).contains(&r));
    let m = g.num_edges();
    match kind {
        FuzzKind::Uniform => uniform_coloring(m, r, rng),
        FuzzKind::Biased => {
            let weights: Vec<f64> = (0..r).map(|_| rng.gen::<f64>().powi(3) + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            let colors = (0..m)
                .map(|_| {
                    let mut x = rng.gen::<f64>() * total;
                    for (c, w) in weights.iter().enumerate() {
                        if x < *w {
                            return c as u8 + 1;
                        }
                        x -= w;
                    }
                    r as u8
                })
                .collect();
            EdgeColoring::new(r, colors).expect("colors in range")
        }
        FuzzKind::VertexLabels => {
            let k = rng.gen_range(1..=g.n().clamp(1, 8));
            let labels: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..k)).collect();
            let mut table = vec![0u8; k * k];
            for a in 0..k {
                for b in a..k {
                    let c = rng.gen_range(1..=r as u8);
                    table[a * k + b] = c;
                    table[b * k + a] = c;
                }
            }
            let colors = g
                .edges()
                .iter()
                .map(|&(u, v)| table[labels[u] * k + labels[v]])
                .collect();
            EdgeColoring::new(r, colors).expect("colors in range")
        }
        FuzzKind::PermutedGyarfas => {
            let Ok(base) = gyarfas_coloring(g.n(), r) else {
                return uniform_coloring(m, r, rng);
            };
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(rng);
            let mut relabel: Vec<u8> = (1..=r as u8).collect();
            relabel.shuffle(rng);
            let flip = rng.gen::<f64>() * 0.05;
            let colors = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    if rng.gen::<f64>() < flip {
                        rng.gen_range(1..=r as u8)
                    } else {
                        relabel[base.color_of(perm[u], perm[v]) as usize - 1]
                    }
                })
                .collect();
            EdgeColoring::new(r, colors).expect("colors in range")
        }
    }
}
