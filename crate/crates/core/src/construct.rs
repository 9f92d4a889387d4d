//! Gyárfás's affine-plane coloring of `K_n`.
//!
//! Vertices are split into `(r-1)^2` contiguous, balanced clusters, one per
//! point of the affine plane of order `r - 1`. An edge between two clusters
//! gets the color of the parallel class of the line through their points;
//! edges inside a cluster are colored round-robin so each cluster carries
//! every color equally often (within one).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{affine_plane_of_order, factor_prime_power, AffinePlane};
use crate::graph::{EdgeColoring, Graph};
use crate::ratio::{ratio, Rational};

#[derive(Debug, Clone)]
pub struct GyarfasColoring {
    pub n: usize,
    pub r: usize,
    plane: AffinePlane,
    /// first vertex of each cluster, plus `n` as a sentinel
    cluster_start: Vec<usize>,
    cluster_of: Vec<usize>,
    line_through: Vec<usize>,
    class_of_line: Vec<usize>,
    coloring: EdgeColoring,
}

impl GyarfasColoring {
    pub fn plane(&self) -> &AffinePlane {
        &self.plane
    }

    pub fn num_clusters(&self) -> usize {
        self.cluster_start.len() - 1
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Clusters map to plane points by id.
    pub fn point_of(&self, cluster: usize) -> usize {
        cluster
    }

    pub fn cluster(&self, c: usize) -> std::ops::Range<usize> {
        self.cluster_start[c]..self.cluster_start[c + 1]
    }

    /// Coloring of `K_n` in the canonical edge order of [`Graph::complete`].
    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    /// Color of the pair `{u, v}` of `K_n`.
    pub fn color_of(&self, u: usize, v: usize) -> u8 {
        let (u, v) = (u.min(v), u.max(v));
        let (cu, cv) = (self.cluster_of[u], self.cluster_of[v]);
        if cu != cv {
            let q2 = self.plane.num_points();
            let line = self.line_through[self.point_of(cu) * q2 + self.point_of(cv)];
            return (self.class_of_line[line] + 1) as u8;
        }
        let lo = self.cluster_start[cu];
        let size = self.cluster_start[cu + 1] - lo;
        let (a, b) = (u - lo, v - lo);
        let rank = a * (2 * size - a - 1) / 2 + (b - a - 1);
        ((rank + cu % self.r) % self.r + 1) as u8
    }
}

pub fn gyarfas_coloring(n: usize, r: usize) -> Result<GyarfasColoring> {
    if r < 3 {
        return Err(Error::UnsupportedR(r));
    }
    let q = r - 1;
    let pp = factor_prime_power(q as u64).map_err(|_| Error::UnsupportedR(r))?;
    let plane = affine_plane_of_order(pp.q).map_err(|_| Error::UnsupportedR(r))?;
    let k = q * q;
    if n < k {
        return Err(Error::TooSmallN { n, r, need: k });
    }
    let cluster_of: Vec<usize> = (0..n).map(|v| v * k / n).collect();
    let mut cluster_start = vec![0usize; k + 1];
    for c in 0..k {
        cluster_start[c + 1] = cluster_start[c] + cluster_of.iter().filter(|&&x| x == c).count();
    }
    let line_through = plane.line_through_table();
    let class_of_line = plane.class_of_line();
    let mut out = GyarfasColoring {
        n,
        r,
        plane,
        cluster_start,
        cluster_of,
        line_through,
        class_of_line,
        coloring: EdgeColoring::new(r, Vec::new())?,
    };
    let mut colors = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            colors.push(out.color_of(u, v));
        }
    }
    out.coloring = EdgeColoring::new(r, colors)?;
    Ok(out)
}

/// Restricts the `K_n` coloring to the edges of `g`.
pub fn induced_coloring(base: &GyarfasColoring, g: &Graph) -> Result<EdgeColoring> {
    if g.n() != base.n {
        return Err(Error::VertexCountMismatch {
            expected: base.n,
            found: g.n(),
        });
    }
    let colors = g
        .edges()
        .iter()
        .map(|&(u, v)| base.color_of(u, v))
        .collect();
    EdgeColoring::new(base.r, colors)
}

/// Reference fractions for `r` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedFractions {
    /// `1 / (r(r-1))`, the conjectured edge fraction, tight for the construction.
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub conjectured: Rational,
    /// `1 / (r^2 - r + 5/4)`, the proven edge fraction.
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub proven: Rational,
    /// `1 / (r - 1)`, the vertex fraction.
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub vertex: Rational,
}

pub fn predicted_fractions(r: usize) -> Result<PredictedFractions> {
    if r < 2 {
        return Err(Error::Domain(format!("need r >= 2, got {r}")));
    }
    let r = r as i128;
    Ok(PredictedFractions {
        conjectured: ratio(1, r * (r - 1)),
        proven: ratio(4, 4 * r * r - 4 * r + 5),
        vertex: ratio(1, r - 1),
    })
}
