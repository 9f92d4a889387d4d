use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{binomial2, monochromatic_components, EdgeColoring, Graph};
use crate::ratio::{fmt, int, ratio, Rational};

/// Optional inputs to [`verdict_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictContext {
    /// Minimum-degree slack `beta` of the host graph, enabling the
    /// minimum-degree thresholds.
    pub beta: Option<Rational>,
    /// `eps` of the random-graph vertex bound `(1 - eps) n / (r - 1)`.
    pub vertex_eps: Rational,
}

impl Default for VerdictContext {
    fn default() -> Self {
        Self {
            beta: None,
            vertex_eps: ratio(1, 10),
        }
    }
}

/// One named bound: `pass` iff `measured >= required`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Threshold {
    /// what `measured` counts: `z`, `edges` or `vertices`
    pub basis: &'static str,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub measured: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub required: Rational,
    pub pass: bool,
    /// Enforced thresholds are theorems for this host and decide
    /// [`BoundVerdict::pass`]; the rest are reported only.
    pub enforced: bool,
}

impl Threshold {
    fn new(basis: &'static str, measured: Rational, required: Rational, enforced: bool) -> Self {
        Self {
            basis,
            pass: measured >= required,
            measured,
            required,
            enforced,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub n: usize,
    pub r: usize,
    pub edges: u64,
    pub largest_component_edges: u64,
    pub largest_component_vertices: usize,
    pub max_component_vertices: usize,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub z: Rational,
    pub thresholds: BTreeMap<&'static str, Threshold>,
}

impl BoundVerdict {
    pub fn passes(&self, name: &str) -> Option<bool> {
        self.thresholds.get(name).map(|t| t.pass)
    }

    /// All enforced thresholds pass.
    pub fn pass(&self) -> bool {
        self.thresholds.values().all(|t| t.pass || !t.enforced)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Threshold)> {
        self.thresholds
            .iter()
            .find(|(_, t)| t.enforced && !t.pass)
            .map(|(k, t)| (*k, t))
    }
}

pub const PROVEN: &str = "proven_edge_fraction";
pub const CONJECTURED: &str = "conjectured_edge_fraction";
pub const VERTEX_COMPLETE: &str = "vertex_complete";
pub const VERTEX_RANDOM: &str = "vertex_random";
pub const MIN_DEGREE_DENSE: &str = "min_degree_dense";
pub const MIN_DEGREE_THREE_COLOR: &str = "min_degree_three_color";

/// Evaluates the largest monochromatic component against every known bound.
///
/// - `proven_edge_fraction`: `z >= 1 / (r^2 - r + 5/4)`, enforced.
/// - `conjectured_edge_fraction`: `z >= 1 / (r (r - 1))`, reported.
/// - `vertex_complete`: some component has `>= n / (r - 1)` vertices,
///   enforced when the host is complete.
/// - `vertex_random`: `>= (1 - eps) n / (r - 1)` vertices, reported.
/// - `min_degree_dense` (`r >= 4`, needs `beta < 1/(r-1)`): largest component
///   has `>= (1 - beta)^2 / (r^2 - r + 5/4) * C(n, 2)` edges, enforced.
/// - `min_degree_three_color` (`r = 3`, needs `beta <= 1/25`): `z >= 1/6`,
///   enforced.
pub fn verdict_bounds(
    g: &Graph,
    coloring: &EdgeColoring,
    ctx: &VerdictContext,
) -> Result<BoundVerdict> {
    let report = monochromatic_components(g, coloring)?;
    let r = coloring.r();
    if r < 2 {
        return Err(Error::Domain(format!("bounds need r >= 2, got {r}")));
    }
    let z = report.z().ok_or(Error::NoEdges)?;
    let largest = report.largest.expect("graph has edges");
    let n = g.n() as u64;
    let ri = r as i128;
    let max_vertices = report.max_component_vertices();
    let complete = g.num_edges() as u64 == binomial2(n);

    let mut thresholds = BTreeMap::new();
    thresholds.insert(
        PROVEN,
        Threshold::new("z", z, ratio(4, 4 * ri * ri - 4 * ri + 5), true),
    );
    thresholds.insert(
        CONJECTURED,
        Threshold::new("z", z, ratio(1, ri * (ri - 1)), false),
    );
    let vertices = int(max_vertices as u64);
    let vertex_share = int(n) / int(r as u64 - 1);
    thresholds.insert(
        VERTEX_COMPLETE,
        Threshold::new("vertices", vertices, vertex_share, complete),
    );
    thresholds.insert(
        VERTEX_RANDOM,
        Threshold::new(
            "vertices",
            vertices,
            (int(1) - ctx.vertex_eps) * vertex_share,
            false,
        ),
    );

    if let Some(beta) = ctx.beta {
        if beta < int(0) {
            return Err(Error::Domain(format!(
                "beta must be nonnegative, got {}",
                fmt(&beta)
            )));
        }
        match r {
            3 => {
                if beta > ratio(1, 25) {
                    return Err(Error::Beta3ColorOutOfRange(fmt(&beta)));
                }
                thresholds.insert(
                    MIN_DEGREE_THREE_COLOR,
                    Threshold::new("z", z, ratio(1, 6), true),
                );
            }
            r if r >= 4 => {
                if beta >= ratio(1, ri - 1) {
                    return Err(Error::BetaOutOfRange {
                        r,
                        beta: fmt(&beta),
                    });
                }
                let keep = int(1) - beta;
                let required = keep * keep * ratio(4, 4 * ri * ri - 4 * ri + 5) * int(binomial2(n));
                thresholds.insert(
                    MIN_DEGREE_DENSE,
                    Threshold::new("edges", int(largest.edges), required, true),
                );
            }
            _ => {}
        }
    }

    Ok(BoundVerdict {
        n: g.n(),
        r,
        edges: g.num_edges() as u64,
        largest_component_edges: largest.edges,
        largest_component_vertices: largest.vertices,
        max_component_vertices: max_vertices,
        z,
        thresholds,
    })
}
