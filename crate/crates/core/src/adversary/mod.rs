//! Searching for colorings whose largest monochromatic component is small.
//!
//! [`brute_force_optimum`] is exact and only usable on a handful of edges;
//! [`anneal`] scales to thousands of edges using [`ComponentState`].

mod anneal;
mod brute;
pub mod fuzz;
mod state;

use serde::Serialize;

pub use anneal::{anneal, InitStrategy, SearchParams, SearchResult, TraceEntry};
pub use brute::{brute_force_optimum, colorings_with_first_fixed, BruteForceResult};
pub use state::ComponentState;

use crate::error::Result;
use crate::graph::{monochromatic_components, EdgeColoring, Graph};

/// Largest component edge count, then the full descending profile as a
/// lexicographic tie-break. Smaller is better.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Objective {
    pub max_component_edges: u64,
    pub profile: Vec<u64>,
}

impl Objective {
    /// `profile` must be sorted descending.
    pub fn from_profile(profile: Vec<u64>) -> Self {
        debug_assert!(profile.windows(2).all(|w| w[0] >= w[1]));
        Self {
            max_component_edges: profile.first().copied().unwrap_or(0),
            profile,
        }
    }
}

pub fn objective(g: &Graph, coloring: &EdgeColoring) -> Result<Objective> {
    let report = monochromatic_components(g, coloring)?;
    Ok(Objective::from_profile(report.edge_profile()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_examples() {
        let k3 = Graph::complete(3);
        let rainbow = EdgeColoring::new(3, vec![1, 2, 3]).unwrap();
        assert_eq!(
            objective(&k3, &rainbow).unwrap(),
            Objective::from_profile(vec![1, 1, 1])
        );

        let k4 = Graph::complete(4);
        let mono = EdgeColoring::constant(2, 6, 1).unwrap();
        assert_eq!(objective(&k4, &mono).unwrap().profile, vec![6]);

        // perfect matching {01, 23} in color 1, the 4-cycle 0-2-1-3 in color 2
        let colors = k4
            .edges()
            .iter()
            .map(|&e| if e == (0, 1) || e == (2, 3) { 1 } else { 2 })
            .collect();
        let c = EdgeColoring::new(2, colors).unwrap();
        let obj = objective(&k4, &c).unwrap();
        assert_eq!(obj.max_component_edges, 4);
        assert_eq!(obj.profile, vec![4, 1, 1]);
    }

    #[test]
    fn ordering_is_primary_then_profile() {
        let a = Objective::from_profile(vec![4, 1, 1]);
        let b = Objective::from_profile(vec![4, 2]);
        let c = Objective::from_profile(vec![3, 3, 3]);
        assert!(a < b);
        assert!(c < a);
    }
}
