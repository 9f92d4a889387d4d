//! Construction, analysis, and adversarial stress-testing of r-edge-colorings
//! of complete graphs, Erdős–Rényi random graphs, and high-minimum-degree
//! graphs, measured by the number of edges in the largest monochromatic
//! connected component.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: prime-power finite fields and affine planes.
//! - [`graph`]: graphs, edge colorings, complete multipartite structures,
//!   monochromatic component reports and the text file format.
//! - [`construct`]: Gyárfás's affine-plane coloring of `K_n` and its
//!   restriction to subgraphs.
//! - [`random`]: seeded samplers and Chernoff tail bounds.
//! - [`verify`]: exact and seeded statistical checkers plus bound verdicts.
//! - [`adversary`]: brute-force and simulated-annealing searches for colorings
//!   with small monochromatic components.
//! - [`cli`]: the `monocomp` command-line front end.

pub mod adversary;
pub mod cli;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod random;
pub mod ratio;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, ComponentReport, EdgeColoring, Graph, PartStructure};
pub use ratio::Rational;
