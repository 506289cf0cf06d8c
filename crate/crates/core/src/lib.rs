//! Detection and extraction of color-constrained temporal paths.
//!
//! A temporal graph carries a timestamp on every edge; a temporal path visits
//! distinct vertices over strictly increasing timestamps. Given a vertex
//! coloring and a color multiset, the engine decides whether some temporal
//! path realizes the multiset by evaluating a walk-generating polynomial at
//! random points of GF(2^b) and sieving out non-multilinear terms.

pub mod bench;
pub mod cli;
pub mod fixtures;
pub mod gen;
pub mod gf;
pub mod graph;
pub mod oracle;
pub mod query;
pub mod report;
pub mod sieve;
pub mod solvers;

pub use gf::{FieldElement, FieldWidth};
pub use graph::{load_graph, validate_path, TemporalEdge, TemporalGraph, TemporalPath, VertexColoring};
pub use query::{EdgeModel, MotifQuery, Multiset, Problem};
pub use report::{Decision, SolveReport};
pub use sieve::{SieveConfig, SieveOutcome};
pub use solvers::{decide, extract, find_optimum_timestamp, solve, SolveError, SolverConfig, Task};
