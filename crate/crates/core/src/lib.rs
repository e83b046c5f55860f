//! Rainbow matchings in edge-colored graphs under total-color-degree
//! hypotheses.
//!
//! * [`graph`]: the edge-colored graph model, color degrees and structural
//!   predicates; [`reduce`] prunes color classes to star forests.
//! * [`exact`]: branch-and-bound maximum rainbow matching, plus a brute-force
//!   enumerator used as a test oracle.
//! * [`greedy`]: the two peeling procedures and matching reconstruction.
//! * [`verify`]: hypothesis and conclusion checks for the four total color
//!   degree theorems and the open conjecture.
//! * [`generate`]: seeded instance generators.
//! * [`hunt`]: counterexample search for the conjecture.
//! * [`instance`]: the `.ecg` instance file format.

pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod hunt;
pub mod instance;
pub mod matching;
pub mod reduce;
pub mod verify;

pub use error::GraphError;
pub use exact::{has_rainbow_matching, max_rainbow_matching, Decision, NodeBudget, SolveResult};
pub use graph::{Color, ColorClassView, Edge, EdgeColoredGraph, Vertex};
pub use matching::Matching;
pub use reduce::reduce_to_star_forests;
