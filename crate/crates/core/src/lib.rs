//! Isolation numbers `ι(G, F)` for patterns `F` that have a vertex adjacent
//! to all others.
//!
//! A set `D` of vertices is `F`-isolating when `G - N[D]` has no copy of `F`.
//! For a connected `m`-edge graph `G` and a `k`-edge pattern `F` with a
//! dominating vertex, a smallest such set has at most `⌊(m+1)/(k+2)⌋`
//! vertices unless `G ≃ F`, or `F` is a 3-path and `G` a 6-cycle.
//!
//! * [`graph`]: the graph type, neighbourhoods, deletions, isomorphism.
//! * [`pattern`]: pattern validation and copy detection.
//! * [`exact`]: brute-force `ι(G, F)` and domination number.
//! * [`proof`]: isolating sets within the bound, with a case trace.
//! * [`constructions`]: graphs attaining the bound.
//! * [`harness`]: corpora and bound verification.
//! * [`edgelist`]: the text format used for graph files.
//! * [`cli`]: the `isolation-kit` command.

pub mod cli;
pub mod constructions;
pub mod edgelist;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod pattern;
pub mod proof;

pub use exact::{gamma, iota_exact, is_isolating, ExactResult};
pub use graph::{Graph, GraphError, SubgraphHandle, VertexSet};
pub use pattern::{is_special_pair, CopyWitness, Pattern, PatternError};
pub use proof::{bound, isolate, CaseStep, CaseTag, Certificate, SolverError, SolverErrorKind};
