#![forbid(unsafe_code)]

//! Substructure discovery for labeled graphs, driven by minimum description
//! length.
//!
//! The library finds connected subgraphs whose repeated instances let the
//! input graph be rewritten more compactly: each candidate substructure is
//! scored by the bits needed to encode the substructure definition plus the
//! bits for the graph with the instances contracted to single vertices.
//! Discovery is a beam search that grows candidates one edge at a time,
//! instances may match inexactly under configurable distortion costs, and
//! repeated discover-and-contract passes build hierarchies of concepts
//! defined over earlier ones.
//!
//! Modules:
//! - [`graph`]: the labeled multigraph model and its text format.
//! - [`mdl`]: bit-length accounting for graphs and substructure rewrites.
//! - [`matching`]: branch-and-bound inexact graph matching.
//! - [`rules`]: instance weights and scoring rules (compactness,
//!   connectivity, coverage, label preference).
//! - [`discovery`]: the beam search over candidate substructures.
//! - [`hierarchy`]: instance contraction and multi-pass discovery.
//! - [`generator`]: synthetic graphs with planted substructures.
//! - [`oracle`]: brute-force reference implementations used for verification.

pub mod canon;
pub mod discovery;
pub mod generator;
pub mod graph;
pub mod hierarchy;
pub mod matching;
pub mod mdl;
pub mod oracle;
pub mod rules;
pub mod substructure;

pub use discovery::{discover, DiscoveryParams};
pub use graph::{parse_graph, serialize_graph, Edge, Label, LabeledGraph, Vertex};
pub use hierarchy::{hierarchical_discover, replace_instances, HierarchyLevel};
pub use matching::{is_instance_match, match_cost, DistortionCosts, MatchBudget, MatchResult};
pub use mdl::{description_length, CompressionReport, EncodingBreakdown};
pub use rules::{RuleConfig, RuleReport, RuleWeights};
pub use substructure::{Instance, SubstructureCandidate};
