//! Analytics for collaboration networks between institutions.
//!
//! The crate turns an edge list of collaborations into:
//!
//! * global attributes ([`metrics`]): size, average degree, density,
//!   average path length, diameter, clustering, connectedness;
//! * five centrality measures ([`centrality`]);
//! * communities ([`community`]) from Louvain modularity optimisation,
//!   optionally cross-checked with Girvan–Newman;
//! * reports and graph exports ([`report`], [`export`]).
//!
//! Every analysis is a pure, deterministic function of an immutable
//! [`Graph`]. [`synth`] generates seeded test graphs with known structure.

pub mod centrality;
pub mod community;
pub mod error;
pub mod export;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod partition;
pub mod report;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{bfs_distances, build_graph, connected_components, Graph, NodeId, NodeKind, NodeRecord, UNREACHABLE};
pub use partition::Partition;
