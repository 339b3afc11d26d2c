//! Modularity, Louvain detection and Girvan–Newman validation.

mod compare;
mod girvan_newman;
mod louvain;
mod modularity;

pub use compare::{compare_partitions, PartitionComparison};
pub use girvan_newman::{edge_betweenness, girvan_newman, EdgeScore, GnTrace, Removal};
pub use louvain::{louvain, Dendrogram, MIN_LEVEL_GAIN};
pub use modularity::{aggregate_graph, modularity, AggregateGraph};
