//! Global attributes of a graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, connected_components, Graph, NodeId, UNREACHABLE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub average_degree: f64,
    pub density: f64,
    /// Mean hop distance over unordered pairs that are mutually reachable.
    pub average_path_length: f64,
    /// Largest finite distance.
    pub diameter: usize,
    pub average_clustering: f64,
    pub is_connected: bool,
    pub component_count: usize,
}

/// Fraction of neighbor pairs of `v` that are themselves adjacent.
/// Zero when `v` has fewer than two neighbors.
pub fn local_clustering(g: &Graph, v: NodeId) -> f64 {
    let k = g.degree(v);
    if k < 2 {
        return 0.0;
    }
    let neighbors = g.neighbors(v);
    let mut triangles = 0usize;
    for (i, &(a, _)) in neighbors.iter().enumerate() {
        for &(b, _) in &neighbors[i + 1..] {
            if g.has_edge(a, b) {
                triangles += 1;
            }
        }
    }
    triangles as f64 / (k * (k - 1) / 2) as f64
}

pub fn global_metrics(g: &Graph) -> Result<MetricsReport> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.edge_count();

    // Each unordered pair is visited twice; integer sums keep the result
    // exact and order independent.
    let mut distance_sum: u64 = 0;
    let mut reachable_pairs: u64 = 0;
    let mut diameter = 0;
    for s in 0..n {
        for (t, &d) in bfs_distances(g, s).iter().enumerate() {
            if t != s && d != UNREACHABLE {
                distance_sum += d as u64;
                reachable_pairs += 1;
                diameter = diameter.max(d);
            }
        }
    }
    let average_path_length = if reachable_pairs == 0 {
        0.0
    } else {
        distance_sum as f64 / reachable_pairs as f64
    };

    let density = if n >= 2 {
        (2 * m) as f64 / (n * (n - 1)) as f64
    } else {
        0.0
    };
    let component_count = connected_components(g).community_count();
    let average_clustering = (0..n).map(|v| local_clustering(g, v)).sum::<f64>() / n as f64;

    Ok(MetricsReport {
        node_count: n,
        edge_count: m,
        average_degree: (2 * m) as f64 / n as f64,
        density,
        average_path_length,
        diameter,
        average_clustering,
        is_connected: component_count == 1,
        component_count,
    })
}

/// Node with the largest degree; ties go to the smaller id.
pub fn max_degree_node(g: &Graph) -> Option<NodeId> {
    (0..g.node_count()).max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
}
