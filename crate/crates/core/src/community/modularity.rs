use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

fn check_cover(nodes: usize, p: &Partition) -> Result<()> {
    if p.node_count() != nodes {
        return Err(Error::SizeMismatch {
            left: p.node_count(),
            right: nodes,
        });
    }
    Ok(())
}

/// Newman modularity `Σ_c [e_c/m − (d_c/2m)²]` with resolution 1.
///
/// `e_c` is the weight of edges inside community `c` and `d_c` the summed
/// weighted degree of its members.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    check_cover(g.node_count(), p)?;
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::UndefinedModularity);
    }
    let mut internal = vec![0.0; p.community_count()];
    let mut degree = vec![0.0; p.community_count()];
    for e in g.edges() {
        let (cu, cv) = (p.community_of(e.u), p.community_of(e.v));
        if cu == cv {
            internal[cu] += e.weight;
        }
        degree[cu] += e.weight;
        degree[cv] += e.weight;
    }
    Ok(score(&internal, &degree, m))
}

pub(crate) fn score(internal: &[f64], degree: &[f64], m: f64) -> f64 {
    internal
        .iter()
        .zip(degree)
        .map(|(&e, &d)| e / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted graph whose nodes may carry self-loops: the form communities
/// take after Louvain aggregation.
///
/// A self-loop of weight `w` counts `w` toward total weight and internal
/// weight, and `2w` toward the node's degree.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl AggregateGraph {
    pub fn from_graph(g: &Graph) -> Self {
        AggregateGraph {
            adjacency: (0..g.node_count()).map(|v| g.neighbors(v).to_vec()).collect(),
            self_loops: vec![0.0; g.node_count()],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbors other than the node itself, ascending.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn self_loop(&self, v: usize) -> f64 {
        self.self_loops[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u == v {
            return Some(self.self_loops[u]).filter(|&w| w > 0.0);
        }
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn strength(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[v]
    }

    pub fn total_weight(&self) -> f64 {
        let between: f64 = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&(v, _)| u < v).map(|&(_, w)| w))
            .sum();
        between + self.self_loops.iter().sum::<f64>()
    }

    pub fn modularity(&self, p: &Partition) -> Result<f64> {
        check_cover(self.node_count(), p)?;
        let m = self.total_weight();
        if m <= 0.0 {
            return Err(Error::UndefinedModularity);
        }
        let mut internal = vec![0.0; p.community_count()];
        let mut degree = vec![0.0; p.community_count()];
        for u in 0..self.node_count() {
            let cu = p.community_of(u);
            internal[cu] += self.self_loops[u];
            degree[cu] += self.strength(u);
            for &(v, w) in &self.adjacency[u] {
                if u < v && p.community_of(v) == cu {
                    internal[cu] += w;
                }
            }
        }
        Ok(score(&internal, &degree, m))
    }

    /// Collapses each community of `p` into one node. Weight between
    /// communities is summed; weight inside becomes the self-loop.
    pub fn aggregate(&self, p: &Partition) -> Result<AggregateGraph> {
        check_cover(self.node_count(), p)?;
        let k = p.community_count();
        let mut self_loops = vec![0.0; k];
        let mut between: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
        for u in 0..self.node_count() {
            let cu = p.community_of(u);
            self_loops[cu] += self.self_loops[u];
            for &(v, w) in &self.adjacency[u] {
                if u >= v {
                    continue;
                }
                let cv = p.community_of(v);
                if cu == cv {
                    self_loops[cu] += w;
                } else {
                    *between[cu].entry(cv).or_insert(0.0) += w;
                    *between[cv].entry(cu).or_insert(0.0) += w;
                }
            }
        }
        Ok(AggregateGraph {
            adjacency: between.into_iter().map(|m| m.into_iter().collect()).collect(),
            self_loops,
        })
    }
}

/// Community graph of `p` over `g`.
pub fn aggregate_graph(g: &Graph, p: &Partition) -> Result<AggregateGraph> {
    AggregateGraph::from_graph(g).aggregate(p)
}
