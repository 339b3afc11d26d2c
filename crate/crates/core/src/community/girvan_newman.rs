//! Divisive clustering by repeated removal of the highest-betweenness edge.

use serde::{Deserialize, Serialize};

use super::modularity::modularity;
use crate::centrality::{brandes, id_adjacency};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, NodeId};
use crate::partition::Partition;

/// Scores closer than this (relative) are treated as tied.
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeScore {
    pub u: NodeId,
    pub v: NodeId,
    pub score: f64,
}

/// Shortest-path betweenness of every edge, over unordered node pairs.
/// Edges appear in `(u, v)` order with `u < v`.
pub fn edge_betweenness(g: &Graph) -> Vec<EdgeScore> {
    edge_scores(&id_adjacency(g))
}

fn edge_scores(adjacency: &[Vec<NodeId>]) -> Vec<EdgeScore> {
    let per_slot = brandes(adjacency, true).edge.expect("edge scores requested");
    let mut out = Vec::new();
    for (u, list) in adjacency.iter().enumerate() {
        for (slot, &v) in list.iter().enumerate() {
            if u < v {
                out.push(EdgeScore {
                    u,
                    v,
                    score: per_slot[u][slot] / 2.0,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Removal {
    pub step: usize,
    pub u: NodeId,
    pub v: NodeId,
    /// Modularity of the component partition after this removal, measured
    /// on the original graph.
    pub modularity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnTrace {
    /// Modularity of the component partition before any removal.
    pub initial_q: f64,
    pub removals: Vec<Removal>,
    pub best_partition: Partition,
    pub best_q: f64,
    /// Number of removals preceding the best partition.
    pub best_step: usize,
}

/// Runs Girvan–Newman to completion.
///
/// Edge betweenness is recomputed after every removal. Ties on the maximum
/// go to the edge whose (smaller label, larger label) pair sorts first.
/// Every intermediate component partition is scored against `g` itself,
/// and the best one is returned; the earliest wins on equal modularity.
pub fn girvan_newman(g: &Graph) -> Result<GnTrace> {
    if g.edge_count() == 0 {
        return Err(Error::UndefinedModularity);
    }
    let mut adjacency = id_adjacency(g);
    let initial = connected_components(g);
    let initial_q = modularity(g, &initial)?;
    let mut best = (initial_q, initial, 0);
    let mut removals = Vec::with_capacity(g.edge_count());

    for step in 1..=g.edge_count() {
        let scores = edge_scores(&adjacency);
        let top = scores.iter().map(|e| e.score).fold(f64::NEG_INFINITY, f64::max);
        let cut = top - TIE_TOLERANCE * top.abs().max(1.0);
        let chosen = scores
            .iter()
            .filter(|e| e.score >= cut)
            .min_by(|a, b| label_pair(g, a).cmp(&label_pair(g, b)))
            .expect("at least one edge remains");
        let (u, v) = (chosen.u, chosen.v);
        adjacency[u].retain(|&x| x != v);
        adjacency[v].retain(|&x| x != u);

        let components = components_of(&adjacency);
        let q = modularity(g, &components)?;
        log::trace!("gn step {step}: removed ({}, {}), Q = {q:.6}", g.label(u), g.label(v));
        if q > best.0 {
            best = (q, components, step);
        }
        removals.push(Removal {
            step,
            u,
            v,
            modularity: q,
        });
    }
    let (best_q, best_partition, best_step) = best;
    Ok(GnTrace {
        initial_q,
        removals,
        best_partition,
        best_q,
        best_step,
    })
}

fn label_pair<'a>(g: &'a Graph, e: &EdgeScore) -> (&'a str, &'a str) {
    let (a, b) = (g.label(e.u), g.label(e.v));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn components_of(adjacency: &[Vec<NodeId>]) -> Partition {
    let n = adjacency.len();
    let mut label = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if label[w] == usize::MAX {
                    label[w] = start;
                    stack.push(w);
                }
            }
        }
    }
    Partition::from_assignment(&label)
}
