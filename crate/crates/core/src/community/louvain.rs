//! Two-phase Louvain modularity optimisation.
//!
//! Phase one visits nodes in ascending id order and moves each to the
//! neighboring community with the largest positive modularity gain, with
//! ties going to the lowest community id. Sweeps repeat until one makes no
//! move. Phase two collapses the communities into super-nodes and the
//! process restarts on the smaller graph. Everything is sequential, so the
//! result depends only on the input graph.

use serde::{Deserialize, Serialize};

use super::modularity::{modularity, AggregateGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// An aggregation level is kept only if it raises modularity by at least
/// this much.
pub const MIN_LEVEL_GAIN: f64 = 1e-7;

/// Smallest per-move gain, in modularity units, treated as an improvement.
const MIN_MOVE_GAIN: f64 = 1e-12;

/// Partitions found at each aggregation level, finest first, all expressed
/// over the original node ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub levels: Vec<Partition>,
    pub q_per_level: Vec<f64>,
}

impl Dendrogram {
    pub fn final_partition(&self) -> &Partition {
        self.levels.last().expect("dendrogram has at least one level")
    }

    pub fn final_q(&self) -> f64 {
        *self.q_per_level.last().expect("dendrogram has at least one level")
    }
}

pub fn louvain(g: &Graph) -> Result<Dendrogram> {
    if g.total_weight() <= 0.0 {
        return Err(Error::UndefinedModularity);
    }
    let mut levels: Vec<Partition> = Vec::new();
    let mut q_per_level: Vec<f64> = Vec::new();
    let mut current = AggregateGraph::from_graph(g);
    let mut membership = Partition::singletons(g.node_count());

    loop {
        let (local, moved) = move_nodes(&current);
        let coarser = membership.compose(&local);
        let q = modularity(g, &coarser)?;
        if let Some(&previous) = q_per_level.last() {
            if !moved || q - previous < MIN_LEVEL_GAIN {
                break;
            }
        }
        log::debug!(
            "louvain level {}: {} communities, Q = {q:.6}",
            levels.len(),
            coarser.community_count()
        );
        levels.push(coarser.clone());
        q_per_level.push(q);
        if !moved {
            break;
        }
        current = current.aggregate(&local)?;
        membership = coarser;
    }
    Ok(Dendrogram { levels, q_per_level })
}

/// Local-moving phase on one level. Returns the canonical partition of the
/// level's nodes and whether any node changed community.
fn move_nodes(h: &AggregateGraph) -> (Partition, bool) {
    let n = h.node_count();
    let two_m = 2.0 * h.total_weight();
    let strength: Vec<f64> = (0..n).map(|v| h.strength(v)).collect();
    let mut community: Vec<usize> = (0..n).collect();
    let mut total: Vec<f64> = strength.clone();

    // scratch for weights from the current node to each community
    let mut link = vec![0.0f64; n];
    let mut touched: Vec<usize> = Vec::new();

    let mut any_move = false;
    loop {
        let mut moved = false;
        for v in 0..n {
            let own = community[v];
            let k = strength[v];
            touched.clear();
            for &(u, w) in h.neighbors(v) {
                let c = community[u];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }

            total[own] -= k;
            // gain(c) = link_c − tot_c·k/2m, proportional to ΔQ of joining c
            let gain = |c: usize, link: &[f64]| link[c] - total[c] * k / two_m;
            let stay = gain(own, &link);
            touched.sort_unstable();
            let mut best = own;
            let mut best_gain = f64::NEG_INFINITY;
            for &c in &touched {
                if c == own {
                    continue;
                }
                let g = gain(c, &link);
                if g > best_gain {
                    best_gain = g;
                    best = c;
                }
            }
            // ΔQ in modularity units is (best_gain − stay) / m
            if best != own && (best_gain - stay) * 2.0 / two_m > MIN_MOVE_GAIN {
                community[v] = best;
                moved = true;
            }
            total[community[v]] += k;

            for &c in &touched {
                link[c] = 0.0;
            }
        }
        if !moved {
            break;
        }
        any_move = true;
    }
    (Partition::from_assignment(&community), any_move)
}
