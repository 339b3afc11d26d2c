//! Degree, betweenness, closeness, harmonic and PageRank centrality.
//!
//! Path-based measures use unweighted hop distances. Normalized forms:
//!
//! | measure     | normalization                                     |
//! |-------------|---------------------------------------------------|
//! | degree      | `deg / (N-1)`                                     |
//! | betweenness | unordered pairs, divided by `(N-1)(N-2)/2`        |
//! | closeness   | `(n_c-1)/Σd · (n_c-1)/(N-1)`, `n_c` component size |
//! | harmonic    | `Σ 1/d / (N-1)`                                   |
//! | pagerank    | probability vector summing to 1                   |

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, canonical_key, Graph, NodeId, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Harmonic,
    Pagerank,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Harmonic,
        Measure::Pagerank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Harmonic => "harmonic",
            Measure::Pagerank => "pagerank",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
    pub normalized: bool,
}

impl CentralityVector {
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

pub fn degree_centrality(g: &Graph, normalized: bool) -> Result<CentralityVector> {
    let n = g.node_count();
    if normalized && n < 2 {
        return Err(Error::DegenerateGraph(format!(
            "normalized degree needs at least 2 nodes, graph has {n}"
        )));
    }
    let scale = if normalized { 1.0 / (n - 1) as f64 } else { 1.0 };
    Ok(CentralityVector {
        measure: Measure::Degree,
        scores: (0..n).map(|v| g.degree(v) as f64 * scale).collect(),
        normalized,
    })
}

/// Per-source shortest-path counting with dependency accumulation.
///
/// Returns node dependencies and, when requested, edge dependencies laid
/// out parallel to `g.neighbors(u)` for `u < v`. Both count ordered
/// source/target pairs; callers halve them for the undirected convention.
pub(crate) struct Brandes {
    pub node: Vec<f64>,
    pub edge: Option<Vec<Vec<f64>>>,
}

pub(crate) fn brandes(adjacency: &[Vec<NodeId>], with_edges: bool) -> Brandes {
    let n = adjacency.len();
    let mut node = vec![0.0; n];
    let mut edge = with_edges.then(|| adjacency.iter().map(|l| vec![0.0; l.len()]).collect::<Vec<_>>());

    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![UNREACHABLE; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = UNREACHABLE);
        delta.iter_mut().for_each(|x| *x = 0.0);
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adjacency[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }

        for &w in order.iter().rev() {
            for (slot, &v) in adjacency[w].iter().enumerate() {
                if dist[v] != UNREACHABLE && dist[v] + 1 == dist[w] {
                    let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    delta[v] += c;
                    if let Some(edge) = edge.as_mut() {
                        if w < v {
                            edge[w][slot] += c;
                        } else {
                            let back = adjacency[v].binary_search(&w).expect("symmetric adjacency");
                            edge[v][back] += c;
                        }
                    }
                }
            }
            if w != s {
                node[w] += delta[w];
            }
        }
    }
    Brandes { node, edge }
}

pub(crate) fn id_adjacency(g: &Graph) -> Vec<Vec<NodeId>> {
    (0..g.node_count()).map(|v| g.neighbor_ids(v).collect()).collect()
}

pub fn betweenness_centrality(g: &Graph, normalized: bool) -> CentralityVector {
    let n = g.node_count();
    let raw = brandes(&id_adjacency(g), false).node;
    // raw counts ordered pairs: halve, then divide by (N-1)(N-2)/2
    let scale = if !normalized {
        0.5
    } else if n > 2 {
        1.0 / ((n - 1) * (n - 2)) as f64
    } else {
        0.0
    };
    CentralityVector {
        measure: Measure::Betweenness,
        scores: raw.into_iter().map(|x| x * scale).collect(),
        normalized,
    }
}

/// Raw form is `1/Σd` over reachable nodes. Isolated nodes score 0.
pub fn closeness_centrality(g: &Graph, normalized: bool) -> CentralityVector {
    let n = g.node_count();
    let mut isolated = 0;
    let scores = (0..n)
        .map(|x| {
            let (total, reached) = bfs_distances(g, x)
                .into_iter()
                .filter(|&d| d != UNREACHABLE && d > 0)
                .fold((0usize, 0usize), |(t, r), d| (t + d, r + 1));
            if total == 0 {
                isolated += 1;
                return 0.0;
            }
            if normalized {
                let reach = reached as f64;
                (reach / total as f64) * (reach / (n - 1) as f64)
            } else {
                1.0 / total as f64
            }
        })
        .collect();
    if isolated > 0 {
        log::warn!("closeness: {isolated} isolated node(s) scored 0");
    }
    CentralityVector {
        measure: Measure::Closeness,
        scores,
        normalized,
    }
}

pub fn harmonic_centrality(g: &Graph, normalized: bool) -> CentralityVector {
    let n = g.node_count();
    let scale = if !normalized {
        1.0
    } else if n > 1 {
        1.0 / (n - 1) as f64
    } else {
        0.0
    };
    let scores = (0..n)
        .map(|x| {
            let sum: f64 = bfs_distances(g, x)
                .into_iter()
                .filter(|&d| d != UNREACHABLE && d > 0)
                .map(|d| 1.0 / d as f64)
                .sum();
            sum * scale
        })
        .collect();
    CentralityVector {
        measure: Measure::Harmonic,
        scores,
        normalized,
    }
}

/// How PageRank scores are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PageRankScale {
    /// Teleport term `(1-d)/N`; scores form a probability distribution.
    #[default]
    Probability,
    /// Teleport term `(1-d)`; scores sum to `N`. Exactly `N` times the
    /// probability form.
    Unnormalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iter: usize,
    pub scale: PageRankScale,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            tolerance: 1e-9,
            max_iter: 200,
            scale: PageRankScale::Probability,
        }
    }
}

/// One sweep of the probability-form update.
///
/// Undirected edges act as links in both directions, split in proportion
/// to edge weight. Mass on nodes without edges is spread uniformly.
pub fn pagerank_step(g: &Graph, rank: &[f64], damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let strength: Vec<f64> = (0..n).map(|v| g.strength(v)).collect();
    pagerank_sweep(g, &strength, rank, damping)
}

fn pagerank_sweep(g: &Graph, strength: &[f64], rank: &[f64], damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let dangling: f64 = (0..n).filter(|&v| strength[v] == 0.0).map(|v| rank[v]).sum();
    let base = (1.0 - damping) / n as f64 + damping * dangling / n as f64;
    (0..n)
        .map(|v| {
            let inflow: f64 = g
                .neighbors(v)
                .iter()
                .map(|&(u, w)| rank[u] * w / strength[u])
                .sum();
            base + damping * inflow
        })
        .collect()
}

pub fn pagerank(g: &Graph, config: &PageRankConfig) -> Result<CentralityVector> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(config.damping > 0.0 && config.damping < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1), got {}",
            config.damping
        )));
    }
    let strength: Vec<f64> = (0..n).map(|v| g.strength(v)).collect();
    let mut rank = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..config.max_iter {
        let next = pagerank_sweep(g, &strength, &rank, config.damping);
        residual = next.iter().zip(&rank).map(|(a, b)| (a - b).abs()).sum();
        rank = next;
        if residual < config.tolerance {
            let (scores, normalized) = match config.scale {
                PageRankScale::Probability => (rank, true),
                PageRankScale::Unnormalized => (rank.into_iter().map(|x| x * n as f64).collect(), false),
            };
            return Ok(CentralityVector {
                measure: Measure::Pagerank,
                scores,
                normalized,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: config.max_iter,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedNode {
    pub label: String,
    pub score: f64,
}

/// The `k` highest-scoring nodes, ties broken by ascending canonical label.
/// Returns every node when `k` exceeds the node count.
///
/// Scores are compared at 12 significant digits, so values that differ only
/// by summation order still count as tied.
pub fn rank_top_k(g: &Graph, vector: &CentralityVector, k: usize) -> Result<Vec<RankedNode>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if vector.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            left: vector.len(),
            right: g.node_count(),
        });
    }
    let keys: Vec<String> = g.nodes().iter().map(|r| canonical_key(&r.label)).collect();
    let rounded: Vec<f64> = vector.scores.iter().map(|&x| round_sig12(x)).collect();
    let mut order: Vec<NodeId> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| {
        rounded[b]
            .total_cmp(&rounded[a])
            .then_with(|| keys[a].cmp(&keys[b]))
            .then(a.cmp(&b))
    });
    Ok(order
        .into_iter()
        .take(k)
        .map(|v| RankedNode {
            label: g.label(v).to_string(),
            score: vector.scores[v],
        })
        .collect())
}

fn round_sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// All five measures in [`Measure::ALL`] order.
pub fn compute_all(g: &Graph, normalized: bool, pagerank_config: &PageRankConfig) -> Result<Vec<CentralityVector>> {
    Ok(vec![
        degree_centrality(g, normalized)?,
        betweenness_centrality(g, normalized),
        closeness_centrality(g, normalized),
        harmonic_centrality(g, normalized),
        pagerank(g, pagerank_config)?,
    ])
}
