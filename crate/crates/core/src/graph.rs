//! Immutable undirected graph and the traversal primitives shared by every
//! analysis.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Dense node index, contiguous `0..N` after construction.
pub type NodeId = usize;

/// Distance sentinel for nodes not reachable from the BFS source.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Public,
    Medical,
    Technical,
    Other,
}

impl NodeKind {
    /// Parses a kind name case-insensitively. Unknown names yield `None`.
    pub fn parse(s: &str) -> Option<NodeKind> {
        match s.trim().to_lowercase().as_str() {
            "public" => Some(NodeKind::Public),
            "medical" => Some(NodeKind::Medical),
            "technical" => Some(NodeKind::Technical),
            "other" => Some(NodeKind::Other),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Public => "public",
            NodeKind::Medical => "medical",
            NodeKind::Technical => "technical",
            NodeKind::Other => "other",
        }
    }
}

/// Attributes of one institution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub label: String,
    pub kind: NodeKind,
    pub location: Option<String>,
    /// Carried through to exports; never computed here.
    pub external_score: Option<f64>,
}

impl NodeRecord {
    pub fn new(label: impl Into<String>) -> Self {
        NodeRecord {
            label: label.into(),
            kind: NodeKind::Other,
            location: None,
            external_score: None,
        }
    }
}

/// Identity key for labels: trimmed, internal whitespace collapsed, case-folded.
pub fn canonical_key(label: &str) -> String {
    label
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Display form of a label: trimmed with internal whitespace collapsed.
pub fn tidy_label(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// One edge row as read from input, before label resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEdgeRow {
    pub source_label: String,
    pub target_label: String,
    pub weight: Option<f64>,
    pub line_no: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildStats {
    pub duplicates_collapsed: usize,
    pub self_loops_dropped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

/// Undirected weighted simple graph.
///
/// Adjacency lists are sorted by neighbor id and symmetric. Parallel input
/// edges are merged by summing their weights; self-loops never appear.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    nodes: Vec<NodeRecord>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    edge_count: usize,
}

/// Resolves labelled edges against `records` and builds the graph.
///
/// Node ids follow the order of `records`. Endpoint labels are matched by
/// [`canonical_key`].
pub fn build_graph(records: Vec<NodeRecord>, edges: &[RawEdgeRow]) -> Result<(Graph, BuildStats)> {
    let mut index: HashMap<String, NodeId> = HashMap::with_capacity(records.len());
    for (id, record) in records.iter().enumerate() {
        if let Some(&first) = index.get(&canonical_key(&record.label)) {
            return Err(Error::DuplicateLabel {
                label: record.label.clone(),
                first_line: first + 1,
                second_line: id + 1,
            });
        }
        index.insert(canonical_key(&record.label), id);
    }
    let resolve = |label: &str, line: usize| {
        index
            .get(&canonical_key(label))
            .copied()
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                line,
            })
    };
    let mut resolved = Vec::with_capacity(edges.len());
    for row in edges {
        let u = resolve(&row.source_label, row.line_no)?;
        let v = resolve(&row.target_label, row.line_no)?;
        resolved.push((u, v, row.weight.unwrap_or(1.0)));
    }
    Ok(Graph::from_parts(records, resolved))
}

impl Graph {
    /// Assembles a graph from records and id-based edges, merging duplicates
    /// and dropping self-loops.
    pub fn from_parts<I>(nodes: Vec<NodeRecord>, edges: I) -> (Graph, BuildStats)
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let n = nodes.len();
        let mut stats = BuildStats::default();
        let mut merged: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
            if u == v {
                log::warn!("dropping self-loop on `{}`", nodes[u].label);
                stats.self_loops_dropped += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            match merged.get_mut(&key) {
                Some(total) => {
                    *total += w;
                    stats.duplicates_collapsed += 1;
                }
                None => {
                    merged.insert(key, w);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (&(u, v), &w) in &merged {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(v, _)| v);
        }
        let graph = Graph {
            nodes,
            adjacency,
            edge_count: merged.len(),
        };
        (graph, stats)
    }

    /// Graph over `n` nodes labelled `n0..` (zero-padded so that lexical
    /// label order equals id order).
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Graph {
        Self::from_weighted_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0)))
    }

    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        Self::from_parts(numbered_records(n), edges).0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> &NodeRecord {
        &self.nodes[v]
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.nodes[v].label
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[v]
    }

    pub fn neighbor_ids(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    /// Sum of incident edge weights.
    pub fn strength(&self, v: NodeId) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum()
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.weight(u, v).is_some()
    }

    /// Edges with `u < v`, in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, weight)| Edge { u, v, weight })
        })
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|e| e.weight).sum()
    }

    /// Looks a node up by label using [`canonical_key`] matching.
    pub fn find(&self, label: &str) -> Option<NodeId> {
        let key = canonical_key(label);
        self.nodes.iter().position(|r| canonical_key(&r.label) == key)
    }

    /// Same topology with every weight set to 1.
    pub fn unweighted(&self) -> Graph {
        Graph {
            nodes: self.nodes.clone(),
            adjacency: self
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&(v, _)| (v, 1.0)).collect())
                .collect(),
            edge_count: self.edge_count,
        }
    }

    /// Renumbers nodes so that node `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[NodeId]) -> Graph {
        assert_eq!(perm.len(), self.node_count());
        let mut nodes = vec![NodeRecord::new(""); self.node_count()];
        for (v, record) in self.nodes.iter().enumerate() {
            nodes[perm[v]] = record.clone();
        }
        let edges: Vec<_> = self
            .edges()
            .map(|e| (perm[e.u], perm[e.v], e.weight))
            .collect();
        Self::from_parts(nodes, edges).0
    }
}

pub(crate) fn numbered_records(n: usize) -> Vec<NodeRecord> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n)
        .map(|i| NodeRecord::new(format!("n{i:0width$}")))
        .collect()
}

/// Unweighted hop distances from `source`; [`UNREACHABLE`] marks nodes in
/// other components.
///
/// # Panics
///
/// If `source` is not a node of `g`.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Vec<usize> {
    assert!(source < g.node_count(), "source {source} out of range");
    let mut dist = vec![UNREACHABLE; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbor_ids(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Component labelling, numbered by smallest contained node id.
pub fn connected_components(g: &Graph) -> Partition {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for w in g.neighbor_ids(u) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    Partition::from_assignment(&label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(a: &str, b: &str, line: usize) -> RawEdgeRow {
        RawEdgeRow {
            source_label: a.into(),
            target_label: b.into(),
            weight: None,
            line_no: line,
        }
    }

    fn records(labels: &[&str]) -> Vec<NodeRecord> {
        labels.iter().map(|&l| NodeRecord::new(l)).collect()
    }

    #[test]
    fn duplicates_collapse_into_weight() {
        let edges = [row("A", "B", 2), row("B", "C", 3), row("A", "B", 4)];
        let (g, stats) = build_graph(records(&["A", "B", "C"]), &edges).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(0, 1), Some(2.0));
        assert_eq!(g.weight(1, 0), Some(2.0));
        assert_eq!(stats.duplicates_collapsed, 1);
    }

    #[test]
    fn self_loop_dropped() {
        let (g, stats) = build_graph(records(&["A"]), &[row("A", "A", 2)]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(stats.self_loops_dropped, 1);
    }

    #[test]
    fn unknown_label_names_line() {
        let err = build_graph(records(&["A"]), &[row("A", "Z", 7)]).unwrap_err();
        match err {
            Error::UnknownLabel { label, line } => {
                assert_eq!(label, "Z");
                assert_eq!(line, 7);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn labels_match_canonically() {
        let (g, _) = build_graph(records(&["Univ A", "B"]), &[row(" univ   a ", "b", 2)]).unwrap();
        assert!(g.has_edge(0, 1));
        assert_eq!(g.find("UNIV A"), Some(0));
    }

    #[test]
    fn bfs_examples() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(bfs_distances(&path, 0), vec![0, 1, 2]);
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        for s in 0..3 {
            let d = bfs_distances(&triangle, s);
            assert_eq!(d[s], 0);
            assert_eq!(d.iter().filter(|&&x| x == 1).count(), 2);
        }
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(bfs_distances(&two, 0), vec![0, 1, UNREACHABLE, UNREACHABLE]);
    }

    #[test]
    fn components_examples() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(connected_components(&triangle).community_count(), 1);
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(connected_components(&two).assignment(), &[0, 0, 0, 1, 1, 1]);
        let empty = Graph::from_edges(4, &[]);
        assert_eq!(connected_components(&empty).community_count(), 4);
    }

    #[test]
    fn numbered_labels_sort_like_ids() {
        let g = Graph::from_edges(12, &[]);
        assert_eq!(g.label(3), "n03");
        assert_eq!(g.label(11), "n11");
    }

    #[test]
    fn permutation_preserves_structure() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let p = g.permuted(&[3, 2, 1, 0]);
        assert!(p.has_edge(3, 2) && p.has_edge(2, 1) && p.has_edge(1, 0));
        assert_eq!(p.label(3), "n0");
    }
}
