//! Node-to-community assignments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total assignment of node ids to community ids.
///
/// Always stored in canonical form: ids are contiguous from 0 and numbered
/// in order of the smallest node id they contain. Two partitions describing
/// the same grouping therefore compare equal regardless of how the input
/// labelled the groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling.
    pub fn from_assignment<L>(labels: &[L]) -> Self
    where
        L: Copy + Eq + std::hash::Hash,
    {
        let mut remap = std::collections::HashMap::with_capacity(labels.len());
        let mut assignment = Vec::with_capacity(labels.len());
        for &label in labels {
            let next = remap.len();
            assignment.push(*remap.entry(label).or_insert(next));
        }
        Partition {
            community_count: remap.len(),
            assignment,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n).collect(),
            community_count: n,
        }
    }

    pub fn single_community(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            community_count: usize::from(n > 0),
        }
    }

    /// Builds a partition from explicit groups of node ids. Every node in
    /// `0..n` must appear exactly once.
    pub fn from_groups(n: usize, groups: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, group) in groups.iter().enumerate() {
            for &v in group {
                if v >= n || labels[v] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "node {v} is out of range or listed twice"
                    )));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidParameter(format!("node {v} is unassigned")));
        }
        Ok(Self::from_assignment(&labels))
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    /// Members of each community, in ascending node order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            groups[c].push(v);
        }
        groups
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.community_count];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// True when every community of `self` lies inside a single community
    /// of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        if self.node_count() != coarser.node_count() {
            return false;
        }
        let mut parent = vec![usize::MAX; self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            let target = coarser.assignment[v];
            if parent[c] == usize::MAX {
                parent[c] = target;
            } else if parent[c] != target {
                return false;
            }
        }
        true
    }

    /// Maps a partition of super-nodes back onto the nodes they represent.
    pub(crate) fn compose(&self, upper: &Partition) -> Partition {
        let labels: Vec<usize> = self
            .assignment
            .iter()
            .map(|&c| upper.assignment[c])
            .collect();
        Partition::from_assignment(&labels)
    }
}
