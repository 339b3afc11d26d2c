use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionComparison {
    pub identical: bool,
    pub nmi: f64,
}

/// Checks two partitions for equality up to relabelling and computes their
/// normalized mutual information, `2·I(a;b) / (H(a) + H(b))` in nats.
/// Two single-community partitions have NMI 1.
pub fn compare_partitions(a: &Partition, b: &Partition) -> Result<PartitionComparison> {
    if a.node_count() != b.node_count() {
        return Err(Error::SizeMismatch {
            left: a.node_count(),
            right: b.node_count(),
        });
    }
    Ok(PartitionComparison {
        identical: a == b,
        nmi: normalized_mutual_information(a, b),
    })
}

fn entropy(sizes: &[usize], n: f64) -> f64 {
    sizes
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

fn normalized_mutual_information(a: &Partition, b: &Partition) -> f64 {
    let n = a.node_count();
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in 0..n {
        *joint.entry((a.community_of(v), b.community_of(v))).or_insert(0) += 1;
    }
    let (size_a, size_b) = (a.sizes(), b.sizes());
    let mutual: f64 = joint
        .iter()
        .map(|(&(i, j), &count)| {
            let c = count as f64;
            c / nf * (c * nf / (size_a[i] as f64 * size_b[j] as f64)).ln()
        })
        .sum();
    let denom = entropy(&size_a, nf) + entropy(&size_b, nf);
    if denom == 0.0 {
        return 1.0;
    }
    (2.0 * mutual / denom).clamp(0.0, 1.0)
}
