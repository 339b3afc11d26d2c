//! Seeded synthetic graphs with known community structure.
//!
//! Randomness comes from ChaCha8 (`rand_chacha` 0.3, seeded with
//! `seed_from_u64`). Each uniform draw takes one `next_u64`, keeps the top
//! 53 bits and scales by 2⁻⁵³. Node pairs `(i, j)`, `i < j`, are visited in
//! lexicographic order and every pair consumes exactly one draw, so a
//! given spec always yields the same edge list on every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{numbered_records, Graph};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    RingOfCliques {
        cliques: usize,
        clique_size: usize,
    },
    PlantedPartition {
        blocks: usize,
        block_size: usize,
        p_in: f64,
        p_out: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub seed: u64,
}

/// A generated graph together with the partition it was planted with.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    pub graph: Graph,
    pub truth: Partition,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Synthetic> {
        match self.kind {
            GeneratorKind::RingOfCliques { cliques, clique_size } => gen_ring_of_cliques(cliques, clique_size),
            GeneratorKind::PlantedPartition {
                blocks,
                block_size,
                p_in,
                p_out,
            } => gen_planted_partition(blocks, block_size, p_in, p_out, self.seed),
        }
    }
}

/// `k` cliques of `clique_size` nodes; the last node of clique `c` is joined
/// to the first node of clique `c+1`, wrapping around.
pub fn gen_ring_of_cliques(k: usize, clique_size: usize) -> Result<Synthetic> {
    if k < 2 || clique_size < 3 {
        return Err(Error::InvalidParameter(format!(
            "ring of cliques needs k >= 2 and clique size >= 3, got k={k}, size={clique_size}"
        )));
    }
    let n = k * clique_size;
    let mut edges = Vec::with_capacity(k * clique_size * (clique_size - 1) / 2 + k);
    for c in 0..k {
        let base = c * clique_size;
        for i in 0..clique_size {
            for j in i + 1..clique_size {
                edges.push((base + i, base + j, 1.0));
            }
        }
        edges.push((base + clique_size - 1, ((c + 1) % k) * clique_size, 1.0));
    }
    let truth: Vec<usize> = (0..n).map(|v| v / clique_size).collect();
    Ok(Synthetic {
        graph: Graph::from_parts(numbered_records(n), edges).0,
        truth: Partition::from_assignment(&truth),
    })
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one `next_u64`.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Stochastic block model with `k` equal blocks. Isolated nodes are kept.
pub fn gen_planted_partition(k: usize, block_size: usize, p_in: f64, p_out: f64, seed: u64) -> Result<Synthetic> {
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) {
        return Err(Error::InvalidParameter(format!(
            "probabilities must lie in [0, 1], got p_in={p_in}, p_out={p_out}"
        )));
    }
    if p_out > p_in || (p_out == p_in && p_in > 0.0) {
        return Err(Error::InvalidParameter(format!("need p_out < p_in, got p_in={p_in}, p_out={p_out}")));
    }
    if k == 0 || block_size == 0 {
        return Err(Error::InvalidParameter("need at least one block of one node".into()));
    }
    let n = k * block_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if i / block_size == j / block_size { p_in } else { p_out };
            if unit(&mut rng) < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    let truth: Vec<usize> = (0..n).map(|v| v / block_size).collect();
    Ok(Synthetic {
        graph: Graph::from_parts(numbered_records(n), edges).0,
        truth: Partition::from_assignment(&truth),
    })
}
