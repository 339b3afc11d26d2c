//! Louvain on a planted partition, compared against the planted blocks.

use commgraph::community::{compare_partitions, louvain};
use commgraph::synth::gen_planted_partition;

fn main() -> commgraph::Result<()> {
    let s = gen_planted_partition(4, 32, 0.3, 0.01, 42)?;
    let d = louvain(&s.graph)?;

    for (i, (level, q)) in d.levels.iter().zip(&d.q_per_level).enumerate() {
        println!("level {i}: {:>3} communities, Q = {q:.6}", level.community_count());
    }
    let p = d.final_partition();
    println!("sizes {:?}", p.sizes());
    let cmp = compare_partitions(p, &s.truth)?;
    println!("NMI vs planted blocks: {:.4} (identical: {})", cmp.nmi, cmp.identical);
    Ok(())
}
