//! Five centrality measures and a top-5 ranking for each.

use commgraph::centrality::{compute_all, rank_top_k, PageRankConfig};
use commgraph::synth::gen_ring_of_cliques;

fn main() -> commgraph::Result<()> {
    let g = gen_ring_of_cliques(5, 4)?.graph;
    let vectors = compute_all(&g, true, &PageRankConfig::default())?;
    for v in &vectors {
        let top = rank_top_k(&g, v, 5)?;
        let line: Vec<String> = top.iter().map(|r| format!("{} {:.4}", r.label, r.score)).collect();
        println!("{:<12} {}", v.measure.as_str(), line.join(", "));
    }
    Ok(())
}
