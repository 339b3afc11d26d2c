//! Global structure of a synthetic collaboration graph.

use commgraph::metrics::{global_metrics, max_degree_node};
use commgraph::synth::gen_planted_partition;

fn main() -> commgraph::Result<()> {
    let s = gen_planted_partition(4, 25, 0.25, 0.02, 7)?;
    let g = &s.graph;
    let m = global_metrics(g)?;

    println!("nodes              {}", m.node_count);
    println!("edges              {}", m.edge_count);
    println!("average degree     {:.4}", m.average_degree);
    println!("density            {:.4}", m.density);
    println!("average path       {:.4}", m.average_path_length);
    println!("diameter           {}", m.diameter);
    println!("clustering         {:.4}", m.average_clustering);
    println!("components         {}", m.component_count);
    if let Some(hub) = max_degree_node(g) {
        println!("best connected     {} (degree {})", g.label(hub), g.degree(hub));
    }
    Ok(())
}
