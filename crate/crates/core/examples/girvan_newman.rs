//! Girvan–Newman on two triangles joined by a bridge.

use commgraph::community::{edge_betweenness, girvan_newman};
use commgraph::Graph;

fn main() -> commgraph::Result<()> {
    let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]);

    for e in edge_betweenness(&g) {
        println!("{}-{}  {:.1}", g.label(e.u), g.label(e.v), e.score);
    }
    let trace = girvan_newman(&g)?;
    println!("step 0: Q = {:.5}", trace.initial_q);
    for r in &trace.removals {
        println!("step {}: removed {}-{}, Q = {:.5}", r.step, g.label(r.u), g.label(r.v), r.modularity);
    }
    println!("best: {:?} at step {}, Q = {:.5}", trace.best_partition.groups(), trace.best_step, trace.best_q);
    Ok(())
}
