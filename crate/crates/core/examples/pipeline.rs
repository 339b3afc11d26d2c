//! The full analysis on the bundled 40-node sample, printed as JSON.

use std::path::PathBuf;

use commgraph::report::{run_pipeline, Inputs, PipelineOptions};

fn main() -> commgraph::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sample40");
    let (edges, nodes) = (dir.join("edges.csv"), dir.join("nodes.csv"));
    let inputs = Inputs { edges: &edges, nodes: Some(&nodes), aliases: None };
    let options = PipelineOptions { validate_gn: true, ..Default::default() };

    let out = run_pipeline(&inputs, &options)?;
    let c = &out.report.communities;
    eprintln!(
        "louvain: {} communities, Q = {:.4}; girvan-newman best Q = {:.4}; NMI = {:.4}",
        c.community_count,
        c.louvain_q,
        c.gn_best_q.unwrap_or(f64::NAN),
        c.louvain_gn_nmi.unwrap_or(f64::NAN)
    );
    print!("{}", String::from_utf8_lossy(&out.report.to_json()?));
    Ok(())
}
