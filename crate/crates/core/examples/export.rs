//! Write GEXF, DOT and JSON exports annotated with communities and scores.
//!
//!     cargo run --example export -- [out-dir]

use std::path::PathBuf;

use commgraph::centrality::{compute_all, PageRankConfig};
use commgraph::community::louvain;
use commgraph::export::{export_graph, import_json, write_bytes, Annotations, ExportFormat};
use commgraph::synth::gen_ring_of_cliques;

fn main() -> commgraph::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let g = gen_ring_of_cliques(4, 5)?.graph;
    let scores = compute_all(&g, true, &PageRankConfig::default())?;
    let partition = louvain(&g)?.final_partition().clone();
    let annotations = Annotations { partition: Some(&partition), scores: &scores };

    for format in [ExportFormat::Gexf, ExportFormat::Dot, ExportFormat::Json] {
        let bytes = export_graph(&g, annotations, format)?;
        let path = out.join(format!("ring.{}", format.extension()));
        write_bytes(&path, &bytes)?;
        println!("wrote {} ({} bytes)", path.display(), bytes.len());
        if format == ExportFormat::Json {
            assert_eq!(import_json(&bytes)?, g);
            println!("json re-import matches");
        }
    }
    Ok(())
}
