//! Load an edge list with an optional node table and print what cleaning did.
//!
//!     cargo run --example load_dataset -- edges.csv [nodes.csv] [aliases.csv]

use std::path::PathBuf;

use commgraph::ingest::load_dataset;

fn main() -> commgraph::Result<()> {
    let mut args = std::env::args().skip(1).map(PathBuf::from);
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sample40");
    let (edges, nodes) = match args.next() {
        Some(e) => (e, args.next()),
        None => (fixture.join("edges.csv"), Some(fixture.join("nodes.csv"))),
    };
    let aliases = args.next();

    let (g, log) = load_dataset(&edges, nodes.as_deref(), aliases.as_deref())?;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());
    println!(
        "rows read {}, duplicates collapsed {}, self-loops dropped {}, rejected {}",
        log.rows_read,
        log.duplicates_collapsed,
        log.self_loops_dropped,
        log.rows_rejected.len()
    );
    for r in &log.rows_rejected {
        println!("  line {}: {}", r.line_no, r.reason);
    }
    for m in &log.labels_merged {
        println!("  merged {:?} -> {:?}", m.variant, m.canonical);
    }
    Ok(())
}
