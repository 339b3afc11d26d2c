use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commgraph::centrality::{compute_all, PageRankConfig};
use commgraph::community::{girvan_newman, louvain};
use commgraph::export::{self, Annotations, ExportFormat};
use commgraph::ingest::load_dataset;
use commgraph::report::{run_pipeline, CorrelationMethod, Inputs, PipelineOptions};
use commgraph::synth::{gen_planted_partition, gen_ring_of_cliques};
use commgraph::{Error, Graph};

#[derive(Parser)]
#[command(name = "commgraph", version, about = "Collaboration-network analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: metrics, centrality, communities, correlation, report
    Analyze(AnalyzeArgs),
    /// Generate a synthetic graph and its ground-truth partition
    Synth(SynthArgs),
    /// Write graph exports annotated with communities and centrality
    Export(ExportArgs),
    /// Write the centrality table
    Centrality(DatasetArgs),
    /// Write the Louvain partition (and optionally a Girvan–Newman trace)
    Communities(CommunityArgs),
}

#[derive(Args)]
struct DatasetArgs {
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    nodes: Option<PathBuf>,
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Use duplicate counts as edge weights
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    dataset: DatasetArgs,
    #[arg(long)]
    validate_gn: bool,
    /// Rank correlation instead of Pearson
    #[arg(long)]
    spearman: bool,
    /// Comma-separated list of gexf, dot, json
    #[arg(long, value_delimiter = ',')]
    export: Vec<ExportFormat>,
    #[arg(long, default_value_t = 5)]
    top_k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    dataset: DatasetArgs,
    #[arg(long, value_delimiter = ',', default_value = "gexf,dot,json")]
    format: Vec<ExportFormat>,
}

#[derive(Args)]
struct CommunityArgs {
    #[command(flatten)]
    dataset: DatasetArgs,
    #[arg(long)]
    validate_gn: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    RingOfCliques,
    Planted,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    kind: SynthKind,
    /// Number of cliques or blocks
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Clique or block size
    #[arg(long, default_value_t = 5)]
    size: usize,
    #[arg(long, default_value_t = 0.3)]
    p_in: f64,
    #[arg(long, default_value_t = 0.01)]
    p_out: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn load(args: &DatasetArgs) -> commgraph::Result<Graph> {
    let (graph, _) = load_dataset(&args.edges, args.nodes.as_deref(), args.aliases.as_deref())?;
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(if args.weighted { graph } else { graph.unweighted() })
}

fn write_all(dir: &std::path::Path, files: &[(String, Vec<u8>)]) -> commgraph::Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    for (name, bytes) in files {
        let path = dir.join(name);
        export::write_bytes(&path, bytes)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn pagerank_config(args: &DatasetArgs) -> PageRankConfig {
    PageRankConfig {
        damping: args.damping,
        ..Default::default()
    }
}

fn run(cli: Cli) -> commgraph::Result<()> {
    match cli.command {
        Command::Analyze(args) => {
            let inputs = Inputs {
                edges: &args.dataset.edges,
                nodes: args.dataset.nodes.as_deref(),
                aliases: args.dataset.aliases.as_deref(),
            };
            let options = PipelineOptions {
                weighted: args.dataset.weighted,
                validate_gn: args.validate_gn,
                correlation: if args.spearman {
                    CorrelationMethod::Spearman
                } else {
                    CorrelationMethod::Pearson
                },
                top_k: args.top_k,
                damping: args.dataset.damping,
                seed: args.seed,
                exports: args.export,
                out_dir: Some(args.dataset.out.clone()),
            };
            let output = run_pipeline(&inputs, &options)?;
            let m = &output.report.metrics;
            let c = &output.report.communities;
            println!(
                "{} nodes, {} edges, {} communities (Q = {:.4})",
                m.node_count, m.edge_count, c.community_count, c.louvain_q
            );
            for (name, _) in &output.files {
                println!("wrote {}", args.dataset.out.join(name).display());
            }
        }
        Command::Synth(args) => {
            let synthetic = match args.kind {
                SynthKind::RingOfCliques => gen_ring_of_cliques(args.k, args.size)?,
                SynthKind::Planted => gen_planted_partition(args.k, args.size, args.p_in, args.p_out, args.seed)?,
            };
            let files = vec![
                ("nodes.csv".to_string(), export::node_csv(&synthetic.graph)?),
                ("edges.csv".to_string(), export::edge_csv(&synthetic.graph, false)?),
                ("truth.csv".to_string(), export::partition_csv(&synthetic.graph, &synthetic.truth)?),
            ];
            write_all(&args.out, &files)?;
        }
        Command::Export(args) => {
            let g = load(&args.dataset)?;
            let scores = compute_all(&g, true, &pagerank_config(&args.dataset))?;
            let partition = louvain(&g)?.final_partition().clone();
            let annotations = Annotations {
                partition: Some(&partition),
                scores: &scores,
            };
            let files = args
                .format
                .iter()
                .map(|&f| Ok((format!("graph.{}", f.extension()), export::export_graph(&g, annotations, f)?)))
                .collect::<commgraph::Result<Vec<_>>>()?;
            write_all(&args.dataset.out, &files)?;
        }
        Command::Centrality(args) => {
            let g = load(&args)?;
            let scores = compute_all(&g, true, &pagerank_config(&args))?;
            write_all(&args.out, &[("centrality.csv".into(), export::centrality_csv(&g, &scores)?)])?;
        }
        Command::Communities(args) => {
            let g = load(&args.dataset)?;
            let dendrogram = louvain(&g)?;
            println!(
                "louvain: {} communities, Q = {:.6}",
                dendrogram.final_partition().community_count(),
                dendrogram.final_q()
            );
            let mut files = vec![(
                "partition.csv".to_string(),
                export::partition_csv(&g, dendrogram.final_partition())?,
            )];
            if args.validate_gn {
                let trace = girvan_newman(&g)?;
                println!("girvan-newman: best Q = {:.6} after {} removals", trace.best_q, trace.best_step);
                files.push(("gn_trace.csv".into(), export::gn_trace_csv(&g, &trace)?));
            }
            write_all(&args.dataset.out, &files)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
