//! The end-to-end analysis pipeline and its JSON report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::centrality::{compute_all, rank_top_k, CentralityVector, Measure, PageRankConfig, RankedNode};
use crate::community::{compare_partitions, girvan_newman, louvain, GnTrace};
use crate::error::{Error, Result};
use crate::export::{self, Annotations, ExportFormat};
use crate::graph::{Graph, NodeId};
use crate::ingest::{load_dataset_files, CleaningLog, DatasetFiles};
use crate::metrics::{global_metrics, max_degree_node, MetricsReport};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationMethod {
    #[default]
    Pearson,
    Spearman,
}

/// Pairwise correlation between centrality measures.
///
/// Entries involving a constant vector are `None` (serialized as `null`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub method: CorrelationMethod,
    pub measures: Vec<Measure>,
    pub matrix: Vec<Vec<Option<f64>>>,
    pub warnings: Vec<String>,
}

fn is_constant(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x == xs[0])
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Ranks starting at 1, tied values sharing their mean rank.
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn correlation_matrix(vectors: &[CentralityVector], method: CorrelationMethod) -> Result<CorrelationMatrix> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidParameter("no vectors to correlate".into()));
    };
    let n = first.len();
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::SizeMismatch { left: v.len(), right: n });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("correlation needs at least 2 observations, got {n}")));
    }
    let data: Vec<Vec<f64>> = vectors
        .iter()
        .map(|v| match method {
            CorrelationMethod::Pearson => v.scores.clone(),
            CorrelationMethod::Spearman => average_ranks(&v.scores),
        })
        .collect();
    let constant: Vec<bool> = data.iter().map(|x| is_constant(x)).collect();
    let mut warnings = Vec::new();
    for (v, &c) in vectors.iter().zip(&constant) {
        if c {
            let message = format!("{} scores are constant; their correlations are undefined", v.measure);
            log::warn!("{message}");
            warnings.push(message);
        }
    }
    let k = vectors.len();
    let mut matrix = vec![vec![None; k]; k];
    for i in 0..k {
        if constant[i] {
            continue;
        }
        matrix[i][i] = Some(1.0);
        for j in i + 1..k {
            if !constant[j] {
                let r = pearson(&data[i], &data[j]);
                matrix[i][j] = Some(r);
                matrix[j][i] = Some(r);
            }
        }
    }
    Ok(CorrelationMatrix {
        method,
        measures: vectors.iter().map(|v| v.measure).collect(),
        matrix,
        warnings,
    })
}

pub fn pearson_correlation_matrix(vectors: &[CentralityVector]) -> Result<CorrelationMatrix> {
    correlation_matrix(vectors, CorrelationMethod::Pearson)
}

/// Pearson correlation of average ranks.
pub fn spearman_correlation_matrix(vectors: &[CentralityVector]) -> Result<CorrelationMatrix> {
    correlation_matrix(vectors, CorrelationMethod::Spearman)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityRow {
    pub label: String,
    pub degree: f64,
    pub betweenness: f64,
    pub closeness: f64,
    pub harmonic: f64,
    pub pagerank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralitySection {
    pub normalized: bool,
    pub pagerank_damping: f64,
    pub max_degree_node: Option<String>,
    /// One row per node, sorted by label.
    pub table: Vec<CentralityRow>,
    pub top_k: BTreeMap<Measure, Vec<RankedNode>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub label: String,
    pub community: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySection {
    pub algorithm: String,
    pub community_count: usize,
    pub community_sizes: Vec<usize>,
    pub louvain_q: f64,
    pub q_per_level: Vec<f64>,
    pub partition: Vec<Assignment>,
    pub gn_best_q: Option<f64>,
    pub gn_best_community_count: Option<usize>,
    pub gn_best_step: Option<usize>,
    pub louvain_gn_nmi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub weighted: bool,
    pub validate_gn: bool,
    pub correlation: CorrelationMethod,
    pub top_k: usize,
    pub damping: f64,
    pub seed: u64,
    pub exports: Vec<ExportFormat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub tool_version: String,
    /// SHA-256 over the edge, node and alias file contents.
    pub input_digest: String,
    pub flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub metrics: MetricsReport,
    pub centrality: CentralitySection,
    pub communities: CommunitySection,
    pub correlation: CorrelationMatrix,
    pub cleaning: CleaningLog,
    pub meta: Meta,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    /// Use collapsed duplicate counts as edge weights for PageRank and
    /// community detection. Path measures always count hops.
    pub weighted: bool,
    pub validate_gn: bool,
    pub correlation: CorrelationMethod,
    pub top_k: usize,
    pub damping: f64,
    /// Recorded in the report. Every stage is deterministic, so the seed
    /// does not change results.
    pub seed: u64,
    pub exports: Vec<ExportFormat>,
    /// Where to write outputs; `None` computes without writing.
    pub out_dir: Option<PathBuf>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            weighted: false,
            validate_gn: false,
            correlation: CorrelationMethod::Pearson,
            top_k: 5,
            damping: 0.85,
            seed: 42,
            exports: Vec::new(),
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Inputs<'a> {
    pub edges: &'a Path,
    pub nodes: Option<&'a Path>,
    pub aliases: Option<&'a Path>,
}

/// Everything the pipeline produced, before or after writing.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub report: AnalysisReport,
    pub graph: Graph,
    pub centralities: Vec<CentralityVector>,
    pub partition: Partition,
    pub gn_trace: Option<GnTrace>,
    /// File name and contents of every output, in write order.
    pub files: Vec<(String, Vec<u8>)>,
}

pub fn input_digest(files: &DatasetFiles<'_>) -> String {
    let mut hasher = Sha256::new();
    let parts = [
        ("edges", Some(&files.edges.1)),
        ("nodes", files.nodes.as_ref().map(|n| &n.1)),
        ("aliases", files.aliases.as_ref().map(|a| &a.1)),
    ];
    for (name, bytes) in parts {
        hasher.update(name.as_bytes());
        match bytes {
            Some(bytes) => {
                hasher.update((bytes.len() as u64).to_le_bytes());
                hasher.update(bytes);
            }
            None => hasher.update(u64::MAX.to_le_bytes()),
        }
    }
    hex::encode(hasher.finalize())
}

fn partition_rows(g: &Graph, p: &Partition) -> Vec<Assignment> {
    let mut rows: Vec<Assignment> = (0..g.node_count())
        .map(|v| Assignment {
            label: g.label(v).to_string(),
            community: p.community_of(v),
        })
        .collect();
    rows.sort_by(|a, b| a.label.cmp(&b.label));
    rows
}

fn centrality_rows(g: &Graph, vectors: &[CentralityVector]) -> Vec<CentralityRow> {
    let score = |m: Measure, v: NodeId| {
        vectors
            .iter()
            .find(|x| x.measure == m)
            .map_or(f64::NAN, |x| x.scores[v])
    };
    let mut rows: Vec<CentralityRow> = (0..g.node_count())
        .map(|v| CentralityRow {
            label: g.label(v).to_string(),
            degree: score(Measure::Degree, v),
            betweenness: score(Measure::Betweenness, v),
            closeness: score(Measure::Closeness, v),
            harmonic: score(Measure::Harmonic, v),
            pagerank: score(Measure::Pagerank, v),
        })
        .collect();
    rows.sort_by(|a, b| a.label.cmp(&b.label));
    rows
}

/// Ingest, metrics, centrality, Louvain, optional Girvan–Newman,
/// correlation, then writes. Nothing is written unless every stage
/// succeeded.
pub fn run_pipeline(inputs: &Inputs<'_>, options: &PipelineOptions) -> Result<PipelineOutput> {
    let files = DatasetFiles::read(inputs.edges, inputs.nodes, inputs.aliases)?;
    run_pipeline_files(&files, options)
}

pub fn run_pipeline_files(files: &DatasetFiles<'_>, options: &PipelineOptions) -> Result<PipelineOutput> {
    if options.top_k == 0 {
        return Err(Error::InvalidParameter("top-k must be at least 1".into()));
    }
    let (graph, cleaning) = load_dataset_files(files)?;
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let analysed = if options.weighted { graph.clone() } else { graph.unweighted() };

    let metrics = global_metrics(&analysed)?;
    let pagerank_config = PageRankConfig {
        damping: options.damping,
        ..Default::default()
    };
    let centralities = compute_all(&analysed, true, &pagerank_config)?;
    let dendrogram = louvain(&analysed)?;
    let partition = dendrogram.final_partition().clone();
    let gn_trace = if options.validate_gn {
        Some(girvan_newman(&analysed)?)
    } else {
        None
    };
    let correlation = correlation_matrix(&centralities, options.correlation)?;

    let mut top_k = BTreeMap::new();
    for v in &centralities {
        top_k.insert(v.measure, rank_top_k(&graph, v, options.top_k)?);
    }
    let louvain_gn_nmi = match &gn_trace {
        Some(t) => Some(compare_partitions(&partition, &t.best_partition)?.nmi),
        None => None,
    };

    let report = AnalysisReport {
        metrics,
        centrality: CentralitySection {
            normalized: true,
            pagerank_damping: options.damping,
            max_degree_node: max_degree_node(&graph).map(|v| graph.label(v).to_string()),
            table: centrality_rows(&graph, &centralities),
            top_k,
        },
        communities: CommunitySection {
            algorithm: "louvain".into(),
            community_count: partition.community_count(),
            community_sizes: partition.sizes(),
            louvain_q: dendrogram.final_q(),
            q_per_level: dendrogram.q_per_level.clone(),
            partition: partition_rows(&graph, &partition),
            gn_best_q: gn_trace.as_ref().map(|t| t.best_q),
            gn_best_community_count: gn_trace.as_ref().map(|t| t.best_partition.community_count()),
            gn_best_step: gn_trace.as_ref().map(|t| t.best_step),
            louvain_gn_nmi,
        },
        correlation,
        cleaning,
        meta: Meta {
            tool: env!("CARGO_PKG_NAME").into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            input_digest: input_digest(files),
            flags: Flags {
                weighted: options.weighted,
                validate_gn: options.validate_gn,
                correlation: options.correlation,
                top_k: options.top_k,
                damping: options.damping,
                seed: options.seed,
                exports: options.exports.clone(),
            },
        },
    };

    let mut out_files = vec![
        ("report.json".to_string(), report.to_json()?),
        ("centrality.csv".to_string(), export::centrality_csv(&graph, &centralities)?),
        ("partition.csv".to_string(), export::partition_csv(&graph, &partition)?),
    ];
    if let Some(trace) = &gn_trace {
        out_files.push(("gn_trace.csv".to_string(), export::gn_trace_csv(&graph, trace)?));
    }
    let annotations = Annotations {
        partition: Some(&partition),
        scores: &centralities,
    };
    for &format in &options.exports {
        let bytes = export::export_graph(&graph, annotations, format)?;
        out_files.push((format!("graph.{}", format.extension()), bytes));
    }

    if let Some(dir) = &options.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| Error::Write {
            path: dir.clone(),
            source,
        })?;
        for (name, bytes) in &out_files {
            export::write_bytes(&dir.join(name), bytes)?;
        }
    }

    Ok(PipelineOutput {
        report,
        graph,
        centralities,
        partition,
        gn_trace,
        files: out_files,
    })
}
