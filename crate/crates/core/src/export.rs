//! Graph exports (GEXF 1.2, Graphviz DOT, JSON) and the CSV tables.
//!
//! All writers emit nodes in id order and edges in `(u, v)` order, so output
//! bytes depend only on their inputs.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityVector, Measure};
use crate::community::GnTrace;
use crate::error::{Error, Result};
use crate::graph::{canonical_key, Graph, NodeKind, NodeRecord};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Gexf,
    Dot,
    Json,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Gexf => "gexf",
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "gexf" => Ok(ExportFormat::Gexf),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::InvalidParameter(format!("unknown export format `{other}`"))),
        }
    }
}

/// Optional per-node annotations attached to an export.
#[derive(Debug, Clone, Copy, Default)]
pub struct Annotations<'a> {
    pub partition: Option<&'a Partition>,
    pub scores: &'a [CentralityVector],
}

impl Annotations<'_> {
    fn check(&self, g: &Graph) -> Result<()> {
        let n = g.node_count();
        let lengths = self
            .partition
            .map(|p| p.node_count())
            .into_iter()
            .chain(self.scores.iter().map(|v| v.len()));
        for len in lengths {
            if len != n {
                return Err(Error::SizeMismatch { left: len, right: n });
            }
        }
        Ok(())
    }
}

pub fn export_graph(g: &Graph, annotations: Annotations<'_>, format: ExportFormat) -> Result<Vec<u8>> {
    annotations.check(g)?;
    Ok(match format {
        ExportFormat::Gexf => to_gexf(g, annotations).into_bytes(),
        ExportFormat::Dot => to_dot(g, annotations).into_bytes(),
        ExportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(&GraphDocument::new(g, annotations))?;
            bytes.push(b'\n');
            bytes
        }
    })
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn to_gexf(g: &Graph, a: Annotations<'_>) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<gexf xmlns=\"http://www.gexf.net/1.2draft\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://www.gexf.net/1.2draft http://www.gexf.net/1.2draft/gexf.xsd\" \
         version=\"1.2\">\n",
    );
    let _ = writeln!(out, "  <meta>\n    <creator>commgraph {}</creator>\n  </meta>", env!("CARGO_PKG_VERSION"));
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");

    out.push_str("    <attributes class=\"node\" mode=\"static\">\n");
    out.push_str("      <attribute id=\"kind\" title=\"kind\" type=\"string\"/>\n");
    out.push_str("      <attribute id=\"location\" title=\"location\" type=\"string\"/>\n");
    out.push_str("      <attribute id=\"external_score\" title=\"external_score\" type=\"double\"/>\n");
    if a.partition.is_some() {
        out.push_str("      <attribute id=\"community\" title=\"community\" type=\"integer\"/>\n");
    }
    for v in a.scores {
        let _ = writeln!(out, "      <attribute id=\"{0}\" title=\"{0}\" type=\"double\"/>", v.measure);
    }
    out.push_str("    </attributes>\n");

    out.push_str("    <nodes>\n");
    for (id, record) in g.nodes().iter().enumerate() {
        let _ = writeln!(out, "      <node id=\"{id}\" label=\"{}\">", xml_escape(&record.label));
        out.push_str("        <attvalues>\n");
        let mut value = |key: &str, text: String| {
            let _ = writeln!(out, "          <attvalue for=\"{key}\" value=\"{}\"/>", xml_escape(&text));
        };
        value("kind", record.kind.as_str().to_string());
        if let Some(location) = &record.location {
            value("location", location.clone());
        }
        if let Some(score) = record.external_score {
            value("external_score", score.to_string());
        }
        if let Some(p) = a.partition {
            value("community", p.community_of(id).to_string());
        }
        for vector in a.scores {
            value(vector.measure.as_str(), vector.scores[id].to_string());
        }
        out.push_str("        </attvalues>\n");
        out.push_str("      </node>\n");
    }
    out.push_str("    </nodes>\n");

    out.push_str("    <edges>\n");
    for (i, e) in g.edges().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"{i}\" source=\"{}\" target=\"{}\" weight=\"{}\"/>",
            e.u, e.v, e.weight
        );
    }
    out.push_str("    </edges>\n");
    out.push_str("  </graph>\n</gexf>\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Colors come from the 12-entry `set312` Graphviz scheme, indexed by
/// community id modulo 12.
fn to_dot(g: &Graph, a: Annotations<'_>) -> String {
    let mut out = String::from("graph commgraph {\n");
    if a.partition.is_some() {
        out.push_str("  node [colorscheme=set312, style=filled];\n");
    }
    for (id, record) in g.nodes().iter().enumerate() {
        let _ = write!(out, "  {id} [label=\"{}\"", dot_escape(&record.label));
        if let Some(p) = a.partition {
            let c = p.community_of(id);
            let _ = write!(out, ", community={c}, fillcolor={}", c % 12 + 1);
        }
        for vector in a.scores {
            let _ = write!(out, ", {}={}", vector.measure, vector.scores[id]);
        }
        out.push_str("];\n");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {} [weight={}];", e.u, e.v, e.weight);
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonNode {
    pub id: usize,
    pub label: String,
    pub kind: NodeKind,
    pub location: Option<String>,
    pub external_score: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub community: Option<usize>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub centrality: std::collections::BTreeMap<Measure, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub directed: bool,
    pub nodes: Vec<JsonNode>,
    pub edges: Vec<JsonEdge>,
}

impl GraphDocument {
    pub fn new(g: &Graph, a: Annotations<'_>) -> Self {
        let nodes = g
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, r)| JsonNode {
                id,
                label: r.label.clone(),
                kind: r.kind,
                location: r.location.clone(),
                external_score: r.external_score,
                community: a.partition.map(|p| p.community_of(id)),
                centrality: a.scores.iter().map(|v| (v.measure, v.scores[id])).collect(),
            })
            .collect();
        let edges = g
            .edges()
            .map(|e| JsonEdge {
                source: e.u,
                target: e.v,
                weight: e.weight,
            })
            .collect();
        GraphDocument {
            directed: false,
            nodes,
            edges,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(Error::InvalidParameter(format!("node ids must be 0..N in order, found {} at {i}", node.id)));
            }
        }
        let n = self.nodes.len();
        for e in &self.edges {
            if e.source >= n || e.target >= n || !(e.weight > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "invalid edge ({}, {}, {})",
                    e.source, e.target, e.weight
                )));
            }
        }
        let records = self
            .nodes
            .iter()
            .map(|node| NodeRecord {
                label: node.label.clone(),
                kind: node.kind,
                location: node.location.clone(),
                external_score: node.external_score,
            })
            .collect();
        Ok(Graph::from_parts(records, self.edges.iter().map(|e| (e.source, e.target, e.weight))).0)
    }
}

/// Reads a graph back from [`ExportFormat::Json`] output.
pub fn import_json(bytes: &[u8]) -> Result<Graph> {
    serde_json::from_slice::<GraphDocument>(bytes)?.to_graph()
}

/// `printf("%g")`-style formatting with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    const PRECISION: i32 = 6;
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-4..PRECISION).contains(&exp) {
        trim(format!("{:.*}", (PRECISION - 1 - exp) as usize, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa.to_string()), exp.abs())
    }
}

fn sorted_by_label(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by_cached_key(|&v| (canonical_key(g.label(v)), g.label(v).to_string(), v));
    order
}

fn csv_bytes<F>(header: &[&str], fill: F) -> Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> std::result::Result<(), csv::Error>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let run = |w: &mut csv::Writer<Vec<u8>>| -> std::result::Result<(), csv::Error> {
        w.write_record(header)?;
        fill(w)?;
        w.flush()?;
        Ok(())
    };
    run(&mut w).map_err(|source| Error::Csv {
        path: "<memory>".into(),
        source,
    })?;
    w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Edge list in the ingest format. Weights are written only when asked.
pub fn edge_csv(g: &Graph, with_weights: bool) -> Result<Vec<u8>> {
    let header: &[&str] = if with_weights {
        &["source", "target", "weight"]
    } else {
        &["source", "target"]
    };
    csv_bytes(header, |w| {
        for e in g.edges() {
            if with_weights {
                w.write_record([g.label(e.u), g.label(e.v), &e.weight.to_string()])?;
            } else {
                w.write_record([g.label(e.u), g.label(e.v)])?;
            }
        }
        Ok(())
    })
}

/// Node table in the ingest format, in id order.
pub fn node_csv(g: &Graph) -> Result<Vec<u8>> {
    csv_bytes(&["label", "kind", "location", "score"], |w| {
        for r in g.nodes() {
            let score = r.external_score.map(|s| s.to_string()).unwrap_or_default();
            w.write_record([r.label.as_str(), r.kind.as_str(), r.location.as_deref().unwrap_or(""), &score])?;
        }
        Ok(())
    })
}

/// `label,community` rows sorted by label.
pub fn partition_csv(g: &Graph, p: &Partition) -> Result<Vec<u8>> {
    if p.node_count() != g.node_count() {
        return Err(Error::SizeMismatch {
            left: p.node_count(),
            right: g.node_count(),
        });
    }
    csv_bytes(&["label", "community"], |w| {
        for v in sorted_by_label(g) {
            w.write_record([g.label(v), &p.community_of(v).to_string()])?;
        }
        Ok(())
    })
}

/// Reads a `label,community` table back into a partition of `g`.
pub fn parse_partition_csv(g: &Graph, bytes: &[u8]) -> Result<Partition> {
    let mut rdr = csv::Reader::from_reader(bytes);
    let mut labels = vec![usize::MAX; g.node_count()];
    for record in rdr.records() {
        let record = record.map_err(|source| Error::Csv {
            path: "<partition>".into(),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let label = record.get(0).unwrap_or_default();
        let v = g.find(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            line,
        })?;
        labels[v] = record
            .get(1)
            .and_then(|c| c.trim().parse().ok())
            .ok_or_else(|| Error::InvalidParameter(format!("line {line}: bad community id")))?;
    }
    if let Some(v) = labels.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidParameter(format!("node `{}` has no community", g.label(v))));
    }
    Ok(Partition::from_assignment(&labels))
}

/// `label,degree,betweenness,closeness,harmonic,pagerank`, six significant
/// digits, rows sorted by label.
pub fn centrality_csv(g: &Graph, vectors: &[CentralityVector]) -> Result<Vec<u8>> {
    let mut columns = Vec::with_capacity(Measure::ALL.len());
    for measure in Measure::ALL {
        let v = vectors
            .iter()
            .find(|v| v.measure == measure)
            .ok_or_else(|| Error::InvalidParameter(format!("missing {measure} scores")))?;
        if v.len() != g.node_count() {
            return Err(Error::SizeMismatch {
                left: v.len(),
                right: g.node_count(),
            });
        }
        columns.push(v);
    }
    let mut header = vec!["label"];
    header.extend(Measure::ALL.iter().map(|m| m.as_str()));
    csv_bytes(&header, |w| {
        for v in sorted_by_label(g) {
            let mut row = vec![g.label(v).to_string()];
            row.extend(columns.iter().map(|c| format_sig6(c.scores[v])));
            w.write_record(&row)?;
        }
        Ok(())
    })
}

/// `step,removed_u,removed_v,modularity`, endpoints by label.
pub fn gn_trace_csv(g: &Graph, trace: &GnTrace) -> Result<Vec<u8>> {
    csv_bytes(&["step", "removed_u", "removed_v", "modularity"], |w| {
        for r in &trace.removals {
            w.write_record([&r.step.to_string(), g.label(r.u), g.label(r.v), &r.modularity.to_string()])?;
        }
        Ok(())
    })
}
