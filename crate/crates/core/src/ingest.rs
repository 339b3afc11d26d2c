//! CSV ingestion and cleaning.
//!
//! Three file formats are understood, all comma-separated with RFC 4180
//! quoting and a mandatory header row:
//!
//! * edges: `source,target[,weight]`
//! * nodes: `label[,kind][,location][,score]`
//! * aliases: `variant,canonical`
//!
//! Labels are matched after trimming, collapsing internal whitespace and
//! case-folding. Abbreviations are only reconciled through an alias file.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, canonical_key, tidy_label, Graph, NodeKind, NodeRecord};

pub use crate::graph::RawEdgeRow;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    pub line_no: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMerge {
    pub variant: String,
    pub canonical: String,
}

/// Everything the cleaning stage did to the input.
///
/// `rows_read` always equals accepted edges (counted with multiplicity),
/// plus dropped self-loops, plus rejected rows.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleaningLog {
    pub rows_read: usize,
    pub duplicates_collapsed: usize,
    pub self_loops_dropped: usize,
    pub labels_merged: Vec<LabelMerge>,
    pub rows_rejected: Vec<RejectedRow>,
    pub warnings: Vec<String>,
}

impl CleaningLog {
    fn reject(&mut self, line_no: usize, reason: impl Into<String>) {
        let reason = reason.into();
        log::warn!("line {line_no}: rejected: {reason}");
        self.rows_rejected.push(RejectedRow { line_no, reason });
    }

    fn warn(&mut self, message: String) {
        log::warn!("{message}");
        self.warnings.push(message);
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeTable {
    pub records: Vec<NodeRecord>,
    /// 1-based file line of each record.
    pub lines: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Maps canonical variant keys to the preferred display label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasTable {
    map: HashMap<String, String>,
}

impl AliasTable {
    pub fn insert(&mut self, variant: &str, canonical: &str) {
        self.map.insert(canonical_key(variant), tidy_label(canonical));
    }

    /// Display label for `raw`: the alias target if one exists, otherwise
    /// the tidied input.
    pub fn resolve(&self, raw: &str) -> String {
        self.map
            .get(&canonical_key(raw))
            .cloned()
            .unwrap_or_else(|| tidy_label(raw))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes)
}

/// Reads the header row and returns its lower-cased, trimmed column names.
fn read_header(rdr: &mut csv::Reader<&[u8]>, path: &Path, expected: &str) -> Result<Vec<String>> {
    let mut record = csv::ByteRecord::new();
    let found = rdr.read_byte_record(&mut record).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    let header_error = |found: String| Error::Header {
        path: path.to_path_buf(),
        expected: expected.to_string(),
        found,
    };
    if !found {
        return Err(header_error(String::new()));
    }
    record
        .iter()
        .map(|f| {
            std::str::from_utf8(f)
                .map(|s| s.trim().trim_start_matches('\u{feff}').to_lowercase())
                .map_err(|_| header_error("<invalid UTF-8>".into()))
        })
        .collect()
}

fn line_of(record: &csv::ByteRecord) -> usize {
    record.position().map_or(0, |p| p.line() as usize)
}

pub fn parse_edge_csv(path: &Path) -> Result<(Vec<RawEdgeRow>, CleaningLog)> {
    parse_edge_csv_bytes(&read_file(path)?, path)
}

/// Parses edge CSV content. `path` is only used in error messages.
///
/// Every data row either becomes a [`RawEdgeRow`] or a rejection entry in
/// the returned log.
pub fn parse_edge_csv_bytes(bytes: &[u8], path: &Path) -> Result<(Vec<RawEdgeRow>, CleaningLog)> {
    const EXPECTED: &str = "source,target[,weight]";
    let mut rdr = reader(bytes);
    let header = read_header(&mut rdr, path, EXPECTED)?;
    let has_weight = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["source", "target"] => false,
        ["source", "target", "weight"] => true,
        _ => {
            return Err(Error::Header {
                path: path.to_path_buf(),
                expected: EXPECTED.into(),
                found: header.join(","),
            })
        }
    };
    let width = header.len();

    let mut rows = Vec::new();
    let mut log = CleaningLog::default();
    let mut record = csv::ByteRecord::new();
    loop {
        match rdr.read_byte_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(source) => {
                return Err(Error::Csv {
                    path: path.to_path_buf(),
                    source,
                })
            }
        }
        log.rows_read += 1;
        let line_no = line_of(&record);
        if record.len() != width {
            log.reject(line_no, format!("expected {width} fields, found {}", record.len()));
            continue;
        }
        let fields: Option<Vec<&str>> = record.iter().map(|f| std::str::from_utf8(f).ok()).collect();
        let Some(fields) = fields else {
            log.reject(line_no, "invalid UTF-8");
            continue;
        };
        let (source, target) = (fields[0].trim(), fields[1].trim());
        if source.is_empty() {
            log.reject(line_no, "empty source");
            continue;
        }
        if target.is_empty() {
            log.reject(line_no, "empty target");
            continue;
        }
        let weight = if has_weight && !fields[2].trim().is_empty() {
            let text = fields[2].trim();
            match text.parse::<f64>() {
                Ok(w) if w.is_finite() && w > 0.0 => Some(w),
                Ok(_) => {
                    log.reject(line_no, format!("weight must be positive, found `{text}`"));
                    continue;
                }
                Err(_) => {
                    log.reject(line_no, format!("non-numeric weight `{text}`"));
                    continue;
                }
            }
        } else {
            None
        };
        rows.push(RawEdgeRow {
            source_label: source.to_string(),
            target_label: target.to_string(),
            weight,
            line_no,
        });
    }
    Ok((rows, log))
}

pub fn parse_node_csv(path: &Path) -> Result<NodeTable> {
    parse_node_csv_bytes(&read_file(path)?, path)
}

/// Parses node CSV content.
///
/// Unknown kinds fall back to [`NodeKind::Other`]; unparsable or negative
/// scores are dropped. Both produce a warning. Two rows with the same
/// canonical label are a hard error.
pub fn parse_node_csv_bytes(bytes: &[u8], path: &Path) -> Result<NodeTable> {
    const EXPECTED: &str = "label[,kind][,location][,score]";
    let mut rdr = reader(bytes);
    let header = read_header(&mut rdr, path, EXPECTED)?;
    let bad_header = || Error::Header {
        path: path.to_path_buf(),
        expected: EXPECTED.into(),
        found: header.join(","),
    };
    if header.first().map(String::as_str) != Some("label") {
        return Err(bad_header());
    }
    let mut column = HashMap::new();
    for (i, name) in header.iter().enumerate().skip(1) {
        if !matches!(name.as_str(), "kind" | "location" | "score") || column.insert(name.as_str(), i).is_some() {
            return Err(bad_header());
        }
    }

    let mut table = NodeTable::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut record = csv::ByteRecord::new();
    loop {
        match rdr.read_byte_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(source) => {
                return Err(Error::Csv {
                    path: path.to_path_buf(),
                    source,
                })
            }
        }
        let line_no = line_of(&record);
        let field = |name: &str| -> Option<String> {
            let i = *column.get(name)?;
            let raw = record.get(i)?;
            let s = String::from_utf8_lossy(raw).trim().to_string();
            (!s.is_empty()).then_some(s)
        };
        let label = tidy_label(&String::from_utf8_lossy(record.get(0).unwrap_or_default()));
        if label.is_empty() {
            let message = format!("line {line_no}: node row without a label skipped");
            log::warn!("{message}");
            table.warnings.push(message);
            continue;
        }
        if let Some(&first_line) = seen.get(&canonical_key(&label)) {
            return Err(Error::DuplicateLabel {
                label,
                first_line,
                second_line: line_no,
            });
        }
        seen.insert(canonical_key(&label), line_no);

        let kind = match field("kind") {
            None => NodeKind::Other,
            Some(text) => NodeKind::parse(&text).unwrap_or_else(|| {
                let message = format!("line {line_no}: unknown kind `{text}` for `{label}`, using `other`");
                log::warn!("{message}");
                table.warnings.push(message);
                NodeKind::Other
            }),
        };
        let external_score = field("score").and_then(|text| match text.parse::<f64>() {
            Ok(s) if s.is_finite() && s >= 0.0 => Some(s),
            _ => {
                let message = format!("line {line_no}: invalid score `{text}` for `{label}` ignored");
                log::warn!("{message}");
                table.warnings.push(message);
                None
            }
        });
        table.records.push(NodeRecord {
            label,
            kind,
            location: field("location"),
            external_score,
        });
        table.lines.push(line_no);
    }
    Ok(table)
}

pub fn parse_alias_csv(path: &Path) -> Result<AliasTable> {
    parse_alias_csv_bytes(&read_file(path)?, path)
}

pub fn parse_alias_csv_bytes(bytes: &[u8], path: &Path) -> Result<AliasTable> {
    let mut rdr = reader(bytes);
    let header = read_header(&mut rdr, path, "variant,canonical")?;
    if header != ["variant", "canonical"] {
        return Err(Error::Header {
            path: path.to_path_buf(),
            expected: "variant,canonical".into(),
            found: header.join(","),
        });
    }
    let mut table = AliasTable::default();
    for record in rdr.byte_records() {
        let record = record.map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let variant = String::from_utf8_lossy(record.get(0).unwrap_or_default()).to_string();
        let canonical = String::from_utf8_lossy(record.get(1).unwrap_or_default()).to_string();
        if variant.trim().is_empty() || canonical.trim().is_empty() {
            log::warn!("{}: alias line {} incomplete, skipped", path.display(), line_of(&record));
            continue;
        }
        table.insert(&variant, &canonical);
    }
    Ok(table)
}

/// Raw file contents of one dataset. Keeping the bytes lets callers digest
/// exactly what was analysed.
#[derive(Debug, Clone)]
pub struct DatasetFiles<'a> {
    pub edges: (&'a Path, Vec<u8>),
    pub nodes: Option<(&'a Path, Vec<u8>)>,
    pub aliases: Option<(&'a Path, Vec<u8>)>,
}

impl<'a> DatasetFiles<'a> {
    pub fn read(edges: &'a Path, nodes: Option<&'a Path>, aliases: Option<&'a Path>) -> Result<Self> {
        Ok(DatasetFiles {
            edges: (edges, read_file(edges)?),
            nodes: nodes.map(|p| read_file(p).map(|b| (p, b))).transpose()?,
            aliases: aliases.map(|p| read_file(p).map(|b| (p, b))).transpose()?,
        })
    }
}

/// Reads, cleans and assembles a dataset into a graph.
///
/// Nodes listed in the node file come first, in file order; endpoints that
/// only occur in the edge file are appended in order of first appearance
/// with kind `other`.
pub fn load_dataset(edges: &Path, nodes: Option<&Path>, aliases: Option<&Path>) -> Result<(Graph, CleaningLog)> {
    load_dataset_files(&DatasetFiles::read(edges, nodes, aliases)?)
}

pub fn load_dataset_files(files: &DatasetFiles<'_>) -> Result<(Graph, CleaningLog)> {
    let aliases = match &files.aliases {
        Some((path, bytes)) => parse_alias_csv_bytes(bytes, path)?,
        None => AliasTable::default(),
    };
    let (rows, mut log) = parse_edge_csv_bytes(&files.edges.1, files.edges.0)?;

    let mut records: Vec<NodeRecord> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut merged: HashMap<(String, String), ()> = HashMap::new();

    if let Some((path, bytes)) = &files.nodes {
        let table = parse_node_csv_bytes(bytes, path)?;
        for warning in table.warnings {
            log.warnings.push(warning);
        }
        let mut first_line: HashMap<String, usize> = HashMap::new();
        for (mut record, line) in table.records.into_iter().zip(table.lines) {
            let display = aliases.resolve(&record.label);
            let key = canonical_key(&display);
            if let Some(&first) = first_line.get(&key) {
                return Err(Error::DuplicateLabel {
                    label: display,
                    first_line: first,
                    second_line: line,
                });
            }
            first_line.insert(key.clone(), line);
            if display != record.label {
                note_merge(&mut log, &mut merged, &record.label, &display);
                record.label = display;
            }
            index.insert(key, records.len());
            records.push(record);
        }
    }

    let mut resolved_rows = Vec::with_capacity(rows.len());
    for row in rows {
        let mut resolve = |raw: &str| -> String {
            let display = aliases.resolve(raw);
            let key = canonical_key(&display);
            let id = *index.entry(key).or_insert_with(|| {
                records.push(NodeRecord::new(display.clone()));
                records.len() - 1
            });
            let canonical = records[id].label.clone();
            let variant = tidy_label(raw);
            if variant != canonical {
                note_merge(&mut log, &mut merged, &variant, &canonical);
            }
            canonical
        };
        let source_label = resolve(&row.source_label);
        let target_label = resolve(&row.target_label);
        resolved_rows.push(RawEdgeRow {
            source_label,
            target_label,
            ..row
        });
    }

    let (graph, stats) = build_graph(records, &resolved_rows)?;
    log.duplicates_collapsed = stats.duplicates_collapsed;
    log.self_loops_dropped = stats.self_loops_dropped;
    Ok((graph, log))
}

fn note_merge(log: &mut CleaningLog, seen: &mut HashMap<(String, String), ()>, variant: &str, canonical: &str) {
    let key = (variant.to_string(), canonical.to_string());
    if seen.insert(key, ()).is_none() {
        log.warn(format!("label `{variant}` merged into `{canonical}`"));
        log.labels_merged.push(LabelMerge {
            variant: variant.to_string(),
            canonical: canonical.to_string(),
        });
    }
}
