//! Plain-text edge lists and shell assignment files.
//!
//! Edge lists follow the SNAP convention: one edge per line, two
//! whitespace-separated node labels, `#` starting a comment line. Columns
//! past the second are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use shellwalk_core::{CleaningReport, Graph, GraphBuilder, Label, ShellAssignment};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngestOptions {
    /// Reject labels that are not non-negative integers.
    pub numeric_labels: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions { numeric_labels: true }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub cleaning: CleaningReport,
    pub comment_lines: usize,
}

pub fn load_edge_list(path: &Path, options: IngestOptions) -> Result<LoadedGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file), path, options)
}

/// Parses an edge list from any reader; `origin` only labels error messages.
pub fn read_edge_list<R: BufRead>(reader: R, origin: &Path, options: IngestOptions) -> Result<LoadedGraph> {
    let mut builder = GraphBuilder::new();
    let mut comment_lines = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            comment_lines += 1;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                line: i + 1,
                message: format!("expected two node labels, found {trimmed:?}"),
            });
        };
        let a = parse_label(a, options, origin, i + 1)?;
        let b = parse_label(b, options, origin, i + 1)?;
        builder.add_edge(a, b);
    }
    let (graph, cleaning) = builder.build();
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph(origin.to_path_buf()));
    }
    Ok(LoadedGraph {
        graph,
        cleaning,
        comment_lines,
    })
}

fn parse_label(token: &str, options: IngestOptions, origin: &Path, line: usize) -> Result<Label> {
    let label = Label::parse(token);
    if options.numeric_labels && matches!(label, Label::Text(_)) {
        return Err(Error::Parse {
            path: origin.to_path_buf(),
            line,
            message: format!("label {token:?} is not a non-negative integer"),
        });
    }
    Ok(label)
}

/// Writes every edge once as `a b` with `a < b` by label, sorted by label pair.
///
/// The output depends only on the edge set, not on input order.
pub fn write_canonical_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    let mut pairs: Vec<(&Label, &Label)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    pairs.sort_unstable();
    writeln!(w, "# edges: {}", pairs.len())?;
    for (a, b) in pairs {
        writeln!(w, "{a} {b}")?;
    }
    w.flush()
}

/// Two columns: external label and shell index, in internal id order.
pub fn write_shell_assignment<W: Write>(g: &Graph, a: &ShellAssignment, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# label shell")?;
    for u in g.nodes() {
        writeln!(w, "{} {}", g.label(u), a.shell(u))?;
    }
    w.flush()
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// Opens `path` for writing and hands the writer to `f`, mapping IO errors to the path.
pub fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_csv_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::result::Result<(), csv::Error>) -> Result<()> {
    let mut w = create(path)?;
    f(&mut w).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    w.flush().map_err(|e| Error::io(path, e))
}
