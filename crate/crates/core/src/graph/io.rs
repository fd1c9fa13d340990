//! The `spr-graph` text format.
//!
//! ```text
//! spr-graph 1
//! n m k
//! <k lines: one terminal id each>
//! <m lines: u v w>
//! ```
//!
//! Ids are 0-based, weights are decimal reals, and lines starting with `#`
//! (as well as blank lines) are ignored anywhere in the file.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{VertexId, WeightedGraph};
use crate::error::{Result, SprError};

const MAGIC: &str = "spr-graph";
const VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> SprError {
    SprError::Parse { line, message: message.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn read_graph(reader: impl Read) -> Result<WeightedGraph> {
    let mut lines = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push((idx + 1, trimmed.to_string()));
    }
    let mut it = lines.iter();

    let (no, header) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some(MAGIC) {
        return Err(parse_err(*no, format!("expected `{MAGIC} {VERSION}` header")));
    }
    let version: u32 = field(toks.next(), *no, "version")?;
    if version != VERSION {
        return Err(parse_err(*no, format!("unsupported version {version}")));
    }

    let (no, counts) = it.next().ok_or_else(|| parse_err(*no + 1, "missing `n m k` line"))?;
    let mut toks = counts.split_whitespace();
    let n: usize = field(toks.next(), *no, "vertex count")?;
    let m: usize = field(toks.next(), *no, "edge count")?;
    let k: usize = field(toks.next(), *no, "terminal count")?;
    let mut last = *no;

    let mut terminals = Vec::with_capacity(k);
    for _ in 0..k {
        let (no, line) = it
            .next()
            .ok_or_else(|| parse_err(last + 1, "unexpected end of input in terminal list"))?;
        terminals.push(field::<VertexId>(Some(line.as_str()), *no, "terminal id")?);
        last = *no;
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, line) = it
            .next()
            .ok_or_else(|| parse_err(last + 1, "unexpected end of input in edge list"))?;
        let mut toks = line.split_whitespace();
        let u: VertexId = field(toks.next(), *no, "edge endpoint")?;
        let v: VertexId = field(toks.next(), *no, "edge endpoint")?;
        let w: f64 = field(toks.next(), *no, "edge weight")?;
        if toks.next().is_some() {
            return Err(parse_err(*no, "trailing tokens after edge"));
        }
        edges.push((u, v, w));
        last = *no;
    }
    if let Some((no, _)) = it.next() {
        return Err(parse_err(*no, "trailing content after edge list"));
    }
    WeightedGraph::new(n, edges, terminals)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    read_graph(text.as_bytes())
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    read_graph(File::open(path)?)
}

/// Writes `g` with weights in shortest round-trip decimal form, so reading
/// the output back reproduces every weight bit-exactly.
pub fn write_graph(g: &WeightedGraph, mut out: impl Write) -> Result<()> {
    writeln!(out, "{MAGIC} {VERSION}")?;
    writeln!(out, "{} {} {}", g.vertex_count(), g.edge_count(), g.terminal_count())?;
    for &t in g.terminals() {
        writeln!(out, "{t}")?;
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
    }
    Ok(())
}

pub fn save_graph(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_graph(g, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn graph_to_string(g: &WeightedGraph) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("format is ASCII")
}
