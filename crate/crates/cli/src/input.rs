//! Input loading: graph files (edge list or graph6, detected by
//! extension), relation files, and edge bijection tables.

use std::path::Path;

use anyhow::{bail, Context, Result};

use linegraph_core::graph::{parse_edge_list, EdgeId, Graph};
use linegraph_core::graph6::parse_graph6;

#[derive(Copy, Clone, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Edges,
    G6,
}

fn detect_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => Format::G6,
        _ => Format::Edges,
    }
}

/// Loads a graph, honoring an explicit format override, otherwise
/// detecting by extension (.g6 is graph6, everything else edge list).
pub fn load_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let format = format.unwrap_or_else(|| detect_format(path));
    let graph = match format {
        Format::G6 => parse_graph6(text.trim())
            .with_context(|| format!("{}: invalid graph6", path.display()))?,
        Format::Edges => parse_edge_list(&text)
            .with_context(|| format!("{}: invalid edge list", path.display()))?,
    };
    Ok(graph)
}

/// Parses a relation file: one class per line, edges written `u-v` and
/// separated by whitespace; `#` starts a comment.
pub fn load_relation_classes(path: &Path, graph: &Graph) -> Result<Vec<Vec<EdgeId>>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let n = graph.vertex_count();
    let mut classes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut class = Vec::new();
        for token in line.split_whitespace() {
            let Some((a, b)) = token.split_once('-') else {
                bail!("line {}: expected u-v, got {token:?}", idx + 1);
            };
            let (a, b): (u32, u32) = (
                a.parse()
                    .with_context(|| format!("line {}: bad vertex {a:?}", idx + 1))?,
                b.parse()
                    .with_context(|| format!("line {}: bad vertex {b:?}", idx + 1))?,
            );
            if a == b {
                bail!("line {}: self-loop {a}-{b}", idx + 1);
            }
            if a as usize >= n || b as usize >= n {
                bail!("line {}: vertex out of range in {token:?}", idx + 1);
            }
            class.push(EdgeId::new(a, b));
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Parses an edge bijection table: one mapping per line, `u v x y`
/// meaning edge (u,v) of the first graph maps to edge (x,y) of the
/// second; `#` starts a comment.
pub fn load_phi_table(path: &Path) -> Result<Vec<(EdgeId, EdgeId)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .with_context(|| format!("line {}: bad vertex {t:?}", idx + 1))
            })
            .collect::<Result<_>>()?;
        let [u, v, x, y] = nums.as_slice() else {
            bail!("line {}: expected four vertex ids `u v x y`", idx + 1);
        };
        if u == v || x == y {
            bail!("line {}: self-loop", idx + 1);
        }
        pairs.push((EdgeId::new(*u, *v), EdgeId::new(*x, *y)));
    }
    Ok(pairs)
}
