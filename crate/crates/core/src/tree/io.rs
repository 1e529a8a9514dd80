use std::fmt::Write;

use super::{Tree, TreeError, VertexId};

/// Parses the edge-list format: a line holding `n`, then `n - 1` lines `u v`.
///
/// Blank lines are skipped. Line numbers in errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Tree, TreeError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing vertex count"))?;
    let n: usize =
        header.parse().map_err(|_| parse_error(header_line, format!("expected a vertex count, found {header:?}")))?;
    if n == 0 {
        return Err(parse_error(header_line, "vertex count must be at least 1"));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let mut fields = content.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_error(line, format!("expected two vertex ids, found {content:?}")));
        };
        let u = parse_vertex(a, line)?;
        let v = parse_vertex(b, line)?;
        if edges.len() == n - 1 {
            return Err(parse_error(line, format!("more than n - 1 = {} edges", n - 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != n - 1 {
        return Err(parse_error(last_line, format!("expected n - 1 = {} edges, found {}", n - 1, edges.len())));
    }
    Tree::from_edges(n, &edges)
}

fn parse_vertex(field: &str, line: usize) -> Result<VertexId, TreeError> {
    field.parse().map_err(|_| parse_error(line, format!("{field:?} is not a vertex id")))
}

fn parse_error(line: usize, message: impl Into<String>) -> TreeError {
    TreeError::Parse { line, message: message.into() }
}

/// Renders `t` in the edge-list format, edges in lexicographic order.
pub fn write_edge_list(t: &Tree) -> String {
    let mut out = format!("{}\n", t.order());
    for (u, v) in t.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Graphviz rendering for external visualization.
pub fn to_dot(t: &Tree, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in t.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in t.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
