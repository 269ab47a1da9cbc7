//! Labeled multigraph model and its line-oriented text format.
//!
//! Graphs are immutable after construction. Vertices carry an external
//! integer id (arbitrary, unique) and a dense internal index assigned in
//! input order; all algorithms work on indices. Edges are directed or
//! undirected, labeled, and may run in parallel between the same pair of
//! vertices; undirected edges are stored with `src <= dst` so each occupies
//! a single adjacency-matrix entry.
//!
//! Text format (one record per line, `#` starts a comment, blank lines
//! ignored):
//!
//! ```text
//! v <id> <label>
//! d <src-id> <dst-id> <label>   # directed edge
//! u <src-id> <dst-id> <label>   # undirected edge
//! ```
//!
//! Labels are single tokens, or double-quoted strings when they contain
//! spaces. Vertices must be declared before any edge that references them.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Errors produced while building or parsing a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: duplicate vertex id {id}")]
    DuplicateVertexId { line: usize, id: i64 },
    #[error("line {line}: undefined vertex id {id}")]
    UndefinedVertex { line: usize, id: i64 },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("label must be non-empty")]
    EmptyLabel,
}

/// A vertex or edge label: a non-empty string. The quoted form of the text
/// format permits embedded spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self, GraphError> {
        let text = text.into();
        if text.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Externally supplied unique id.
    pub id: i64,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    /// Internal index of the source vertex.
    pub src: usize,
    /// Internal index of the destination vertex.
    pub dst: usize,
    pub label: Label,
    pub directed: bool,
}

impl Edge {
    /// The adjacency-matrix cell this edge occupies: directed edges use
    /// `(src, dst)`, undirected edges the canonical `(min, max)`.
    pub fn cell(&self) -> (usize, usize) {
        (self.src, self.dst)
    }

    /// Index of the endpoint opposite `v`; for self-loops returns `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.src == v {
            self.dst
        } else {
            self.src
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.src == v || self.dst == v
    }
}

/// An immutable labeled multigraph.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    label_table: Vec<Label>,
    id_to_index: HashMap<i64, usize>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Graph size: vertex count plus edge count.
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// Number of distinct labels over vertices and edges (the shared label
    /// table).
    pub fn label_count(&self) -> usize {
        self.label_table.len()
    }

    /// All distinct labels, sorted lexicographically.
    pub fn label_table(&self) -> &[Label] {
        &self.label_table
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn index_of_id(&self, id: i64) -> Option<usize> {
        self.id_to_index.get(&id).copied()
    }

    /// Edge indices incident to vertex `v` (self-loops listed once).
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn contains_label(&self, label: &Label) -> bool {
        self.label_table.binary_search(label).is_ok()
    }

    /// Position of `label` in the sorted label table.
    pub fn label_index(&self, label: &Label) -> Option<usize> {
        self.label_table.binary_search(label).ok()
    }

    /// A label not present in this graph, derived from `base` by appending
    /// `#2`, `#3`, ... as needed.
    pub fn fresh_label(&self, base: &str) -> Label {
        let direct = Label::new(base).expect("non-empty base");
        if !self.contains_label(&direct) {
            return direct;
        }
        for k in 2.. {
            let cand = Label::new(format!("{base}#{k}")).expect("non-empty");
            if !self.contains_label(&cand) {
                return cand;
            }
        }
        unreachable!()
    }

    /// Whether the subgraph spanned by `vertex_set` and `edge_set` is
    /// connected (single vertices are connected; the edge set must reach
    /// every listed vertex).
    pub fn is_connected_subgraph(&self, vertex_set: &[usize], edge_set: &[usize]) -> bool {
        match vertex_set.len() {
            0 => false,
            1 => edge_set.iter().all(|&e| {
                let e = &self.edges[e];
                e.src == vertex_set[0] && e.dst == vertex_set[0]
            }),
            _ => {
                let mut comp: HashMap<usize, usize> =
                    vertex_set.iter().map(|&v| (v, v)).collect();
                fn find(comp: &mut HashMap<usize, usize>, v: usize) -> usize {
                    let p = comp[&v];
                    if p == v {
                        return v;
                    }
                    let r = find(comp, p);
                    comp.insert(v, r);
                    r
                }
                for &e in edge_set {
                    let e = &self.edges[e];
                    if !comp.contains_key(&e.src) || !comp.contains_key(&e.dst) {
                        return false;
                    }
                    let (a, b) = (find(&mut comp, e.src), find(&mut comp, e.dst));
                    comp.insert(a, b);
                }
                let root = find(&mut comp, vertex_set[0]);
                vertex_set.iter().all(|&v| find(&mut comp, v) == root)
            }
        }
    }

    /// Extract the subgraph over the given vertex indices (sorted) and edge
    /// indices. Returns the subgraph (external ids preserved) and the host
    /// vertex index for each subgraph vertex position.
    pub fn subgraph(&self, vertex_set: &[usize], edge_set: &[usize]) -> (LabeledGraph, Vec<usize>) {
        let mut builder = GraphBuilder::new();
        let mut local: HashMap<usize, usize> = HashMap::new();
        for (pos, &v) in vertex_set.iter().enumerate() {
            local.insert(v, pos);
            builder
                .add_vertex(self.vertices[v].id, self.vertices[v].label.clone())
                .expect("unique host ids");
        }
        for &e in edge_set {
            let e = &self.edges[e];
            builder
                .add_edge_by_index(local[&e.src], local[&e.dst], e.label.clone(), e.directed)
                .expect("endpoints in vertex set");
        }
        (builder.build(), vertex_set.to_vec())
    }
}

/// Incremental constructor for [`LabeledGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    id_to_index: HashMap<i64, usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: i64, label: Label) -> Result<usize, GraphError> {
        if self.id_to_index.contains_key(&id) {
            return Err(GraphError::DuplicateVertexId { line: 0, id });
        }
        let index = self.vertices.len();
        self.vertices.push(Vertex { id, label });
        self.id_to_index.insert(id, index);
        Ok(index)
    }

    pub fn add_edge_by_id(
        &mut self,
        src_id: i64,
        dst_id: i64,
        label: Label,
        directed: bool,
    ) -> Result<usize, GraphError> {
        let src = *self
            .id_to_index
            .get(&src_id)
            .ok_or(GraphError::UndefinedVertex { line: 0, id: src_id })?;
        let dst = *self
            .id_to_index
            .get(&dst_id)
            .ok_or(GraphError::UndefinedVertex { line: 0, id: dst_id })?;
        self.add_edge_by_index(src, dst, label, directed)
    }

    pub fn add_edge_by_index(
        &mut self,
        src: usize,
        dst: usize,
        label: Label,
        directed: bool,
    ) -> Result<usize, GraphError> {
        debug_assert!(src < self.vertices.len() && dst < self.vertices.len());
        let (src, dst) = if !directed && src > dst {
            (dst, src)
        } else {
            (src, dst)
        };
        self.edges.push(Edge {
            src,
            dst,
            label,
            directed,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn build(self) -> LabeledGraph {
        let mut label_table: Vec<Label> = self
            .vertices
            .iter()
            .map(|v| v.label.clone())
            .chain(self.edges.iter().map(|e| e.label.clone()))
            .collect();
        label_table.sort();
        label_table.dedup();
        let mut incident = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.src].push(i);
            if e.dst != e.src {
                incident[e.dst].push(i);
            }
        }
        LabeledGraph {
            vertices: self.vertices,
            edges: self.edges,
            label_table,
            id_to_index: self.id_to_index,
            incident,
        }
    }
}

fn unquote_token(tok: &str, line: usize) -> Result<String, GraphError> {
    if !tok.starts_with('"') {
        return Ok(tok.to_string());
    }
    let inner = &tok[1..tok.len() - 1];
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some(e @ ('"' | '\\')) => out.push(e),
                _ => {
                    return Err(GraphError::Malformed {
                        line,
                        msg: "bad escape in quoted label".into(),
                    })
                }
            }
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

/// Split a line into tokens, honoring double-quoted strings. A token
/// starting with `#` ends the line (comment).
fn tokenize(line: &str, line_no: usize) -> Result<Vec<String>, GraphError> {
    let mut tokens = Vec::new();
    let mut rest = line.trim_start();
    while !rest.is_empty() {
        if rest.starts_with('#') {
            break;
        }
        if rest.starts_with('"') {
            let mut end = None;
            let mut escaped = false;
            for (i, c) in rest.char_indices().skip(1) {
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == '"' {
                    end = Some(i);
                    break;
                }
            }
            let end = end.ok_or_else(|| GraphError::Malformed {
                line: line_no,
                msg: "unterminated quoted label".into(),
            })?;
            tokens.push(unquote_token(&rest[..=end], line_no)?);
            rest = rest[end + 1..].trim_start();
        } else {
            let end = rest
                .find(char::is_whitespace)
                .unwrap_or(rest.len());
            tokens.push(rest[..end].to_string());
            rest = rest[end..].trim_start();
        }
    }
    Ok(tokens)
}

fn parse_id(tok: &str, line: usize) -> Result<i64, GraphError> {
    tok.parse().map_err(|_| GraphError::Malformed {
        line,
        msg: format!("expected integer id, got `{tok}`"),
    })
}

fn parse_label(tok: &str, line: usize) -> Result<Label, GraphError> {
    Label::new(tok).map_err(|_| GraphError::Malformed {
        line,
        msg: "empty label".into(),
    })
}

/// Parse a graph from the text format. Reports the offending line number on
/// error.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut builder = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = tokenize(raw, line)?;
        if tokens.is_empty() {
            continue;
        }
        match tokens[0].as_str() {
            "v" => {
                if tokens.len() != 3 {
                    return Err(GraphError::Malformed {
                        line,
                        msg: "vertex line must be `v <id> <label>`".into(),
                    });
                }
                let id = parse_id(&tokens[1], line)?;
                let label = parse_label(&tokens[2], line)?;
                builder.add_vertex(id, label).map_err(|e| match e {
                    GraphError::DuplicateVertexId { id, .. } => {
                        GraphError::DuplicateVertexId { line, id }
                    }
                    other => other,
                })?;
            }
            kind @ ("d" | "u") => {
                if tokens.len() != 4 {
                    return Err(GraphError::Malformed {
                        line,
                        msg: format!("edge line must be `{kind} <src> <dst> <label>`"),
                    });
                }
                let src = parse_id(&tokens[1], line)?;
                let dst = parse_id(&tokens[2], line)?;
                let label = parse_label(&tokens[3], line)?;
                builder
                    .add_edge_by_id(src, dst, label, kind == "d")
                    .map_err(|e| match e {
                        GraphError::UndefinedVertex { id, .. } => {
                            GraphError::UndefinedVertex { line, id }
                        }
                        other => other,
                    })?;
            }
            other => {
                return Err(GraphError::Malformed {
                    line,
                    msg: format!("unknown record `{other}`"),
                });
            }
        }
    }
    Ok(builder.build())
}

fn write_label(out: &mut String, label: &Label) {
    let text = label.as_str();
    let needs_quotes = text.contains(char::is_whitespace)
        || text.contains('"')
        || text.contains('#')
        || text.starts_with('"');
    if needs_quotes {
        out.push('"');
        for c in text.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
    } else {
        out.push_str(text);
    }
}

/// Serialize a graph to the text format. Output is canonical: vertices in
/// index order, then edges in storage order, undirected edges with
/// `src <= dst`.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str("v ");
        out.push_str(&v.id.to_string());
        out.push(' ');
        write_label(&mut out, &v.label);
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str(if e.directed { "d " } else { "u " });
        out.push_str(&g.vertex(e.src).id.to_string());
        out.push(' ');
        out.push_str(&g.vertex(e.dst).id.to_string());
        out.push(' ');
        write_label(&mut out, &e.label);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vertices_and_edges() {
        let g = parse_graph("v 1 a\nv 2 b\nu 1 2 on").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label_count(), 3);
    }

    #[test]
    fn undefined_vertex_reports_line() {
        let err = parse_graph("v 1 a\nu 1 2 on").unwrap_err();
        assert_eq!(err, GraphError::UndefinedVertex { line: 2, id: 2 });
    }

    #[test]
    fn duplicate_id_reports_line() {
        let err = parse_graph("v 1 a\nv 1 b").unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertexId { line: 2, id: 1 });
    }

    #[test]
    fn malformed_line_reports_line() {
        let err = parse_graph("v 1 a\nw 2 b").unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 2, .. }));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = parse_graph("# header\n\nv 1 a # trailing\nv 2 a\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.label_count(), 1);
    }

    #[test]
    fn quoted_label_roundtrips() {
        let g = parse_graph("v 1 \"carbon atom\"\nv 2 c\nu 1 2 bond").unwrap();
        assert_eq!(g.vertex(0).label.as_str(), "carbon atom");
        let text = serialize_graph(&g);
        assert!(text.contains("\"carbon atom\""));
        let back = parse_graph(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn undirected_edges_canonicalized() {
        let g = parse_graph("v 1 a\nv 2 b\nu 2 1 x").unwrap();
        assert_eq!((g.edge(0).src, g.edge(0).dst), (0, 1));
        let twice = serialize_graph(&parse_graph(&serialize_graph(&g)).unwrap());
        assert_eq!(serialize_graph(&g), twice);
    }

    #[test]
    fn edgeless_graph_serializes_vertex_lines() {
        let g = parse_graph("v 1 a\nv 2 b\nv 3 c").unwrap();
        let text = serialize_graph(&g);
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.starts_with("v ")));
    }

    #[test]
    fn label_table_counts_distinct_labels() {
        let g = parse_graph("v 1 a\nv 2 a\nv 3 b\nd 1 2 a").unwrap();
        // `a` appears as both vertex and edge label: one shared table entry.
        assert_eq!(g.label_count(), 2);
    }
}
