//! Text formats: edge lists, bipartite edge lists, Matrix Market coordinate
//! files, matching files, and scheme output.
//!
//! Edge lists hold one arc `u v` per line; tokens are external labels and
//! become dense ids in order of first appearance. A line with a single token
//! declares an isolated vertex. `#` starts a comment, blank lines are
//! skipped. Repeated arcs are rejected.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::Digraph;
use crate::elimination::EliminationScheme;

/// A malformed input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-comment lines as `(1-based line number, tokens)`.
fn token_lines<'a>(
    text: &'a str,
    comment: char,
) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let body = raw.split(comment).next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, usize>,
    labels: Vec<String>,
}

impl Interner {
    fn id(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(label.to_string(), id);
        self.labels.push(label.to_string());
        id
    }
}

/// Arcs keyed by their first line, so repeats can name both lines.
#[derive(Default)]
struct ArcSet {
    first_line: HashMap<(usize, usize), usize>,
    arcs: Vec<(usize, usize)>,
}

impl ArcSet {
    fn insert(&mut self, arc: (usize, usize), line: usize, shown: (&str, &str)) -> Result<(), ParseError> {
        if let Some(&prev) = self.first_line.get(&arc) {
            return fail(line, format!("arc {} -> {} repeats line {prev}", shown.0, shown.1));
        }
        self.first_line.insert(arc, line);
        self.arcs.push(arc);
        Ok(())
    }
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut names = Interner::default();
    let mut arcs = ArcSet::default();
    for (line, tokens) in token_lines(text, '#') {
        match tokens.as_slice() {
            [v] => {
                names.id(v);
            }
            [u, v] => {
                let arc = (names.id(u), names.id(v));
                arcs.insert(arc, line, (u, v))?;
            }
            _ => return fail(line, format!("expected `u v`, got {} tokens", tokens.len())),
        }
    }
    let n = names.labels.len();
    let g = Digraph::new(n, arcs.arcs).expect("ids are dense and arcs distinct");
    Ok(g.with_labels(names.labels).expect("interned labels are distinct"))
}

/// Edge list with the inverse of [`parse_edge_list`]; isolated vertices get a
/// line of their own.
pub fn write_edge_list(g: &Digraph) -> String {
    let mut out = String::new();
    for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{}", g.label(v)).unwrap();
    }
    for (u, v) in g.arcs() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

/// An undirected bipartite graph with separate label spaces per side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// `(left index, right index)`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Orients every edge left to right. Left vertex `i` becomes `i`, right
    /// vertex `j` becomes `left.len() + j`; labels carry over unchanged, so
    /// a label on both sides is rejected.
    pub fn to_digraph(&self) -> crate::Result<Digraph> {
        let l = self.left.len();
        let n = l + self.right.len();
        let g = Digraph::new(n, self.edges.iter().map(|&(i, j)| (i, l + j)))?;
        let labels = self.left.iter().chain(&self.right).cloned().collect();
        g.with_labels(labels)
    }
}

/// One edge `left right` per line; single tokens declare isolated left
/// vertices.
pub fn parse_bipartite_edge_list(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut left = Interner::default();
    let mut right = Interner::default();
    let mut edges = ArcSet::default();
    for (line, tokens) in token_lines(text, '#') {
        match tokens.as_slice() {
            [v] => {
                left.id(v);
            }
            [v, w] => {
                let e = (left.id(v), right.id(w));
                edges.insert(e, line, (v, w))?;
            }
            _ => return fail(line, format!("expected `left right`, got {} tokens", tokens.len())),
        }
    }
    let mut edges = edges.arcs;
    edges.sort_unstable();
    Ok(BipartiteGraph { left: left.labels, right: right.labels, edges })
}

/// A sparse matrix pattern as the ST graph with an arc `r_i -> c_j` per
/// structural nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixGraph {
    pub rows: usize,
    pub cols: usize,
    /// Zero-based `(row, column)` of every structural nonzero, sorted.
    pub entries: Vec<(usize, usize)>,
}

impl SparseMatrixGraph {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize)>) -> Self {
        entries.sort_unstable();
        entries.dedup();
        assert!(entries.iter().all(|&(i, j)| i < rows && j < cols), "entry out of range");
        SparseMatrixGraph { rows, cols, entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Row `i` is vertex `i` labeled `r{i+1}`, column `j` is vertex
    /// `rows + j` labeled `c{j+1}`.
    pub fn to_digraph(&self) -> Digraph {
        let g = Digraph::new(
            self.rows + self.cols,
            self.entries.iter().map(|&(i, j)| (i, self.rows + j)),
        )
        .expect("entries are distinct and in range");
        let labels = (1..=self.rows)
            .map(|i| format!("r{i}"))
            .chain((1..=self.cols).map(|j| format!("c{j}")))
            .collect();
        g.with_labels(labels).expect("row and column labels are distinct")
    }

    /// Translates an arc of [`Self::to_digraph`] back to `(row, column)`.
    pub fn entry_of(&self, (v, w): (usize, usize)) -> Option<(usize, usize)> {
        (v < self.rows && w >= self.rows && w < self.rows + self.cols).then(|| (v, w - self.rows))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Real,
    Integer,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
}

/// Reads a Matrix Market `coordinate` file.
///
/// Fields `pattern`, `real` and `integer` are accepted; values only decide
/// whether an entry is structural, and explicitly stored zeros are dropped.
/// Symmetric and skew-symmetric files are expanded to both triangles.
/// Repeated entries collapse into one.
pub fn parse_matrix_market(text: &str) -> Result<SparseMatrixGraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines.next().ok_or(ParseError { line: 1, message: "empty file".into() })?;
    let h: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if h.len() != 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" {
        return fail(hline, "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`");
    }
    if h[2] != "coordinate" {
        return fail(hline, format!("unsupported format {:?}; only coordinate is read", h[2]));
    }
    let field = match h[3].as_str() {
        "pattern" => Field::Pattern,
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        other => return fail(hline, format!("unsupported field {other:?}")),
    };
    let symmetry = match h[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return fail(hline, format!("unsupported symmetry {other:?}")),
    };

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (sline, size) = body.next().ok_or(ParseError { line: hline, message: "missing size line".into() })?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .or_else(|_| fail(sline, "size line must be `rows cols nnz`"))?;
    let [rows, cols, declared] = dims[..] else {
        return fail(sline, "size line must be `rows cols nnz`");
    };

    let mut entries = Vec::with_capacity(declared);
    let mut seen = 0usize;
    for (line, raw) in body {
        seen += 1;
        let t: Vec<&str> = raw.split_whitespace().collect();
        let want = if field == Field::Pattern { 2 } else { 3 };
        if t.len() != want {
            return fail(line, format!("expected {want} tokens, got {}", t.len()));
        }
        let index = |s: &str, bound: usize| -> Result<usize, ParseError> {
            match s.parse::<usize>() {
                Ok(k) if (1..=bound).contains(&k) => Ok(k - 1),
                _ => fail(line, format!("index {s:?} outside 1..={bound}")),
            }
        };
        let (i, j) = (index(t[0], rows)?, index(t[1], cols)?);
        let zero = match field {
            Field::Pattern => false,
            Field::Integer => t[2].parse::<i64>().map_err(|_| ParseError {
                line,
                message: format!("bad integer {:?}", t[2]),
            })? == 0,
            Field::Real => t[2].parse::<f64>().map_err(|_| ParseError {
                line,
                message: format!("bad real {:?}", t[2]),
            })? == 0.0,
        };
        if zero {
            continue;
        }
        entries.push((i, j));
        if symmetry != Symmetry::General && i != j {
            if i >= cols || j >= rows {
                return fail(line, "symmetric storage needs a square matrix");
            }
            entries.push((j, i));
        }
    }
    if seen != declared {
        return fail(sline, format!("declared {declared} entries, found {seen}"));
    }
    Ok(SparseMatrixGraph::new(rows, cols, entries))
}

/// Pattern-only Matrix Market text for a sparse matrix graph.
pub fn write_matrix_market(m: &SparseMatrixGraph) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate pattern general\n");
    writeln!(out, "{} {} {}", m.rows, m.cols, m.nnz()).unwrap();
    for &(i, j) in &m.entries {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    out
}

/// One arc `u v` per line, labels resolved against `g` (decimal ids when
/// `g` is unlabeled).
pub fn parse_matching(text: &str, g: &Digraph) -> Result<Vec<(usize, usize)>, ParseError> {
    let ids: HashMap<String, usize> = (0..g.n()).map(|v| (g.label(v), v)).collect();
    let mut arcs = Vec::new();
    for (line, tokens) in token_lines(text, '#') {
        let [u, v] = tokens[..] else {
            return fail(line, format!("expected `u v`, got {} tokens", tokens.len()));
        };
        let look = |s: &str| match ids.get(s) {
            Some(&id) => Ok(id),
            None => fail(line, format!("unknown vertex {s:?}")),
        };
        arcs.push((look(u)?, look(v)?));
    }
    Ok(arcs)
}

/// Tab-separated steps under a `# perfect: true|false` header.
pub fn write_scheme(g: &Digraph, s: &EliminationScheme) -> String {
    let mut out = String::new();
    writeln!(out, "# perfect: {}", s.perfect).unwrap();
    writeln!(out, "# steps: {}", s.steps.len()).unwrap();
    for &(v, w) in &s.steps {
        writeln!(out, "{}\t{}", g.label(v), g.label(w)).unwrap();
    }
    out
}

/// Reads [`write_scheme`] output back as `(perfect, steps)`.
pub fn parse_scheme(text: &str, g: &Digraph) -> Result<(bool, Vec<(usize, usize)>), ParseError> {
    let mut perfect = None;
    for (i, raw) in text.lines().enumerate() {
        if let Some(flag) = raw.trim().strip_prefix("# perfect:") {
            perfect = match flag.trim() {
                "true" => Some(true),
                "false" => Some(false),
                other => return fail(i + 1, format!("bad perfect flag {other:?}")),
            };
        }
    }
    let perfect = perfect.ok_or(ParseError { line: 1, message: "missing `# perfect:` header".into() })?;
    Ok((perfect, parse_matching(text, g)?))
}
