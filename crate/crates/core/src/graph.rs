//! Graph views shared by the flow engine, the verifier and the oracles.
//!
//! Every graph in this crate labels its vertices with fixed-width bit words,
//! so a [`Vertex`] is meaningful across a cube, its sub-cube views and any
//! graph read from the text format.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::cube::Vertex;
use crate::error::{Error, Result};

/// Read-only adjacency oracle.
///
/// `vertices` and `neighbors` return ascending vertex order; the flow engine
/// relies on that for reproducible path sets.
pub trait Graph: Sync {
    /// Width of the vertex labels.
    fn label_bits(&self) -> u32;
    fn contains(&self, v: Vertex) -> bool;
    fn vertices(&self) -> Vec<Vertex>;
    fn neighbors(&self, v: Vertex) -> Vec<Vertex>;
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool;

    fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl<G: Graph + ?Sized> Graph for &G {
    fn label_bits(&self) -> u32 {
        (**self).label_bits()
    }
    fn contains(&self, v: Vertex) -> bool {
        (**self).contains(v)
    }
    fn vertices(&self) -> Vec<Vertex> {
        (**self).vertices()
    }
    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (**self).neighbors(v)
    }
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        (**self).is_adjacent(u, v)
    }
}

/// A view with some vertices and edges removed from every search.
#[derive(Clone)]
pub struct Restricted<'g, G: Graph + ?Sized> {
    base: &'g G,
    blocked: HashSet<Vertex>,
    blocked_edges: HashSet<(Vertex, Vertex)>,
}

impl<'g, G: Graph + ?Sized> Restricted<'g, G> {
    pub fn new(base: &'g G) -> Self {
        Restricted {
            base,
            blocked: HashSet::new(),
            blocked_edges: HashSet::new(),
        }
    }

    pub fn without_vertices<I: IntoIterator<Item = Vertex>>(mut self, vs: I) -> Self {
        self.blocked.extend(vs);
        self
    }

    pub fn without_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(mut self, es: I) -> Self {
        for (u, v) in es {
            self.blocked_edges.insert(edge_key(u, v));
        }
        self
    }

    pub fn block_vertex(&mut self, v: Vertex) {
        self.blocked.insert(v);
    }

    pub fn is_blocked(&self, v: Vertex) -> bool {
        self.blocked.contains(&v)
    }
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl<G: Graph + ?Sized> Graph for Restricted<'_, G> {
    fn label_bits(&self) -> u32 {
        self.base.label_bits()
    }

    fn contains(&self, v: Vertex) -> bool {
        self.base.contains(v) && !self.blocked.contains(&v)
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.base
            .vertices()
            .into_iter()
            .filter(|v| !self.blocked.contains(v))
            .collect()
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        if self.blocked.contains(&v) {
            return Vec::new();
        }
        self.base
            .neighbors(v)
            .into_iter()
            .filter(|w| !self.blocked.contains(w) && !self.blocked_edges.contains(&edge_key(v, *w)))
            .collect()
    }

    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u)
            && self.contains(v)
            && !self.blocked_edges.contains(&edge_key(u, v))
            && self.base.is_adjacent(u, v)
    }
}

/// Explicit adjacency lists, used for graphs read from text and for tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    bits: u32,
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl ExplicitGraph {
    pub fn new(bits: u32) -> Self {
        ExplicitGraph {
            bits,
            adj: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Adds an undirected edge; self-loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if u == v {
            return;
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn from_edges(bits: u32, edges: &[(u32, u32)]) -> Self {
        let mut g = ExplicitGraph::new(bits);
        for &(u, v) in edges {
            g.add_edge(Vertex(u), Vertex(v));
        }
        g
    }

    /// Copies any view into explicit form.
    pub fn from_graph<G: Graph + ?Sized>(g: &G) -> Self {
        let mut out = ExplicitGraph::new(g.label_bits());
        for v in g.vertices() {
            out.add_vertex(v);
            for w in g.neighbors(v) {
                out.add_edge(v, w);
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let Some((&start, _)) = self.adj.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.adj.len()
    }
}

impl Graph for ExplicitGraph {
    fn label_bits(&self) -> u32 {
        self.bits
    }
    fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }
    fn vertices(&self) -> Vec<Vertex> {
        self.adj.keys().copied().collect()
    }
    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.adj
            .get(&v)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }
}

/// Header of the edge-list text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphHeader {
    /// `AQ n=<n>`: the augmented cube of that dimension.
    Cube(u32),
    /// `G n=<bits>`: an arbitrary graph with `bits`-wide labels.
    General(u32),
}

/// Renders a graph in the edge-list format: a header line, then one
/// `E <u> <v>` line per edge with `u < v`, lexicographically ordered.
pub fn write_edge_list<G: Graph + ?Sized>(g: &G, header: GraphHeader) -> String {
    let bits = g.label_bits();
    let mut out = String::new();
    match header {
        GraphHeader::Cube(n) => writeln!(out, "AQ n={n}").unwrap(),
        GraphHeader::General(b) => writeln!(out, "G n={b}").unwrap(),
    }
    for (u, v) in g.edges() {
        writeln!(out, "E {} {}", u.to_binary(bits), v.to_binary(bits)).unwrap();
    }
    out
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<(GraphHeader, ExplicitGraph)> {
    let mut header = None;
    let mut graph = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        match (tag, header) {
            ("AQ" | "G", None) => {
                let field = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing n= field"))?;
                let bits = field
                    .strip_prefix("n=")
                    .and_then(|s| s.parse::<u32>().ok())
                    .filter(|&b| (1..=crate::cube::MAX_DIMENSION).contains(&b))
                    .ok_or_else(|| parse_err(lineno, format!("bad size field {field:?}")))?;
                let h = if tag == "AQ" {
                    GraphHeader::Cube(bits)
                } else {
                    GraphHeader::General(bits)
                };
                header = Some(h);
                graph = Some(ExplicitGraph::new(bits));
            }
            ("E", Some(h)) => {
                let bits = match h {
                    GraphHeader::Cube(b) | GraphHeader::General(b) => b,
                };
                let u = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing endpoint"))?;
                let v = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing endpoint"))?;
                let u =
                    Vertex::parse_binary(u, bits).map_err(|e| parse_err(lineno, e.to_string()))?;
                let v =
                    Vertex::parse_binary(v, bits).map_err(|e| parse_err(lineno, e.to_string()))?;
                if u == v {
                    return Err(parse_err(lineno, "self-loop"));
                }
                graph.as_mut().unwrap().add_edge(u, v);
            }
            (_, None) => return Err(parse_err(lineno, "expected header line")),
            (other, Some(_)) => return Err(parse_err(lineno, format!("unknown record {other:?}"))),
        }
        if parts.next().is_some() {
            return Err(parse_err(lineno, "trailing fields"));
        }
    }
    match (header, graph) {
        (Some(h), Some(g)) => Ok((h, g)),
        _ => Err(parse_err(0, "empty input")),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
