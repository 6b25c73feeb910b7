//! Referee for D-path families.
//!
//! Only `Graph::contains`, `Graph::is_adjacent` and set operations are used
//! here, so the checker stays independent of the flow engine and of the
//! constructor it is judging.

use std::collections::HashSet;
use std::fmt;

use crate::cube::Vertex;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NotAPath,
    NotSimple,
    MissingTerminal,
    VertexOverlap,
    EdgeOverlap,
    WrongGraph,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::NotAPath => "NotAPath",
            ViolationKind::NotSimple => "NotSimple",
            ViolationKind::MissingTerminal => "MissingTerminal",
            ViolationKind::VertexOverlap => "VertexOverlap",
            ViolationKind::EdgeOverlap => "EdgeOverlap",
            ViolationKind::WrongGraph => "WrongGraph",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Indices of the offending paths (one or two).
    pub paths: Vec<usize>,
    /// Offending vertices: one vertex, or the two ends of an edge.
    pub element: Vec<Vertex>,
}

impl Violation {
    fn new(kind: ViolationKind, paths: Vec<usize>, element: Vec<Vertex>) -> Self {
        Violation {
            kind,
            paths,
            element,
        }
    }

    /// `paths=0,2 element=0011` style detail; vertices rendered with `bits`.
    pub fn detail(&self, bits: u32) -> String {
        let paths: Vec<String> = self.paths.iter().map(|i| i.to_string()).collect();
        let elems: Vec<String> = self.element.iter().map(|v| v.to_binary(bits)).collect();
        format!("paths={} element={}", paths.join(","), elems.join("-"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept(usize),
    Reject(Violation),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept(_))
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Accept(_) => None,
            Verdict::Reject(v) => Some(v),
        }
    }
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn path_violation<G: Graph + ?Sized>(g: &G, path: &[Vertex], index: usize) -> Option<Violation> {
    if path.is_empty() {
        return Some(Violation::new(ViolationKind::NotAPath, vec![index], vec![]));
    }
    if let Some(&v) = path.iter().find(|&&v| !g.contains(v)) {
        return Some(Violation::new(
            ViolationKind::WrongGraph,
            vec![index],
            vec![v],
        ));
    }
    let mut seen = HashSet::with_capacity(path.len());
    if let Some(&v) = path.iter().find(|&&v| !seen.insert(v)) {
        return Some(Violation::new(
            ViolationKind::NotSimple,
            vec![index],
            vec![v],
        ));
    }
    for w in path.windows(2) {
        if !g.is_adjacent(w[0], w[1]) {
            return Some(Violation::new(
                ViolationKind::NotAPath,
                vec![index],
                vec![w[0], w[1]],
            ));
        }
    }
    None
}

/// Simplicity and adjacency of a single vertex sequence. A lone vertex is a
/// legal zero-length path.
pub fn check_path<G: Graph + ?Sized>(g: &G, path: &[Vertex]) -> Verdict {
    match path_violation(g, path, 0) {
        Some(v) => Verdict::Reject(v),
        None => Verdict::Accept(1),
    }
}

/// Accepts iff every path is a simple path of `g` containing all of `d`,
/// any two paths share exactly the vertices of `d`, and no edge is used
/// twice. Violations are reported in that order of checks.
pub fn check_family<G: Graph + ?Sized>(g: &G, d: [Vertex; 3], paths: &[Vec<Vertex>]) -> Verdict {
    if let Some(&v) = d.iter().find(|&&v| !g.contains(v)) {
        return Verdict::Reject(Violation::new(ViolationKind::WrongGraph, vec![], vec![v]));
    }
    if d[0] == d[1] || d[0] == d[2] || d[1] == d[2] {
        return Verdict::Reject(Violation::new(
            ViolationKind::MissingTerminal,
            vec![],
            d.to_vec(),
        ));
    }
    for (i, p) in paths.iter().enumerate() {
        if let Some(v) = path_violation(g, p, i) {
            return Verdict::Reject(v);
        }
    }
    for (i, p) in paths.iter().enumerate() {
        if let Some(&t) = d.iter().find(|t| !p.contains(t)) {
            return Verdict::Reject(Violation::new(
                ViolationKind::MissingTerminal,
                vec![i],
                vec![t],
            ));
        }
    }
    let terminals: HashSet<Vertex> = d.into_iter().collect();
    let mut owner: std::collections::HashMap<Vertex, usize> = std::collections::HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        for &v in p {
            if terminals.contains(&v) {
                continue;
            }
            if let Some(&j) = owner.get(&v) {
                return Verdict::Reject(Violation::new(
                    ViolationKind::VertexOverlap,
                    vec![j, i],
                    vec![v],
                ));
            }
            owner.insert(v, i);
        }
    }
    let mut edge_owner: std::collections::HashMap<(Vertex, Vertex), usize> =
        std::collections::HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        for w in p.windows(2) {
            let e = edge_key(w[0], w[1]);
            if let Some(&j) = edge_owner.get(&e) {
                return Verdict::Reject(Violation::new(
                    ViolationKind::EdgeOverlap,
                    vec![j, i],
                    vec![e.0, e.1],
                ));
            }
            edge_owner.insert(e, i);
        }
    }
    Verdict::Accept(paths.len())
}
