//! Internally disjoint paths by unit-capacity flow.
//!
//! Every vertex `v` of the view is split into `v_in -> v_out` with capacity
//! one; each undirected edge becomes the arcs `u_out -> v_in` and
//! `v_out -> u_in`. Augmenting paths are found by breadth-first search with
//! arcs in ascending vertex order, so results are reproducible.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::cube::Vertex;
use crate::graph::{Graph, Restricted};

pub type Path = Vec<Vertex>;
pub type PathSet = Vec<Path>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    /// Fewer paths exist than requested; carries the maximum.
    #[error("only {0} disjoint paths exist")]
    Insufficient(usize),
    #[error("source and sink coincide")]
    SameEndpoint,
    #[error("vertex {0:?} is not available in the view")]
    Unavailable(Vertex),
    #[error("the fan source is one of its targets")]
    SourceInTargets,
    #[error("linkage sides differ in size")]
    SizeMismatch,
    #[error("linkage sides overlap")]
    Overlap,
    #[error("empty vertex set")]
    Empty,
    #[error("requested path count must be positive")]
    ZeroRequest,
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    rev: usize,
    cap: u32,
    orig: u32,
}

struct Network {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl Network {
    fn with_nodes(nodes: usize) -> Self {
        Network {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let a = self.arcs.len();
        self.arcs.push(Arc {
            to,
            rev: a + 1,
            cap,
            orig: cap,
        });
        self.arcs.push(Arc {
            to: from,
            rev: a,
            cap: 0,
            orig: 0,
        });
        self.adj[from].push(a);
        self.adj[to].push(a + 1);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut pred = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    pred[arc.to] = a;
                    if arc.to == t {
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = pred[v];
            self.arcs[a].cap -= 1;
            let r = self.arcs[a].rev;
            self.arcs[r].cap += 1;
            v = self.arcs[r].to;
        }
        true
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    /// Splits the flow into node sequences from `s` to `t`.
    fn decompose(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            let mut walk = vec![s];
            let mut u = s;
            while u != t {
                let next = self.adj[u].iter().copied().find(|&a| {
                    let arc = self.arcs[a];
                    arc.orig > 0 && arc.cap < arc.orig
                });
                let Some(a) = next else { break };
                self.arcs[a].cap += 1;
                u = self.arcs[a].to;
                walk.push(u);
            }
            if u != t {
                break;
            }
            out.push(walk);
        }
        out
    }
}

/// Vertex-split network of a view, with per-query terminal handling.
struct SplitView {
    verts: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    net: Network,
}

enum Role {
    /// No `in -> out` arc: the vertex can start paths but never be crossed.
    Start,
    /// No `in -> out` arc: paths stop on arrival.
    Stop,
}

impl SplitView {
    fn build<G: Graph + ?Sized>(g: &G, roles: &HashMap<Vertex, Role>) -> Self {
        let verts = g.vertices();
        let index: HashMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut net = Network::with_nodes(2 * verts.len());
        for (i, &v) in verts.iter().enumerate() {
            match roles.get(&v) {
                None => net.add_arc(2 * i, 2 * i + 1, 1),
                Some(Role::Start) => {}
                Some(Role::Stop) => continue,
            }
            for w in g.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    net.add_arc(2 * i + 1, 2 * j, 1);
                }
            }
        }
        SplitView { verts, index, net }
    }

    fn in_node(&self, v: Vertex) -> usize {
        2 * self.index[&v]
    }

    fn out_node(&self, v: Vertex) -> usize {
        2 * self.index[&v] + 1
    }

    fn to_path(&self, nodes: &[usize]) -> Path {
        let mut path: Path = Vec::new();
        for &node in nodes {
            if node >= 2 * self.verts.len() {
                continue;
            }
            let v = self.verts[node / 2];
            if path.last() != Some(&v) {
                path.push(v);
            }
        }
        path
    }
}

fn require<G: Graph + ?Sized>(g: &G, v: Vertex) -> Result<(), FlowError> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(FlowError::Unavailable(v))
    }
}

fn sorted_by_first_hop(mut paths: PathSet) -> PathSet {
    paths.sort_by(|a, b| a.get(1).cmp(&b.get(1)).then_with(|| a.cmp(b)));
    paths
}

/// `k` paths from `u` to `v` that pairwise share only their endpoints.
/// The edge `u v`, when present, counts as one path.
pub fn disjoint_paths<G: Graph + ?Sized>(
    g: &G,
    u: Vertex,
    v: Vertex,
    k: usize,
) -> Result<PathSet, FlowError> {
    if u == v {
        return Err(FlowError::SameEndpoint);
    }
    if k == 0 {
        return Err(FlowError::ZeroRequest);
    }
    require(g, u)?;
    require(g, v)?;
    let roles = HashMap::from([(u, Role::Start), (v, Role::Stop)]);
    let mut sv = SplitView::build(g, &roles);
    let (s, t) = (sv.out_node(u), sv.in_node(v));
    let got = sv.net.max_flow(s, t, k);
    if got < k {
        let total = got + sv.net.max_flow(s, t, usize::MAX);
        return Err(FlowError::Insufficient(total));
    }
    let walks = sv.net.decompose(s, t);
    Ok(sorted_by_first_hop(
        walks.iter().map(|w| sv.to_path(w)).collect(),
    ))
}

/// Paths from `x` to every member of `targets`, pairwise sharing only `x`;
/// no path passes through a target before its end.
pub fn fan<G: Graph + ?Sized>(g: &G, x: Vertex, targets: &[Vertex]) -> Result<PathSet, FlowError> {
    if targets.is_empty() {
        return Err(FlowError::Empty);
    }
    if targets.contains(&x) {
        return Err(FlowError::SourceInTargets);
    }
    require(g, x)?;
    let mut roles = HashMap::from([(x, Role::Start)]);
    let mut distinct = HashSet::new();
    for &s in targets {
        require(g, s)?;
        distinct.insert(s);
        roles.insert(s, Role::Stop);
    }
    let mut sv = SplitView::build(g, &roles);
    let sink = sv.net.add_node();
    for &s in &distinct {
        let node = sv.in_node(s);
        sv.net.add_arc(node, sink, 1);
    }
    let src = sv.out_node(x);
    let got = sv.net.max_flow(src, sink, distinct.len());
    if got < distinct.len() || distinct.len() < targets.len() {
        return Err(FlowError::Insufficient(got));
    }
    let walks = sv.net.decompose(src, sink);
    let mut by_end: HashMap<Vertex, Path> = walks
        .iter()
        .map(|w| sv.to_path(w))
        .map(|p| (*p.last().unwrap(), p))
        .collect();
    Ok(targets.iter().map(|s| by_end.remove(s).unwrap()).collect())
}

/// Paths from `source` sharing only `source` and their ends, with exactly
/// `count` of them ending at each listed sink. Sinks are never crossed.
/// Returns one path set per sink, in input order.
pub fn multi_fan<G: Graph + ?Sized>(
    g: &G,
    source: Vertex,
    sinks: &[(Vertex, usize)],
) -> Result<Vec<PathSet>, FlowError> {
    if sinks.is_empty() {
        return Err(FlowError::Empty);
    }
    require(g, source)?;
    let mut roles = HashMap::from([(source, Role::Start)]);
    for &(t, _) in sinks {
        if t == source {
            return Err(FlowError::SourceInTargets);
        }
        require(g, t)?;
        if roles.insert(t, Role::Stop).is_some() {
            return Err(FlowError::Overlap);
        }
    }
    let mut sv = SplitView::build(g, &roles);
    let sink = sv.net.add_node();
    let mut want = 0;
    for &(t, count) in sinks {
        let node = sv.in_node(t);
        sv.net.add_arc(node, sink, count as u32);
        want += count;
    }
    let src = sv.out_node(source);
    let got = sv.net.max_flow(src, sink, want);
    if got < want {
        return Err(FlowError::Insufficient(got));
    }
    let mut out: Vec<PathSet> = vec![Vec::new(); sinks.len()];
    for w in sv.net.decompose(src, sink) {
        let p = sv.to_path(&w);
        let end = *p.last().unwrap();
        let slot = sinks.iter().position(|&(t, _)| t == end).unwrap();
        out[slot].push(p);
    }
    Ok(out)
}

/// `|A|` fully vertex-disjoint paths joining `A` to `B`; the pairing is
/// chosen by the flow, not by the caller.
pub fn linkage<G: Graph + ?Sized>(g: &G, a: &[Vertex], b: &[Vertex]) -> Result<PathSet, FlowError> {
    if a.len() != b.len() {
        return Err(FlowError::SizeMismatch);
    }
    if a.is_empty() {
        return Err(FlowError::Empty);
    }
    let sa: HashSet<Vertex> = a.iter().copied().collect();
    let sb: HashSet<Vertex> = b.iter().copied().collect();
    if sa.len() != a.len() || sb.len() != b.len() {
        return Err(FlowError::Overlap);
    }
    if !sa.is_disjoint(&sb) {
        return Err(FlowError::Overlap);
    }
    let mut roles = HashMap::new();
    for &v in a {
        require(g, v)?;
        roles.insert(v, Role::Start);
    }
    for &v in b {
        require(g, v)?;
        roles.insert(v, Role::Stop);
    }
    let mut sv = SplitView::build(g, &roles);
    let src = sv.net.add_node();
    let sink = sv.net.add_node();
    for &v in a {
        let node = sv.out_node(v);
        sv.net.add_arc(src, node, 1);
    }
    for &v in b {
        let node = sv.in_node(v);
        sv.net.add_arc(node, sink, 1);
    }
    let got = sv.net.max_flow(src, sink, a.len());
    if got < a.len() {
        return Err(FlowError::Insufficient(got));
    }
    let walks = sv.net.decompose(src, sink);
    let paths: PathSet = walks.iter().map(|w| sv.to_path(w)).collect();
    let mut by_start: HashMap<Vertex, Path> = paths.into_iter().map(|p| (p[0], p)).collect();
    Ok(a.iter().map(|s| by_start.remove(s).unwrap()).collect())
}

/// Maximum number of internally disjoint `u`-`v` paths. For non-adjacent
/// pairs this is the minimum vertex separator size; for adjacent pairs it
/// is the separator of `G - uv` plus one.
pub fn min_vertex_cut<G: Graph + ?Sized>(g: &G, u: Vertex, v: Vertex) -> Result<usize, FlowError> {
    match disjoint_paths(g, u, v, usize::MAX) {
        Err(FlowError::Insufficient(k)) => Ok(k),
        Ok(p) => Ok(p.len()),
        Err(e) => Err(e),
    }
}

/// Vertex connectivity, by Even's scheme: only the first `kappa + 1`
/// vertices need to be tried as one side of a separator.
pub fn connectivity<G: Graph + ?Sized>(g: &G) -> usize {
    let verts = g.vertices();
    let n = verts.len();
    if n < 2 {
        return 0;
    }
    let mut best = n - 1;
    let mut i = 0;
    while i < n && i <= best {
        let u = verts[i];
        for &w in &verts[i + 1..] {
            if !g.is_adjacent(u, w) {
                let k = min_vertex_cut(g, u, w).expect("distinct vertices of the view");
                best = best.min(k);
            }
        }
        i += 1;
    }
    best
}

/// As many internally disjoint x-y paths as `view` holds, in flow order.
pub fn all_disjoint_paths<G: Graph + ?Sized>(view: &G, x: Vertex, y: Vertex) -> Vec<Path> {
    let k = match min_vertex_cut(view, x, y) {
        Ok(k) => k,
        Err(_) => return Vec::new(),
    };
    if k == 0 {
        return Vec::new();
    }
    disjoint_paths(view, x, y, k).unwrap_or_default()
}

/// Completes a family of `target` D-paths from x-y paths taken in `xy_view`
/// and one flow from z into x and y over `base` minus those paths.
///
/// For each number `p` of x-y paths (shortest first) and each split of them
/// into middle-x and middle-y families, z needs `a + c` paths into x and
/// `b + c` into y, where `c = target - p`; a single capacitated flow
/// answers that question exactly for the chosen x-y paths.
pub fn split_flow<B: Graph + ?Sized, V: Graph + ?Sized>(
    base: &B,
    xy_view: &V,
    terminals: [Vertex; 3],
    target: usize,
) -> Option<Vec<Path>> {
    let [x, y, z] = terminals;
    let no_z = Restricted::new(xy_view).without_vertices([z]);
    let mut xy = all_disjoint_paths(&no_z, x, y);
    xy.sort_by_key(|p| p.len());
    let (dx, dy, dz) = (base.degree(x), base.degree(y), base.degree(z));
    for p in (0..=xy.len().min(target)).rev() {
        let c = target - p;
        if 2 * c > dz {
            break;
        }
        let chosen = &xy[..p];
        let interiors: Vec<Vertex> = chosen
            .iter()
            .flat_map(|q| q[1..q.len() - 1].iter().copied())
            .collect();
        let view = Restricted::new(base).without_vertices(interiors);
        let mut splits: Vec<usize> = (0..=p).collect();
        splits.sort_by_key(|&a| (a as isize - p as isize / 2).abs());
        for a in splits {
            let b = p - a;
            let (fx, fy) = (a + c, b + c);
            if p + fx > dx || p + fy > dy {
                continue;
            }
            let sets = match multi_fan(&view, z, &[(x, fx), (y, fy)]) {
                Ok(s) => s,
                Err(FlowError::Insufficient(_)) => continue,
                Err(_) => return None,
            };
            let (zx, zy) = (&sets[0], &sets[1]);
            let mut out = Vec::with_capacity(target);
            for (i, q) in chosen.iter().enumerate().take(a) {
                out.push(glue(&rev(q), &rev(&zx[i])));
            }
            for (j, q) in chosen.iter().skip(a).enumerate() {
                out.push(glue(q, &rev(&zy[j])));
            }
            for k in 0..c {
                out.push(glue(&rev(&zx[a + k]), &zy[b + k]));
            }
            return Some(out);
        }
    }
    None
}

fn rev(p: &[Vertex]) -> Path {
    p.iter().rev().copied().collect()
}

fn glue(a: &[Vertex], b: &[Vertex]) -> Path {
    let mut out = a.to_vec();
    out.extend_from_slice(&b[1..]);
    out
}
