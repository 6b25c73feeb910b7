//! Exact values of the three-terminal path packing number on small graphs,
//! plus the counting bounds and the common-neighbour witness.

pub mod brute;
mod search;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cube::{AugmentedCube, Vertex};
use crate::error::{Error, Result};
use crate::flow;
use crate::graph::Graph;
use crate::verify::{check_family, Verdict};

pub use brute::brute_small;
pub use search::{Compact, MAX_SEARCH_VERTICES};
use search::{Packer, Packing};

/// Default node budget for one `max_dpaths` call.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest graph accepted by exhaustive `pi3_exact`.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPathCount {
    pub count: usize,
    /// Number of paths whose middle terminal is x, y, z respectively.
    pub profile: [usize; 3],
    pub paths: Vec<Vec<Vertex>>,
    pub nodes: u64,
}

/// Orients each path so that the smaller of its two end vertices comes first.
pub fn orient_paths(paths: &mut [Vec<Vertex>]) {
    for p in paths.iter_mut() {
        if p.len() > 1 && p[p.len() - 1] < p[0] {
            p.reverse();
        }
    }
}

fn assemble(c: &Compact, profile: [usize; 3], segs: &Packing) -> Vec<Vec<Vertex>> {
    let [a, b, _] = profile;
    let (xy, yz, xz) = (&segs[0], &segs[1], &segs[2]);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..a {
        let mut p: Vec<usize> = xy[i].iter().rev().copied().collect();
        p.extend_from_slice(&xz[i][1..]);
        out.push(p);
    }
    for i in 0..b {
        let mut p = xy[a + i].clone();
        p.extend_from_slice(&yz[i][1..]);
        out.push(p);
    }
    for i in 0..profile[2] {
        let mut p = xz[a + i].clone();
        p.extend(yz[b + i].iter().rev().skip(1));
        out.push(p);
    }
    let mut paths: Vec<Vec<Vertex>> = out
        .into_iter()
        .map(|p| p.into_iter().map(|i| c.verts[i]).collect())
        .collect();
    orient_paths(&mut paths);
    paths
}

/// Profiles of total `k` that respect the terminal degrees, most balanced
/// first (they are the cheapest to find), ties in lexicographic order.
pub(crate) fn profiles(k: usize, deg: [usize; 3]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            let c = k - a - b;
            let p = [a, b, c];
            // terminal i is the middle of p[i] paths and an end of the rest
            if (0..3).all(|i| k + p[i] <= deg[i]) {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|p| (*p.iter().max().unwrap(), *p));
    out
}

/// Middle-terminal counts of a family.
fn profile_of(d: [Vertex; 3], paths: &[Vec<Vertex>]) -> [usize; 3] {
    let mut p = [0; 3];
    for path in paths {
        let ends = [path[0], path[path.len() - 1]];
        if let Some(i) = (0..3).find(|&i| !ends.contains(&d[i])) {
            p[i] += 1;
        }
    }
    p
}

/// Flow-only attempt: for each choice of hub terminal, pick disjoint
/// paths between the other two and route the hub into both with one flow.
/// Positive answers are checked; failure proves nothing.
fn quick_pack(c: &Compact, d: [Vertex; 3], k: usize) -> Option<Vec<Vec<Vertex>>> {
    for [x, y, z] in [[0, 1, 2], [1, 2, 0], [0, 2, 1]] {
        if let Some(mut paths) = flow::split_flow(c, c, [d[x], d[y], d[z]], k) {
            if check_family(c, d, &paths) == Verdict::Accept(k) {
                orient_paths(&mut paths);
                return Some(paths);
            }
        }
    }
    None
}

fn terminal_indices(c: &Compact, d: [Vertex; 3]) -> Result<[usize; 3]> {
    if d[0] == d[1] || d[0] == d[2] || d[1] == d[2] {
        return Err(Error::DuplicateTerminal);
    }
    Ok([c.idx(d[0])?, c.idx(d[1])?, c.idx(d[2])?])
}

/// Upper bound used to start the descending search.
pub fn counting_bound(c: &Compact, d: [Vertex; 3]) -> Result<usize> {
    let t = terminal_indices(c, d)?;
    Ok(c.counting_bound(t))
}

fn find_compact(
    c: &Compact,
    t: [usize; 3],
    k: usize,
    packer: &mut Packer<'_>,
) -> Result<Option<DPathCount>> {
    if k == 0 {
        return Ok(Some(DPathCount {
            count: 0,
            profile: [0; 3],
            paths: Vec::new(),
            nodes: packer.nodes(),
        }));
    }
    let d = t.map(|i| c.verts[i]);
    if let Some(paths) = quick_pack(c, d, k) {
        return Ok(Some(DPathCount {
            count: k,
            profile: profile_of(d, &paths),
            paths,
            nodes: packer.nodes(),
        }));
    }
    let deg = t.map(|i| c.degree(i));
    for profile in profiles(k, deg) {
        if let Some(segs) = packer.pack(profile)? {
            return Ok(Some(DPathCount {
                count: k,
                profile,
                paths: assemble(c, profile, &segs),
                nodes: packer.nodes(),
            }));
        }
    }
    Ok(None)
}

/// `k` internally disjoint D-paths if they exist, `None` if provably not.
pub fn find_dpaths_compact(
    c: &Compact,
    d: [Vertex; 3],
    k: usize,
    budget: u64,
) -> Result<Option<DPathCount>> {
    let t = terminal_indices(c, d)?;
    if k > c.counting_bound(t) {
        return Ok(None);
    }
    let mut packer = Packer::new(c, t, budget);
    find_compact(c, t, k, &mut packer)
}

pub fn find_dpaths<G: Graph + ?Sized>(
    g: &G,
    d: [Vertex; 3],
    k: usize,
    budget: u64,
) -> Result<Option<DPathCount>> {
    let c = Compact::new(g)?;
    find_dpaths_compact(&c, d, k, budget)
}

/// Exact maximum number of internally disjoint D-paths, with a witness.
pub fn max_dpaths_compact(c: &Compact, d: [Vertex; 3], budget: u64) -> Result<DPathCount> {
    if c.is_empty() {
        return Err(Error::Invalid("empty graph".into()));
    }
    let t = terminal_indices(c, d)?;
    let mut packer = Packer::new(c, t, budget);
    let mut k = c.counting_bound(t);
    loop {
        if let Some(found) = find_compact(c, t, k, &mut packer)? {
            return Ok(found);
        }
        k -= 1;
    }
}

pub fn max_dpaths<G: Graph + ?Sized>(g: &G, d: [Vertex; 3], budget: u64) -> Result<DPathCount> {
    let c = Compact::new(g)?;
    max_dpaths_compact(&c, d, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi3Mode {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pi3Options {
    pub budget: u64,
    /// Pin the first terminal at the zero word. Only sound on
    /// vertex-transitive graphs such as cube views.
    pub pin_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi3Result {
    pub value: usize,
    /// A triple attaining `value`: the first in sorted order whose
    /// attainment is certified by its counting bound or by an exact solve
    /// below the bound; failing that, the first found by exact search.
    pub argmin: [Vertex; 3],
    pub triples: usize,
}

fn triples_for(c: &Compact, mode: Pi3Mode, pin_zero: bool) -> Result<Vec<[Vertex; 3]>> {
    let n = c.len();
    if n < 3 {
        return Err(Error::Invalid("graph has fewer than three vertices".into()));
    }
    match mode {
        Pi3Mode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_VERTICES {
                return Err(Error::ResourceGuard(format!(
                    "exhaustive mode allows at most {MAX_EXHAUSTIVE_VERTICES} vertices, graph has {n}"
                )));
            }
            let v = &c.verts;
            let mut out = Vec::new();
            let firsts: Vec<usize> = if pin_zero {
                vec![c.idx(Vertex(0))?]
            } else {
                (0..n).collect()
            };
            for &i in &firsts {
                for j in i + 1..n {
                    for k in j + 1..n {
                        out.push([v[i], v[j], v[k]]);
                    }
                }
            }
            Ok(out)
        }
        Pi3Mode::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let mut idx = sample(&mut rng, n, 3).into_vec();
                idx.sort_unstable();
                out.push([c.verts[idx[0]], c.verts[idx[1]], c.verts[idx[2]]]);
            }
            Ok(out)
        }
    }
}

/// Minimum of `max_dpaths` over the triples selected by `mode`.
///
/// Every triple is first tested at the smallest counting bound; only the
/// triples that fail there are solved exactly. See `Pi3Result::argmin`
/// for which minimiser is reported.
pub fn pi3_exact<G: Graph + ?Sized>(g: &G, mode: Pi3Mode, opts: Pi3Options) -> Result<Pi3Result> {
    let c = Compact::new(g)?;
    let mut triples = triples_for(&c, mode, opts.pin_zero)?;
    triples.sort_unstable();
    triples.dedup();
    let bounds: Vec<usize> = triples
        .iter()
        .map(|&d| counting_bound(&c, d))
        .collect::<Result<_>>()?;
    let ub = *bounds.iter().min().unwrap();
    let exact_below: Vec<Option<usize>> = triples
        .par_iter()
        .map(|&d| -> Result<Option<usize>> {
            match find_dpaths_compact(&c, d, ub, opts.budget)? {
                Some(_) => Ok(None),
                None => Ok(Some(max_dpaths_compact(&c, d, opts.budget)?.count)),
            }
        })
        .collect::<Result<_>>()?;
    let value = exact_below
        .iter()
        .flatten()
        .copied()
        .min()
        .unwrap_or(ub)
        .min(ub);
    // prefer a triple whose counting bound already certifies the minimum;
    // otherwise scan for the first one whose exact value is the minimum
    let certified = (0..triples.len()).find(|&i| {
        exact_below[i] == Some(value) || (exact_below[i].is_none() && bounds[i] <= value)
    });
    if let Some(i) = certified {
        return Ok(Pi3Result {
            value,
            argmin: triples[i],
            triples: triples.len(),
        });
    }
    for (i, &d) in triples.iter().enumerate() {
        if exact_below[i].is_none() && find_dpaths_compact(&c, d, value + 1, opts.budget)?.is_none()
        {
            return Ok(Pi3Result {
                value,
                argmin: d,
                triples: triples.len(),
            });
        }
    }
    unreachable!("the minimum is attained by some triple")
}

/// Intersection of the neighbourhoods of `s`, ascending.
pub fn common_neighbors<G: Graph + ?Sized>(g: &G, s: &[Vertex]) -> Result<Vec<Vertex>> {
    for (i, v) in s.iter().enumerate() {
        if !g.contains(*v) {
            return Err(Error::NotInGraph(*v));
        }
        if s[..i].contains(v) {
            return Err(Error::DuplicateTerminal);
        }
    }
    let Some((first, rest)) = s.split_first() else {
        return Ok(Vec::new());
    };
    Ok(g.neighbors(*first)
        .into_iter()
        .filter(|&w| rest.iter().all(|&u| g.is_adjacent(u, w)))
        .collect())
}

/// Largest common neighbourhood over all vertex sets of size `arity`
/// (2 or 3), with the lexicographically first set attaining it.
pub fn max_common<G: Graph + ?Sized>(
    g: &G,
    arity: usize,
    pin_zero: bool,
) -> Result<(usize, Vec<Vertex>)> {
    if !(2..=3).contains(&arity) {
        return Err(Error::Invalid(format!("arity must be 2 or 3, got {arity}")));
    }
    let c = Compact::new(g)?;
    let n = c.len();
    if n < arity {
        return Err(Error::Invalid("graph too small".into()));
    }
    let firsts: Vec<usize> = if pin_zero {
        vec![c.idx(Vertex(0))?]
    } else {
        (0..n).collect()
    };
    let mut best = (0usize, Vec::new());
    let mut consider = |set: &[usize], mask: u128| {
        let k = mask.count_ones() as usize;
        if best.1.is_empty() || k > best.0 {
            best = (k, set.iter().map(|&i| c.verts[i]).collect());
        }
    };
    for &i in &firsts {
        for j in i + 1..n {
            let m2 = c.adj[i] & c.adj[j];
            if arity == 2 {
                consider(&[i, j], m2);
                continue;
            }
            for k in j + 1..n {
                consider(&[i, j, k], m2 & c.adj[k]);
            }
        }
    }
    Ok(best)
}

/// `floor((3k - r) / 4)` for a `k`-regular graph whose triples share at
/// most `r` neighbours.
pub fn packing_bound(k: usize, r: usize) -> Result<usize> {
    if k == 0 || r > k {
        return Err(Error::Invalid(format!(
            "need k >= 1 and 0 <= r <= k, got k={k} r={r}"
        )));
    }
    Ok((3 * k - r) / 4)
}

/// The regular-graph bound evaluated for `AQ_n`: degree `2n-1`, `r = 4`.
pub fn cube_packing_bound(n: u32) -> Result<usize> {
    if n < 4 {
        return Err(Error::InvalidDimension(n));
    }
    packing_bound(2 * n as usize - 1, 4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTriple {
    pub n: u32,
    pub terminals: [Vertex; 3],
    /// The four vertices expected to be adjacent to all three terminals.
    pub expected: [Vertex; 4],
    /// `(terminal, expected vertex, adjacent?)` for all twelve pairs.
    pub certificate: Vec<(Vertex, Vertex, bool)>,
}

impl WitnessTriple {
    pub fn certified(&self) -> bool {
        self.certificate.iter().all(|c| c.2)
    }
}

/// A triple of `AQ_n` with four common neighbours: `x = 000..0`,
/// `y = 011..1`, `z = 101..1`. With `printed_variant` the tail of `z` is
/// all zeros instead, which breaks three of the twelve adjacencies.
pub fn witness_triple(n: u32, printed_variant: bool) -> Result<WitnessTriple> {
    if n < 4 {
        return Err(Error::InvalidDimension(n));
    }
    let cube = AugmentedCube::new(n)?;
    let ones = |k: u32| (1u32 << k) - 1;
    let tail = n - 3;
    let x = Vertex(0);
    let y = Vertex(ones(n - 1));
    let z = if printed_variant {
        Vertex(0b101 << tail)
    } else {
        Vertex(0b101 << tail | ones(tail))
    };
    let a = Vertex(0b001 << tail | ones(tail));
    let b = Vertex(ones(n));
    let c = Vertex(0b100 << tail);
    let d = Vertex(0b010 << tail);
    let expected = [a, b, c, d];
    let mut certificate = Vec::with_capacity(12);
    for t in [x, y, z] {
        for e in expected {
            certificate.push((t, e, cube.is_adjacent(t, e)));
        }
    }
    Ok(WitnessTriple {
        n,
        terminals: [x, y, z],
        expected,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ExplicitGraph;
    use crate::verify::check_family;

    fn cycle(n: u32) -> ExplicitGraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ExplicitGraph::from_edges(4, &edges)
    }

    #[test]
    fn five_cycle_gives_one() {
        let g = cycle(5);
        let r = max_dpaths(&g, [Vertex(0), Vertex(1), Vertex(3)], DEFAULT_BUDGET).unwrap();
        assert_eq!(r.count, 1);
        assert!(check_family(&g, [Vertex(0), Vertex(1), Vertex(3)], &r.paths).is_accept());
    }

    #[test]
    fn complete_four_gives_two() {
        let g = ExplicitGraph::from_edges(2, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let d = [Vertex(0), Vertex(1), Vertex(2)];
        let r = max_dpaths(&g, d, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.paths.len(), 2);
        assert!(check_family(&g, d, &r.paths).is_accept());
    }

    #[test]
    fn aq4_base_triple() {
        let c = AugmentedCube::new(4).unwrap();
        let d = [Vertex(0b0000), Vertex(0b0010), Vertex(0b0001)];
        let r = max_dpaths(&c, d, DEFAULT_BUDGET).unwrap();
        assert!(r.count >= 4);
        assert!(check_family(&c, d, &r.paths).is_accept());
    }

    #[test]
    fn profile_list_respects_degrees() {
        let ps = profiles(6, [9, 9, 9]);
        assert!(ps.iter().all(|p| p.iter().all(|&v| v <= 3)));
        assert_eq!(ps.len(), 10);
        assert!(profiles(2, [1, 5, 5]).is_empty());
    }

    #[test]
    fn bounds() {
        assert_eq!(packing_bound(7, 4).unwrap(), 4);
        assert_eq!(cube_packing_bound(6).unwrap(), 7);
        assert_eq!(cube_packing_bound(7).unwrap(), 8);
        assert!(packing_bound(0, 0).is_err());
        assert!(packing_bound(3, 4).is_err());
        assert!(cube_packing_bound(3).is_err());
    }

    #[test]
    fn witness_at_four() {
        let w = witness_triple(4, false).unwrap();
        let s = |v: Vertex| v.to_binary(4);
        assert_eq!(
            w.terminals.map(s),
            ["0000", "0111", "1011"].map(String::from)
        );
        assert_eq!(
            w.expected.map(s),
            ["0011", "1111", "1000", "0100"].map(String::from)
        );
        assert!(w.certified());
        let p = witness_triple(4, true).unwrap();
        assert_eq!(s(p.terminals[2]), "1010");
        assert_eq!(p.certificate.iter().filter(|c| !c.2).count(), 3);
    }

    #[test]
    fn common_neighbour_examples() {
        let c = AugmentedCube::new(4).unwrap();
        let got = common_neighbors(&c, &[Vertex(0b0000), Vertex(0b0111)]).unwrap();
        assert_eq!(
            got,
            vec![
                Vertex(0b0011),
                Vertex(0b0100),
                Vertex(0b1000),
                Vertex(0b1111)
            ]
        );
        assert_eq!(max_common(&c, 2, true).unwrap().0, 4);
        assert_eq!(max_common(&c, 3, true).unwrap().0, 4);
    }
}
