//! Property bodies shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use aqpath::cube::{translate, AdjacencyMask};
use aqpath::flow::{disjoint_paths, min_vertex_cut};
use aqpath::verify::{check_family, check_path, Verdict, ViolationKind};
use aqpath::{construct, AugmentedCube, ExplicitGraph, Graph, Vertex, XorTranslation};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const SUITE_CASES: u32 = 256;

/// Runs `test` on `SUITE_CASES` inputs drawn from a fixed seed.
pub fn run_suite<S: Strategy>(
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let config = Config {
        cases: SUITE_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner
        .run(&strategy, test)
        .map(|_| SUITE_CASES)
        .map_err(|e| e.to_string())
}

// ---- masks and automorphisms ----

pub fn cube_vertex() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (1u32..=10).prop_flat_map(|n| {
        let top = 1u32 << n;
        (Just(n), 0..top, 0..top, 0..top)
    })
}

pub fn mask_case((n, v, w, t): (u32, u32, u32, u32)) -> Result<(), TestCaseError> {
    let cube = AugmentedCube::new(n).unwrap();
    let (v, w, t) = (Vertex(v), Vertex(w), XorTranslation(Vertex(t)));
    let nb = cube.neighbors(v);
    let want = if n == 1 { 1 } else { 2 * n as usize - 1 };
    prop_assert_eq!(nb.len(), want);
    let distinct: HashSet<_> = nb.iter().collect();
    prop_assert_eq!(distinct.len(), nb.len());
    // each neighbour is v XOR one of the masks
    let words: HashSet<u32> = AdjacencyMask::all(n).iter().map(|m| m.word).collect();
    for u in &nb {
        prop_assert!(words.contains(&(u.0 ^ v.0)));
        prop_assert!(cube.is_adjacent(*u, v));
    }
    // translations are automorphisms
    prop_assert_eq!(
        cube.is_adjacent(v, w),
        cube.is_adjacent(translate(v, t), translate(w, t))
    );
    let moved: Vec<Vertex> = nb.iter().map(|&u| translate(u, t)).collect();
    let mut expect = cube.neighbors(translate(v, t));
    expect.sort();
    let mut moved_sorted = moved.clone();
    moved_sorted.sort();
    prop_assert_eq!(moved_sorted, expect);
    Ok(())
}

// ---- Menger duality ----

pub fn small_graph() -> impl Strategy<Value = (u32, Vec<(u32, u32)>, u32, u32)> {
    (4u32..=9).prop_flat_map(|order| {
        let pairs: Vec<(u32, u32)> = (0..order)
            .flat_map(|a| (a + 1..order).map(move |b| (a, b)))
            .collect();
        let m = pairs.len();
        (
            Just(order),
            proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
                pairs
                    .iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|(p, _)| *p)
                    .collect::<Vec<_>>()
            }),
            0..order,
            0..order,
        )
    })
}

fn connected_without(
    g: &ExplicitGraph,
    s: Vertex,
    t: Vertex,
    removed: &HashSet<Vertex>,
    skip_st: bool,
) -> bool {
    let mut seen = HashSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if skip_st && ((u == s && w == t) || (u == t && w == s)) {
                continue;
            }
            if w == t {
                return true;
            }
            if !removed.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    false
}

/// Smallest vertex set separating `s` from `t` once the edge `st` is
/// ignored, by trying subsets in order of size.
pub fn brute_cut(g: &ExplicitGraph, s: Vertex, t: Vertex) -> usize {
    let others: Vec<Vertex> = g
        .vertices()
        .into_iter()
        .filter(|&v| v != s && v != t)
        .collect();
    let k = others.len();
    let mut best = k;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: HashSet<Vertex> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| others[i])
            .collect();
        if !connected_without(g, s, t, &removed, true) {
            best = size;
        }
    }
    best
}

pub fn menger_case(
    (order, edges, s, t): (u32, Vec<(u32, u32)>, u32, u32),
) -> Result<(), TestCaseError> {
    prop_assume!(s != t);
    let mut g = ExplicitGraph::from_edges(4, &edges);
    for v in 0..order {
        g.add_vertex(Vertex(v));
    }
    let (s, t) = (Vertex(s), Vertex(t));
    let direct = usize::from(g.is_adjacent(s, t));
    let expect = brute_cut(&g, s, t) + direct;
    let got = min_vertex_cut(&g, s, t).unwrap();
    prop_assert_eq!(got, expect);
    if got > 0 {
        let paths = disjoint_paths(&g, s, t, got).unwrap();
        prop_assert_eq!(paths.len(), got);
        let mut inner = HashSet::new();
        for p in &paths {
            prop_assert_eq!(p[0], s);
            prop_assert_eq!(*p.last().unwrap(), t);
            prop_assert!(check_path(&g, p).is_accept());
            for v in &p[1..p.len() - 1] {
                prop_assert!(inner.insert(*v), "shared interior vertex");
            }
        }
        prop_assert!(disjoint_paths(&g, s, t, got + 1).is_err());
    }
    Ok(())
}

// ---- verifier fuzz ----

#[derive(Clone, Copy, Debug)]
pub enum Mutation {
    DropVertex,
    SwapVertices,
    DuplicateEdge,
    RepeatVertex,
    DropTerminal,
}

pub fn fuzz_input() -> impl Strategy<Value = (u32, [u32; 3], Mutation, usize, usize)> {
    (4u32..=6).prop_flat_map(|n| {
        let top = 1u32 << n;
        (
            Just(n),
            proptest::sample::subsequence((0..top).collect::<Vec<_>>(), 3)
                .prop_shuffle()
                .prop_map(|v| [v[0], v[1], v[2]]),
            prop_oneof![
                Just(Mutation::DropVertex),
                Just(Mutation::SwapVertices),
                Just(Mutation::DuplicateEdge),
                Just(Mutation::RepeatVertex),
                Just(Mutation::DropTerminal),
            ],
            0usize..1000,
            0usize..1000,
        )
    })
}

fn kind(v: &Verdict) -> Option<ViolationKind> {
    v.violation().map(|x| x.kind)
}

/// Mutates a constructed family and checks the verifier's verdict against
/// the kind each mutation must produce.
pub fn fuzz_case(
    (n, d, mutation, i, j): (u32, [u32; 3], Mutation, usize, usize),
) -> Result<(), TestCaseError> {
    let cube = AugmentedCube::new(n).unwrap();
    let d = d.map(Vertex);
    let fam = construct(n, d).unwrap();
    prop_assert!(check_family(&cube, d, &fam.paths).is_accept());
    let mut paths = fam.paths.clone();
    let pi = i % paths.len();
    let is_terminal = |v: &Vertex| d.contains(v);
    match mutation {
        Mutation::DropVertex => {
            // removing an interior vertex whose path neighbours are not adjacent
            let p = &paths[pi];
            let cands: Vec<usize> = (1..p.len() - 1)
                .filter(|&k| !cube.is_adjacent(p[k - 1], p[k + 1]))
                .collect();
            prop_assume!(!cands.is_empty());
            let k = cands[j % cands.len()];
            paths[pi].remove(k);
            prop_assert_eq!(
                kind(&check_family(&cube, d, &paths)),
                Some(ViolationKind::NotAPath)
            );
        }
        Mutation::SwapVertices => {
            // exchange non-terminal vertices between two paths; the vertex
            // sets stay disjoint, so only adjacency can break
            let pj = (pi + 1 + j % (paths.len() - 1)) % paths.len();
            let a: Vec<usize> = (0..paths[pi].len())
                .filter(|&k| !is_terminal(&paths[pi][k]))
                .collect();
            let b: Vec<usize> = (0..paths[pj].len())
                .filter(|&k| !is_terminal(&paths[pj][k]))
                .collect();
            prop_assume!(!a.is_empty() && !b.is_empty());
            let (ka, kb) = (a[j % a.len()], b[i % b.len()]);
            let (va, vb) = (paths[pi][ka], paths[pj][kb]);
            paths[pi][ka] = vb;
            paths[pj][kb] = va;
            let adjacent = |p: &Vec<Vertex>| p.windows(2).all(|w| cube.is_adjacent(w[0], w[1]));
            let expect = if adjacent(&paths[pi]) && adjacent(&paths[pj]) {
                None
            } else {
                Some(ViolationKind::NotAPath)
            };
            prop_assert_eq!(kind(&check_family(&cube, d, &paths)), expect);
        }
        Mutation::DuplicateEdge => {
            // a path through three mutually close vertices, listed twice:
            // the vertex sets meet exactly in D but every edge repeats
            let u = d[0];
            let nu = cube.neighbors(u);
            let v = nu[i % nu.len()];
            let nv: Vec<Vertex> = cube.neighbors(v).into_iter().filter(|&w| w != u).collect();
            let w = nv[j % nv.len()];
            let p = vec![u, v, w];
            let verdict = check_family(&cube, [u, v, w], &[p.clone(), p]);
            prop_assert_eq!(kind(&verdict), Some(ViolationKind::EdgeOverlap));
        }
        Mutation::RepeatVertex => {
            let p = &mut paths[pi];
            let back = p[p.len() - 2];
            p.push(back);
            prop_assert_eq!(
                kind(&check_family(&cube, d, &paths)),
                Some(ViolationKind::NotSimple)
            );
        }
        Mutation::DropTerminal => {
            paths[pi].remove(0);
            prop_assert_eq!(
                kind(&check_family(&cube, d, &paths)),
                Some(ViolationKind::MissingTerminal)
            );
        }
    }
    Ok(())
}
