//! Shared machinery for the case constructions: families described by an
//! x-y path plus arms that reach z through a fan, prescribed-pair routing,
//! and the split-flow completion used when a literal ladder does not fit.

use std::collections::HashSet;

use crate::cube::Vertex;
use crate::flow::{self, Path};
use crate::graph::{Graph, Restricted};

/// One D-path, described by its pieces before the fan from z is known.
///
/// Arms start at x or y and end either at z or at a fan target; every arm
/// end other than z gets its own fan path back to z.
#[derive(Clone, Debug)]
pub(crate) enum Family {
    /// Middle x: the x-y path `p`, then an arm from x.
    A { p: Path, arm: Path },
    /// Middle y: the x-y path `p`, then an arm from y.
    B { p: Path, arm: Path },
    /// Middle z: an arm from x and an arm from y.
    C { xarm: Path, yarm: Path },
    /// A fully routed path.
    Whole(Path),
}

impl Family {
    fn arms(&self) -> Vec<&Path> {
        match self {
            Family::A { arm, .. } | Family::B { arm, .. } => vec![arm],
            Family::C { xarm, yarm } => vec![xarm, yarm],
            Family::Whole(_) => vec![],
        }
    }

    fn pieces(&self) -> Vec<&Path> {
        match self {
            Family::A { p, arm } | Family::B { p, arm } => vec![p, arm],
            Family::C { xarm, yarm } => vec![xarm, yarm],
            Family::Whole(p) => vec![p],
        }
    }
}

/// `a` followed by `b` without repeating the shared vertex.
pub(crate) fn join(a: &[Vertex], b: &[Vertex]) -> Path {
    debug_assert_eq!(a.last(), b.first());
    let mut out = a.to_vec();
    out.extend_from_slice(&b[1..]);
    out
}

pub(crate) fn rev(p: &[Vertex]) -> Path {
    p.iter().rev().copied().collect()
}

/// Runs the fan from `z` to every arm end inside `fan_region` and glues the
/// families together. `None` when targets collide or the fan does not exist.
pub(crate) fn materialize<G: Graph + ?Sized>(
    fan_region: &G,
    terminals: [Vertex; 3],
    families: &[Family],
) -> Option<Vec<Path>> {
    let z = terminals[2];
    let mut targets = Vec::new();
    let mut seen = HashSet::new();
    for f in families {
        for arm in f.arms() {
            let end = *arm.last()?;
            if end != z {
                if !seen.insert(end) {
                    return None;
                }
                targets.push(end);
            }
        }
    }
    let mut blocked: HashSet<Vertex> = terminals.iter().copied().filter(|&v| v != z).collect();
    for f in families {
        for piece in f.pieces() {
            blocked.extend(
                piece
                    .iter()
                    .copied()
                    .filter(|v| !seen.contains(v) && *v != z),
            );
        }
    }
    let fans: Vec<Path> = if targets.is_empty() {
        Vec::new()
    } else {
        let view = Restricted::new(fan_region).without_vertices(blocked);
        flow::fan(&view, z, &targets).ok()?
    };
    let to_z = |arm: &Path| -> Path {
        let end = *arm.last().unwrap();
        if end == z {
            arm.clone()
        } else {
            let i = targets.iter().position(|&t| t == end).unwrap();
            join(arm, &rev(&fans[i]))
        }
    };
    Some(
        families
            .iter()
            .map(|f| match f {
                Family::A { p, arm } => join(&rev(p), &to_z(arm)),
                Family::B { p, arm } => join(p, &to_z(arm)),
                Family::C { xarm, yarm } => join(&to_z(xarm), &rev(&to_z(yarm))),
                Family::Whole(p) => p.clone(),
            })
            .collect(),
    )
}

/// Splits `count` internally disjoint x-y paths of `view` into the
/// `q` longest (returned first) and the rest. Ties keep flow order.
pub(crate) fn split_q_p<G: Graph + ?Sized>(
    view: &G,
    x: Vertex,
    y: Vertex,
    count: usize,
    q: usize,
) -> Option<(Vec<Path>, Vec<Path>)> {
    let mut paths = flow::disjoint_paths(view, x, y, count).ok()?;
    paths.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let rest = paths.split_off(q);
    Some((paths, rest))
}

/// Vertex-disjoint paths joining each prescribed pair inside `view`,
/// avoiding `avoid`. Pairs with equal ends become one-vertex paths.
///
/// Shortest paths are tried greedily in every pair order first; if that
/// fails a bounded backtracking search over short paths takes over.
pub(crate) fn route_pairs<G: Graph + ?Sized>(
    view: &G,
    pairs: &[(Vertex, Vertex)],
    avoid: &[Vertex],
) -> Option<Vec<Path>> {
    let ends: Vec<Vertex> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    for (i, v) in ends.iter().enumerate() {
        if !view.contains(*v) || avoid.contains(v) {
            return None;
        }
        // a vertex shared between different pairs cannot be disjoint
        let own = i / 2;
        if ends.iter().enumerate().any(|(j, w)| j / 2 != own && w == v) {
            return None;
        }
    }
    let k = pairs.len();
    let mut order: Vec<usize> = (0..k).collect();
    loop {
        if let Some(paths) = greedy_route(view, pairs, avoid, &order) {
            return Some(paths);
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    let mut used: HashSet<Vertex> = avoid.iter().copied().collect();
    used.extend(ends.iter().copied());
    let mut out = vec![Vec::new(); k];
    let mut budget = 200_000u64;
    if backtrack(view, pairs, 0, &mut used, &mut out, &mut budget) {
        Some(out)
    } else {
        None
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn greedy_route<G: Graph + ?Sized>(
    view: &G,
    pairs: &[(Vertex, Vertex)],
    avoid: &[Vertex],
    order: &[usize],
) -> Option<Vec<Path>> {
    let mut used: HashSet<Vertex> = avoid.iter().copied().collect();
    let mut out = vec![Vec::new(); pairs.len()];
    for &i in order {
        let (a, b) = pairs[i];
        if a == b {
            out[i] = vec![a];
            used.insert(a);
            continue;
        }
        let others: Vec<Vertex> = pairs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, &(c, d))| [c, d])
            .collect();
        let r = Restricted::new(view).without_vertices(used.iter().copied().chain(others));
        let p = flow::disjoint_paths(&r, a, b, 1).ok()?.pop()?;
        used.extend(p.iter().copied());
        out[i] = p;
    }
    Some(out)
}

fn backtrack<G: Graph + ?Sized>(
    view: &G,
    pairs: &[(Vertex, Vertex)],
    i: usize,
    used: &mut HashSet<Vertex>,
    out: &mut [Path],
    budget: &mut u64,
) -> bool {
    if i == pairs.len() {
        return true;
    }
    let (a, b) = pairs[i];
    if a == b {
        out[i] = vec![a];
        return backtrack(view, pairs, i + 1, used, out, budget);
    }
    let limit = 2 * view.label_bits() as usize + 2;
    let mut path = vec![a];
    let mut stack: Vec<Vec<Vertex>> = vec![view.neighbors(a)];
    while let Some(cands) = stack.last_mut() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let Some(v) = cands.pop() else {
            stack.pop();
            if let Some(last) = path.pop() {
                if last != a {
                    used.remove(&last);
                }
            }
            continue;
        };
        if v == b {
            path.push(b);
            out[i] = path.clone();
            if backtrack(view, pairs, i + 1, used, out, budget) {
                return true;
            }
            path.pop();
            continue;
        }
        if used.contains(&v) || path.len() >= limit {
            continue;
        }
        used.insert(v);
        path.push(v);
        let mut next = view.neighbors(v);
        // try neighbours closer in label space last so that pop() sees them first
        next.reverse();
        stack.push(next);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::AugmentedCube;
    use crate::verify::check_family;

    #[test]
    fn routes_prescribed_pairs() {
        let c = AugmentedCube::new(4).unwrap();
        let h = c.induced_half(1).unwrap();
        let pairs = [
            (Vertex(0b1000), Vertex(0b1101)),
            (Vertex(0b1111), Vertex(0b1010)),
        ];
        let paths = route_pairs(&h, &pairs, &[]).unwrap();
        let mut seen = HashSet::new();
        for (p, &(a, b)) in paths.iter().zip(&pairs) {
            assert_eq!((p[0], *p.last().unwrap()), (a, b));
            for v in p {
                assert!(seen.insert(*v));
            }
        }
        assert!(route_pairs(
            &h,
            &[
                (Vertex(0b1000), Vertex(0b1101)),
                (Vertex(0b1101), Vertex(0b1010))
            ],
            &[]
        )
        .is_none());
    }

    #[test]
    fn permutations_cover_all_orders() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
