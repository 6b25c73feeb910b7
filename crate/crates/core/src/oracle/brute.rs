//! Independent reference for `max_dpaths` on tiny graphs: list every simple
//! path with both ends in D that visits all of D, then find the largest
//! pairwise compatible subset. Shares no code with the packing search.
//!
//! Two D-paths are compatible iff their interiors are disjoint and they
//! share no terminal-terminal edge, so a path is reduced to that pair of
//! sets; a path whose sets contain another path's sets is never needed.

use std::collections::{HashMap, HashSet};

use crate::cube::Vertex;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_BRUTE_VERTICES: usize = 14;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Candidate {
    interior: u32,
    /// Terminal-terminal edges used: bit 0 for d0-d1, 1 for d1-d2, 2 for d0-d2.
    chords: u8,
}

impl Candidate {
    fn compatible(&self, other: &Candidate) -> bool {
        self.interior & other.interior == 0 && self.chords & other.chords == 0
    }

    fn within(&self, other: &Candidate) -> bool {
        self.interior & !other.interior == 0 && self.chords & !other.chords == 0
    }
}

pub fn brute_small<G: Graph + ?Sized>(g: &G, d: [Vertex; 3]) -> Result<usize> {
    let verts = g.vertices();
    if verts.len() > MAX_BRUTE_VERTICES {
        return Err(Error::ResourceGuard(format!(
            "brute force allows at most {MAX_BRUTE_VERTICES} vertices, graph has {}",
            verts.len()
        )));
    }
    if d[0] == d[1] || d[0] == d[2] || d[1] == d[2] {
        return Err(Error::DuplicateTerminal);
    }
    let index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut term = [0usize; 3];
    for (slot, v) in term.iter_mut().zip(d) {
        *slot = *index.get(&v).ok_or(Error::NotInGraph(v))?;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|w| index.get(w).copied())
                .collect()
        })
        .collect();
    let dmask: u32 = term.iter().fold(0, |m, &t| m | 1 << t);
    let chord = |a: usize, b: usize| -> u8 {
        let ia = term.iter().position(|&t| t == a);
        let ib = term.iter().position(|&t| t == b);
        match (ia, ib) {
            (Some(i), Some(j)) => match (i.min(j), i.max(j)) {
                (0, 1) => 1,
                (1, 2) => 2,
                _ => 4,
            },
            _ => 0,
        }
    };

    let mut found = HashSet::new();
    let mut path = Vec::new();
    for &s in &term {
        path.clear();
        path.push(s);
        extend(&adj, dmask, &mut path, 1 << s, &mut |p: &[usize]| {
            let interior = p.iter().fold(0u32, |m, &v| m | 1 << v) & !dmask;
            let chords = p.windows(2).fold(0u8, |m, w| m | chord(w[0], w[1]));
            found.insert(Candidate { interior, chords });
        });
    }
    let mut all: Vec<Candidate> = found.into_iter().collect();
    all.sort_by_key(|c| {
        (
            c.interior.count_ones() + c.chords.count_ones(),
            c.interior,
            c.chords,
        )
    });
    let mut minimal: Vec<Candidate> = Vec::new();
    for c in all {
        if !minimal.iter().any(|m| m.within(&c)) {
            minimal.push(c);
        }
    }
    // every path leaves d0 through an interior neighbour or a chord, and
    // compatible paths never share one: those are the resources to branch on
    let x_slots: Vec<(u32, u8)> = adj[term[0]]
        .iter()
        .map(|&w| {
            if dmask & 1 << w != 0 {
                (0, chord(term[0], w))
            } else {
                (1 << w, 0)
            }
        })
        .collect();
    let resources: Vec<u32> = minimal
        .iter()
        .map(|c| {
            x_slots.iter().enumerate().fold(0u32, |m, (k, &(iv, ch))| {
                if c.interior & iv != 0 || c.chords & ch != 0 {
                    m | 1 << k
                } else {
                    m
                }
            })
        })
        .collect();
    let live: Vec<usize> = (0..minimal.len()).collect();
    let mut best = 0;
    search(&minimal, &resources, &live, u32::MAX, 0, &mut best);
    Ok(best)
}

fn extend(
    adj: &[Vec<usize>],
    dmask: u32,
    path: &mut Vec<usize>,
    used: u32,
    emit: &mut dyn FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    if path.len() > 1 && dmask & 1 << last != 0 && used & dmask == dmask {
        // every terminal is on the path and it ends at one: record once per
        // orientation class and stop, nothing longer can end in D
        if path[0] < last {
            emit(path);
        }
        return;
    }
    for &w in &adj[last] {
        if used & 1 << w == 0 {
            path.push(w);
            extend(adj, dmask, path, used | 1 << w, emit);
            path.pop();
        }
    }
}

fn search(
    cands: &[Candidate],
    res: &[u32],
    live: &[usize],
    open: u32,
    chosen: usize,
    best: &mut usize,
) {
    *best = (*best).max(chosen);
    let usable = live.iter().fold(0u32, |m, &p| m | res[p]) & open;
    if chosen + usable.count_ones() as usize <= *best {
        return;
    }
    let e = usable & usable.wrapping_neg();
    for &p in live.iter().filter(|&&p| res[p] & e != 0) {
        let next: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&q| q != p && cands[q].compatible(&cands[p]))
            .collect();
        search(cands, res, &next, open & !res[p], chosen + 1, best);
    }
    let rest: Vec<usize> = live.iter().copied().filter(|&q| res[q] & e == 0).collect();
    search(cands, res, &rest, open & !e, chosen, best);
}
