//! Branch and bound over interior-disjoint terminal segments.
//!
//! A D-path trimmed to its extreme terminals is two segments glued at the
//! middle terminal, so a family with split profile `(a, b, c)` is exactly a
//! packing of `a+b` x-y, `b+c` y-z and `a+c` x-z segments whose interiors
//! are pairwise disjoint and avoid D. Only induced segments are enumerated
//! (a chord would give a shortcut using a subset of the interior), with the
//! exception of the terminal-terminal chord, whose edge may already be taken.

use std::collections::HashMap;

use crate::cube::Vertex;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the bitmask search supports.
pub const MAX_SEARCH_VERTICES: usize = 128;

const NONE: usize = usize::MAX;

/// Pairs in fixed order: xy, yz, xz, as indices into the terminal triple.
pub(crate) const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

#[inline]
fn bit(i: usize) -> u128 {
    1u128 << i
}

fn bits_of(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A graph view frozen into bitmask adjacency.
#[derive(Clone, Debug)]
pub struct Compact {
    pub(crate) verts: Vec<Vertex>,
    pub(crate) index: HashMap<Vertex, usize>,
    pub(crate) adj: Vec<u128>,
    bits: u32,
}

impl Compact {
    pub fn new<G: Graph + ?Sized>(g: &G) -> Result<Self> {
        let verts = g.vertices();
        if verts.len() > MAX_SEARCH_VERTICES {
            return Err(Error::ResourceGuard(format!(
                "exact search supports at most {MAX_SEARCH_VERTICES} vertices, graph has {}",
                verts.len()
            )));
        }
        let index: HashMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = verts
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .into_iter()
                    .filter_map(|w| index.get(&w))
                    .fold(0u128, |m, &j| m | bit(j))
            })
            .collect();
        Ok(Compact {
            verts,
            index,
            adj,
            bits: g.label_bits(),
        })
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub(crate) fn all(&self) -> u128 {
        if self.verts.len() == 128 {
            u128::MAX
        } else {
            bit(self.verts.len()) - 1
        }
    }

    pub(crate) fn idx(&self, v: Vertex) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::NotInGraph(v))
    }

    pub(crate) fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    /// Upper bound from edge incidences at the terminals: every D-path takes
    /// four of them, and a non-terminal seeing `k > 2` terminals wastes `k-2`.
    pub(crate) fn counting_bound(&self, t: [usize; 3]) -> usize {
        let dmask = bit(t[0]) | bit(t[1]) | bit(t[2]);
        let total: usize = t.iter().map(|&i| self.degree(i)).sum();
        let mut waste = 0;
        for w in bits_of(self.all() & !dmask) {
            let seen = (self.adj[w] & dmask).count_ones() as usize;
            waste += seen.saturating_sub(2);
        }
        (total - waste) / 4
    }
}

impl Graph for Compact {
    fn label_bits(&self) -> u32 {
        self.bits
    }
    fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }
    fn vertices(&self) -> Vec<Vertex> {
        self.verts.clone()
    }
    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match self.index.get(&v) {
            Some(&i) => bits_of(self.adj[i]).map(|j| self.verts[j]).collect(),
            None => Vec::new(),
        }
    }
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&i), Some(&j)) => self.adj[i] & bit(j) != 0,
            _ => false,
        }
    }
    fn vertex_count(&self) -> usize {
        self.verts.len()
    }
}

/// Maximum number of paths from `src` that share only `src`, run through
/// `free` and end in `sinks` (at most `cap` per sink). Direct `src`-sink
/// edges are not used. Exact unit-capacity augmentation on the split graph.
pub(crate) fn sink_flow(adj: &[u128], src: usize, free: u128, sinks: &[(usize, usize)]) -> usize {
    let n = adj.len();
    let mut sink_mask = 0u128;
    let mut cap_left = [0usize; 3];
    let mut limit = 0;
    for (k, &(t, c)) in sinks.iter().enumerate() {
        sink_mask |= bit(t);
        cap_left[k] = c;
        limit += c;
    }
    let slot_of = |t: usize| sinks.iter().position(|&(s, _)| s == t).unwrap();
    let mut succ = vec![NONE; n];
    let mut pred = vec![NONE; n];
    let mut src_out = 0u128;
    let mut inflow = [0u128; 3];
    let mut flow = 0;
    // states: 2v = v_in, 2v+1 = v_out
    let mut parent = vec![NONE; 2 * n];
    let mut queue: Vec<usize> = Vec::with_capacity(2 * n);
    while flow < limit {
        let mut vis_in = 0u128;
        let mut vis_out = bit(src);
        queue.clear();
        queue.push(2 * src + 1);
        let mut head = 0;
        let mut found = NONE;
        'bfs: while head < queue.len() {
            let st = queue[head];
            head += 1;
            let v = st / 2;
            if st & 1 == 1 {
                // v_out
                let mut cand = if v == src {
                    adj[v] & free & !src_out
                } else {
                    let mut m = adj[v] & (free | sink_mask);
                    if succ[v] != NONE {
                        m &= !bit(succ[v]);
                    }
                    m
                };
                cand &= !vis_in;
                for w in bits_of(cand) {
                    vis_in |= bit(w);
                    parent[2 * w] = st;
                    if sink_mask & bit(w) != 0 && cap_left[slot_of(w)] > 0 {
                        found = w;
                        break 'bfs;
                    }
                    queue.push(2 * w);
                }
                if v != src && pred[v] != NONE && vis_in & bit(v) == 0 {
                    vis_in |= bit(v);
                    parent[2 * v] = st;
                    queue.push(2 * v);
                }
            } else if sink_mask & bit(v) != 0 {
                for u in bits_of(inflow[slot_of(v)] & !vis_out) {
                    vis_out |= bit(u);
                    parent[2 * u + 1] = st;
                    queue.push(2 * u + 1);
                }
            } else if pred[v] == NONE {
                if vis_out & bit(v) == 0 {
                    vis_out |= bit(v);
                    parent[2 * v + 1] = st;
                    queue.push(2 * v + 1);
                }
            } else {
                let u = pred[v];
                if u != src && vis_out & bit(u) == 0 {
                    vis_out |= bit(u);
                    parent[2 * u + 1] = st;
                    queue.push(2 * u + 1);
                }
            }
        }
        if found == NONE {
            break;
        }
        cap_left[slot_of(found)] -= 1;
        let mut st = 2 * found;
        while st != 2 * src + 1 {
            let prev = parent[st];
            let (pv, pside) = (prev / 2, prev & 1);
            let (v, side) = (st / 2, st & 1);
            if pside == 1 && side == 0 && pv != v {
                // forward edge pv -> v
                if pv == src {
                    src_out |= bit(v);
                } else {
                    succ[pv] = v;
                }
                if sink_mask & bit(v) != 0 {
                    inflow[slot_of(v)] |= bit(pv);
                } else {
                    pred[v] = pv;
                }
            } else if pside == 0 && side == 1 && pv != v {
                // reverse of the flow edge v -> pv
                if succ[v] == pv {
                    succ[v] = NONE;
                }
                if sink_mask & bit(pv) != 0 {
                    inflow[slot_of(pv)] &= !bit(v);
                } else if pred[pv] == v {
                    pred[pv] = NONE;
                }
            }
            st = prev;
        }
        flow += 1;
    }
    flow
}

/// Segments found by a successful packing, oriented along `PAIRS`.
pub(crate) type Packing = [Vec<Vec<usize>>; 3];

pub(crate) struct Packer<'a> {
    g: &'a Compact,
    t: [usize; 3],
    adjacent: [bool; 3],
    free: u128,
    direct_used: [bool; 3],
    remaining: [usize; 3],
    last_key: [usize; 3],
    segs: Packing,
    nodes: u64,
    budget: u64,
}

impl<'a> Packer<'a> {
    pub(crate) fn new(g: &'a Compact, t: [usize; 3], budget: u64) -> Self {
        let dmask = bit(t[0]) | bit(t[1]) | bit(t[2]);
        let adjacent = PAIRS.map(|(i, j)| g.adj[t[i]] & bit(t[j]) != 0);
        Packer {
            g,
            t,
            adjacent,
            free: g.all() & !dmask,
            direct_used: [false; 3],
            remaining: [0; 3],
            last_key: [0; 3],
            segs: Default::default(),
            nodes: 0,
            budget,
        }
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Tries to pack the segment demands of profile `(a, b, c)`.
    pub(crate) fn pack(&mut self, profile: [usize; 3]) -> Result<Option<Packing>> {
        let [a, b, c] = profile;
        self.remaining = [a + b, b + c, a + c];
        self.direct_used = [false; 3];
        self.last_key = [0; 3];
        self.segs = Default::default();
        if self.dfs()? {
            Ok(Some(std::mem::take(&mut self.segs)))
        } else {
            Ok(None)
        }
    }

    fn direct_avail(&self, p: usize) -> usize {
        usize::from(
            self.adjacent[p]
                && !self.direct_used[p]
                && self.last_key[p] == 0
                && self.remaining[p] > 0,
        )
    }

    fn bounds_ok(&self) -> bool {
        let g = self.g;
        let free = self.free;
        let need: [usize; 3] = std::array::from_fn(|p| self.remaining[p] - self.direct_avail(p));
        // incidence at each terminal
        for (ti, &u) in self.t.iter().enumerate() {
            let demand: usize = (0..3)
                .filter(|&p| PAIRS[p].0 == ti || PAIRS[p].1 == ti)
                .map(|p| need[p])
                .sum();
            if demand > (g.adj[u] & free).count_ones() as usize {
                return false;
            }
        }
        // interior vertices
        let mut cost = 0;
        for p in 0..3 {
            if need[p] == 0 {
                continue;
            }
            let (s, t) = (self.t[PAIRS[p].0], self.t[PAIRS[p].1]);
            let d = interior_distance(&g.adj, s, t, free);
            if d == NONE {
                return false;
            }
            if d >= 2 {
                cost += need[p] * d;
            } else {
                let common = (g.adj[s] & g.adj[t] & free).count_ones() as usize;
                let single = need[p].min(common);
                cost += single + 2 * (need[p] - single);
            }
        }
        if cost > free.count_ones() as usize {
            return false;
        }
        // flow from each terminal to the other two
        for (ti, &u) in self.t.iter().enumerate() {
            let mut sinks = [(0usize, 0usize); 2];
            let mut k = 0;
            let mut want = 0;
            for p in 0..3 {
                let (i, j) = PAIRS[p];
                let other = if i == ti {
                    j
                } else if j == ti {
                    i
                } else {
                    continue;
                };
                sinks[k] = (self.t[other], need[p]);
                want += need[p];
                k += 1;
            }
            if want > 0 && sink_flow(&g.adj, u, free, &sinks) < want {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self) -> Result<bool> {
        if self.remaining == [0; 3] {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        if !self.bounds_ok() {
            return Ok(false);
        }
        let p = (0..3)
            .max_by_key(|&p| (self.remaining[p], std::cmp::Reverse(p)))
            .unwrap();
        let (s, t) = (self.t[PAIRS[p].0], self.t[PAIRS[p].1]);
        if self.direct_avail(p) == 1 {
            self.direct_used[p] = true;
            self.remaining[p] -= 1;
            self.last_key[p] = 1;
            self.segs[p].push(vec![s, t]);
            if self.dfs()? {
                return Ok(true);
            }
            self.segs[p].pop();
            self.last_key[p] = 0;
            self.remaining[p] += 1;
            self.direct_used[p] = false;
        }
        let max_len = self.free.count_ones() as usize;
        for len in 1..=max_len {
            match self.segments_of_length(p, s, t, len)? {
                LengthOutcome::Solved => return Ok(true),
                LengthOutcome::Exhausted { any_prefix } => {
                    if !any_prefix {
                        break;
                    }
                }
            }
        }
        Ok(false)
    }

    /// Enumerates induced `s`-`t` segments with exactly `len` interior
    /// vertices and recurses on each. `any_prefix` reports whether some
    /// partial segment reached depth `len`, i.e. whether longer ones may exist.
    fn segments_of_length(
        &mut self,
        p: usize,
        s: usize,
        t: usize,
        len: usize,
    ) -> Result<LengthOutcome> {
        let adj = &self.g.adj;
        let saved_free = self.free;
        // key = first interior index + 2 must exceed the previous key of this pair
        let min_first = self.last_key[p].saturating_sub(1);
        let first_mask = if min_first >= 128 {
            0
        } else {
            !(bit(min_first) - 1)
        };
        let mut path: Vec<usize> = Vec::with_capacity(len);
        let mut cands: Vec<u128> = Vec::with_capacity(len);
        let mut forbidden: Vec<u128> = Vec::with_capacity(len + 1);
        let mut any_prefix = false;
        // interior vertices before the last one may not touch t
        let tail_mask = |depth: usize| if depth == len { u128::MAX } else { !adj[t] };
        forbidden.push(0);
        cands.push(adj[s] & saved_free & first_mask & tail_mask(1));
        loop {
            let depth = cands.len();
            let c = cands[depth - 1];
            if c == 0 {
                cands.pop();
                if let Some(v) = path.pop() {
                    self.free |= bit(v);
                    forbidden.pop();
                }
                if cands.is_empty() {
                    break;
                }
                continue;
            }
            let v = c.trailing_zeros() as usize;
            cands[depth - 1] &= c - 1;
            if depth == len {
                if adj[t] & bit(v) == 0 {
                    any_prefix = true;
                    continue;
                }
                // complete segment s, path.., v, t
                let mut seg = Vec::with_capacity(len + 2);
                seg.push(s);
                seg.extend_from_slice(&path);
                seg.push(v);
                seg.push(t);
                let key = if path.is_empty() { v } else { path[0] } + 2;
                let interior_mask = path.iter().fold(bit(v), |m, &w| m | bit(w));
                let saved = (self.free, self.last_key[p]);
                self.free &= !interior_mask;
                self.last_key[p] = key;
                self.remaining[p] -= 1;
                self.segs[p].push(seg);
                let solved = self.dfs()?;
                if solved {
                    return Ok(LengthOutcome::Solved);
                }
                self.segs[p].pop();
                self.remaining[p] += 1;
                self.free = saved.0;
                self.last_key[p] = saved.1;
                continue;
            }
            // extend
            let prev_forbidden = *forbidden.last().unwrap();
            let before_last = if let Some(&last) = path.last() {
                adj[last]
            } else {
                adj[s]
            };
            let next_forbidden = prev_forbidden | before_last;
            path.push(v);
            self.free &= !bit(v);
            forbidden.push(next_forbidden);
            let next = adj[v] & self.free & !next_forbidden & tail_mask(depth + 1);
            cands.push(next);
        }
        self.free = saved_free;
        Ok(LengthOutcome::Exhausted { any_prefix })
    }
}

enum LengthOutcome {
    Solved,
    Exhausted { any_prefix: bool },
}

/// Number of edges on a shortest `s`-`t` path whose interior lies in `free`,
/// ignoring the direct edge, or `NONE`. Returns `d - 1` interior vertices'
/// worth: the value is the interior vertex count of a shortest such path.
fn interior_distance(adj: &[u128], s: usize, t: usize, free: u128) -> usize {
    let mut seen = adj[s] & free;
    let mut frontier = seen;
    let mut interior = 1;
    while frontier != 0 {
        if frontier & adj[t] != 0 {
            return interior;
        }
        let mut next = 0u128;
        for v in bits_of(frontier) {
            next |= adj[v];
        }
        next &= free & !seen;
        seen |= next;
        frontier = next;
        interior += 1;
    }
    NONE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::AugmentedCube;
    use crate::flow;
    use crate::graph::{ExplicitGraph, Restricted};

    #[test]
    fn sink_flow_matches_flow_engine() {
        let c = AugmentedCube::new(4).unwrap();
        let g = Compact::new(&c).unwrap();
        let free = g.all() & !(bit(0) | bit(7) | bit(5));
        // interior-only paths from 0000 to 0111 avoiding 0101
        let r = Restricted::new(&c)
            .without_vertices([Vertex(5)])
            .without_edges([(Vertex(0), Vertex(7))]);
        let expect = flow::min_vertex_cut(&r, Vertex(0), Vertex(7)).unwrap();
        assert_eq!(sink_flow(&g.adj, 0, free, &[(7, 10)]), expect);
    }

    #[test]
    fn sink_flow_reroutes() {
        // 0 - 1 - 3 and 0 - 2 - 3, 1 - 4, sinks 3 (cap 1) and 4 (cap 1):
        // the greedy path 0-1-3 must be rerouted through 2
        let g = ExplicitGraph::from_edges(3, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)]);
        let c = Compact::new(&g).unwrap();
        let free = bit(1) | bit(2);
        assert_eq!(sink_flow(&c.adj, 0, free, &[(3, 1), (4, 1)]), 2);
    }

    #[test]
    fn interior_distance_values() {
        let c = AugmentedCube::new(4).unwrap();
        let g = Compact::new(&c).unwrap();
        let free = g.all() & !(bit(0) | bit(15));
        assert_eq!(interior_distance(&g.adj, 0, 15, free), 1);
        let g2 = ExplicitGraph::from_edges(3, &[(0, 1), (1, 2), (2, 3)]);
        let c2 = Compact::new(&g2).unwrap();
        assert_eq!(interior_distance(&c2.adj, 0, 3, bit(1) | bit(2)), 2);
        assert_eq!(interior_distance(&c2.adj, 0, 3, bit(1)), NONE);
    }
}
