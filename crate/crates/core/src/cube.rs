//! Implicit augmented cubes.
//!
//! Vertices of `AQ_n` are `n`-bit words. Bit 1 is the outermost prefix bit
//! of the recursive construction and is stored as the most significant bit
//! of the word, so `0111` is the integer 7 in `AQ_4`.
//!
//! Adjacency is never materialized: `x ~ y` iff `x ^ y` is one of the
//! `2n - 1` masks
//!
//! * `Hyper(d)`, `1 <= d <= n`: only bit `d` set;
//! * `Complement(d)`, `1 <= d <= n - 1`: bits `d..=n` set.
//!
//! Level 1 is the top of the recursion (the hypercubic and complementary
//! matchings between the two halves); level 2 joins sibling quadrants.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest dimension accepted anywhere in the crate.
pub const MAX_DIMENSION: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(pub u32);

impl Vertex {
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Binary label of width `bits`, most significant (outermost) bit first.
    pub fn to_binary(self, bits: u32) -> String {
        (0..bits)
            .rev()
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Parses a binary label of exactly `bits` characters.
    pub fn parse_binary(s: &str, bits: u32) -> Result<Vertex> {
        if s.len() != bits as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Invalid(format!(
                "expected a {bits}-character binary label, got {s:?}"
            )));
        }
        let v = s
            .bytes()
            .fold(0u32, |acc, b| (acc << 1) | u32::from(b - b'0'));
        Ok(Vertex(v))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaskKind {
    Hyper,
    Complement,
}

/// One XOR difference class of `AQ_n` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdjacencyMask {
    pub kind: MaskKind,
    pub level: u32,
    pub word: u32,
}

impl AdjacencyMask {
    pub fn hyper(n: u32, level: u32) -> Result<Self> {
        if level == 0 || level > n {
            return Err(Error::LevelOutOfRange {
                kind: "hypercubic",
                level,
                n,
            });
        }
        Ok(AdjacencyMask {
            kind: MaskKind::Hyper,
            level,
            word: hyper_word(n, level),
        })
    }

    pub fn complement(n: u32, level: u32) -> Result<Self> {
        if level == 0 || level >= n {
            return Err(Error::LevelOutOfRange {
                kind: "complementary",
                level,
                n,
            });
        }
        Ok(AdjacencyMask {
            kind: MaskKind::Complement,
            level,
            word: complement_word(n, level),
        })
    }

    /// All `2n - 1` masks: hypercubic levels `1..=n`, then complementary
    /// levels `1..n`.
    pub fn all(n: u32) -> Vec<AdjacencyMask> {
        let hyper = (1..=n).map(|d| AdjacencyMask {
            kind: MaskKind::Hyper,
            level: d,
            word: hyper_word(n, d),
        });
        let comp = (1..n).map(|d| AdjacencyMask {
            kind: MaskKind::Complement,
            level: d,
            word: complement_word(n, d),
        });
        hyper.chain(comp).collect()
    }

    /// Short label such as `h1` or `c3`.
    pub fn label(&self) -> String {
        match self.kind {
            MaskKind::Hyper => format!("h{}", self.level),
            MaskKind::Complement => format!("c{}", self.level),
        }
    }
}

#[inline]
pub(crate) fn hyper_word(n: u32, level: u32) -> u32 {
    1 << (n - level)
}

#[inline]
pub(crate) fn complement_word(n: u32, level: u32) -> u32 {
    ((1u64 << (n - level + 1)) - 1) as u32
}

/// One of the four sub-cubes fixed by vertex bits 1 and 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadrant(u8);

impl Quadrant {
    pub const Q00: Quadrant = Quadrant(0);
    pub const Q01: Quadrant = Quadrant(1);
    pub const Q10: Quadrant = Quadrant(2);
    pub const Q11: Quadrant = Quadrant(3);

    pub fn new(b1: u8, b2: u8) -> Result<Self> {
        if b1 > 1 || b2 > 1 {
            return Err(Error::Invalid(format!(
                "quadrant bits must be 0/1, got {b1}{b2}"
            )));
        }
        Ok(Quadrant(b1 << 1 | b2))
    }

    pub fn bits(self) -> (u8, u8) {
        (self.0 >> 1, self.0 & 1)
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.bits();
        write!(f, "{a}{b}")
    }
}

/// Translation `x -> x ^ v`. Every such map is an automorphism of `AQ_n`,
/// since adjacency only depends on `x ^ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct XorTranslation(pub Vertex);

impl XorTranslation {
    pub const IDENTITY: XorTranslation = XorTranslation(Vertex(0));

    #[inline]
    pub fn apply(self, x: Vertex) -> Vertex {
        Vertex(x.0 ^ (self.0).0)
    }

    pub fn apply_path(self, path: &[Vertex]) -> Vec<Vertex> {
        path.iter().map(|&v| self.apply(v)).collect()
    }

    /// Translations are involutions.
    pub fn inverse(self) -> XorTranslation {
        self
    }
}

pub fn translate(x: Vertex, t: XorTranslation) -> Vertex {
    t.apply(x)
}

/// `AQ_n` as an adjacency oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedCube {
    n: u32,
    masks: Vec<u32>,
}

impl AugmentedCube {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::InvalidDimension(n));
        }
        let masks = AdjacencyMask::all(n).into_iter().map(|m| m.word).collect();
        Ok(AugmentedCube { n, masks })
    }

    #[inline]
    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    /// `(2n - 1) * 2^(n-1)`, which is 1 for `n = 1`.
    pub fn size(&self) -> u64 {
        (2 * u64::from(self.n) - 1) << (self.n - 1)
    }

    pub fn mask_words(&self) -> &[u32] {
        &self.masks
    }

    pub fn check_vertex(&self, x: Vertex) -> Result<()> {
        if u64::from(x.0) < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                value: u64::from(x.0),
                bits: self.n,
            })
        }
    }

    pub fn h_neighbor(&self, x: Vertex, level: u32) -> Result<Vertex> {
        self.check_vertex(x)?;
        let m = AdjacencyMask::hyper(self.n, level)?;
        Ok(Vertex(x.0 ^ m.word))
    }

    pub fn c_neighbor(&self, x: Vertex, level: u32) -> Result<Vertex> {
        self.check_vertex(x)?;
        let m = AdjacencyMask::complement(self.n, level)?;
        Ok(Vertex(x.0 ^ m.word))
    }

    /// Unchecked hypercubic neighbor, for internal use with known levels.
    #[inline]
    pub(crate) fn h(&self, x: Vertex, level: u32) -> Vertex {
        Vertex(x.0 ^ hyper_word(self.n, level))
    }

    #[inline]
    pub(crate) fn c(&self, x: Vertex, level: u32) -> Vertex {
        Vertex(x.0 ^ complement_word(self.n, level))
    }

    /// Neighbors tagged with the mask that produces them, in mask order.
    pub fn labeled_neighbors(&self, x: Vertex) -> Vec<(AdjacencyMask, Vertex)> {
        AdjacencyMask::all(self.n)
            .into_iter()
            .map(|m| (m, Vertex(x.0 ^ m.word)))
            .collect()
    }

    /// The half of `x`: its bit 1.
    pub fn half(&self, x: Vertex) -> u8 {
        (x.0 >> (self.n - 1) & 1) as u8
    }

    pub fn quadrant(&self, x: Vertex) -> Result<Quadrant> {
        if self.n < 2 {
            return Err(Error::ViewUndefined {
                required: 2,
                n: self.n,
            });
        }
        Ok(Quadrant((x.0 >> (self.n - 2) & 3) as u8))
    }

    #[inline]
    pub(crate) fn quadrant_index(&self, x: Vertex) -> u8 {
        (x.0 >> (self.n - 2) & 3) as u8
    }

    /// The induced copy of `AQ_{n-1}` on one half.
    pub fn induced_half(&self, half: u8) -> Result<CubeRegion> {
        if self.n < 2 {
            return Err(Error::ViewUndefined {
                required: 2,
                n: self.n,
            });
        }
        if half > 1 {
            return Err(Error::Invalid(format!("half must be 0 or 1, got {half}")));
        }
        let set = if half == 0 { 0b0011 } else { 0b1100 };
        Ok(CubeRegion::new(self.clone(), set))
    }

    /// The induced copy of `AQ_{n-2}` on one quadrant.
    pub fn induced_quadrant(&self, q: Quadrant) -> Result<CubeRegion> {
        if self.n < 3 {
            return Err(Error::ViewUndefined {
                required: 3,
                n: self.n,
            });
        }
        Ok(CubeRegion::new(self.clone(), 1 << q.0))
    }

    /// Two quadrants together with every matching edge between them.
    pub fn diamond(&self, a: Quadrant, b: Quadrant) -> Result<CubeRegion> {
        if self.n < 3 {
            return Err(Error::ViewUndefined {
                required: 3,
                n: self.n,
            });
        }
        if a == b {
            return Err(Error::Invalid(
                "diamond needs two distinct quadrants".into(),
            ));
        }
        Ok(CubeRegion::new(self.clone(), 1 << a.0 | 1 << b.0))
    }

    /// Induced view on an arbitrary set of quadrants (bit `q` of `set`
    /// selects quadrant `q`).
    pub fn region(&self, set: u8) -> CubeRegion {
        debug_assert!(self.n >= 2);
        CubeRegion::new(self.clone(), set & 0xF)
    }
}

impl Graph for AugmentedCube {
    fn label_bits(&self) -> u32 {
        self.n
    }

    fn contains(&self, v: Vertex) -> bool {
        u64::from(v.0) < self.order()
    }

    fn vertices(&self) -> Vec<Vertex> {
        (0..self.order() as u32).map(Vertex).collect()
    }

    fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        if !self.contains(x) {
            return Vec::new();
        }
        let mut out: Vec<Vertex> = self.masks.iter().map(|&m| Vertex(x.0 ^ m)).collect();
        out.sort_unstable();
        out
    }

    fn is_adjacent(&self, x: Vertex, y: Vertex) -> bool {
        if !self.contains(x) || !self.contains(y) || x == y {
            return false;
        }
        let d = x.0 ^ y.0;
        // single bit, or a suffix run 0..01..1 of length at least 2
        d.is_power_of_two() || (d & (d + 1) == 0 && d.count_ones() >= 2)
    }

    fn vertex_count(&self) -> usize {
        self.order() as usize
    }

    fn degree(&self, x: Vertex) -> usize {
        if self.contains(x) {
            self.masks.len()
        } else {
            0
        }
    }
}

/// Induced subgraph of a cube on a union of quadrants.
///
/// One quadrant is a copy of `AQ_{n-2}`, a half is a copy of `AQ_{n-1}`,
/// and two quadrants form a diamond together with the matchings between
/// them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeRegion {
    cube: AugmentedCube,
    set: u8,
}

impl CubeRegion {
    fn new(cube: AugmentedCube, set: u8) -> Self {
        CubeRegion { cube, set }
    }

    pub fn cube(&self) -> &AugmentedCube {
        &self.cube
    }

    pub fn quadrant_set(&self) -> u8 {
        self.set
    }
}

impl Graph for CubeRegion {
    fn label_bits(&self) -> u32 {
        self.cube.n
    }

    fn contains(&self, v: Vertex) -> bool {
        self.cube.contains(v) && self.set >> self.cube.quadrant_index(v) & 1 == 1
    }

    fn vertices(&self) -> Vec<Vertex> {
        let shift = self.cube.n - 2;
        let mut out = Vec::new();
        for q in 0..4u32 {
            if self.set >> q & 1 == 1 {
                let base = q << shift;
                out.extend((0..1u32 << shift).map(|s| Vertex(base | s)));
            }
        }
        out
    }

    fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        if !self.contains(x) {
            return Vec::new();
        }
        let mut out: Vec<Vertex> = self
            .cube
            .masks
            .iter()
            .map(|&m| Vertex(x.0 ^ m))
            .filter(|&y| self.contains(y))
            .collect();
        out.sort_unstable();
        out
    }

    fn is_adjacent(&self, x: Vertex, y: Vertex) -> bool {
        self.contains(x) && self.contains(y) && self.cube.is_adjacent(x, y)
    }

    fn vertex_count(&self) -> usize {
        self.set.count_ones() as usize * (1usize << (self.cube.n - 2))
    }
}

/// A terminal triple relabeled so that the case patterns of the
/// constructor hold literally.
///
/// `terminals[r]` is the translated vertex playing role `r` (x, y, z) and
/// `roles[r]` is its index in the caller's triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalTriple {
    pub terminals: [Vertex; 3],
    pub translation: XorTranslation,
    pub roles: [usize; 3],
}

impl CanonicalTriple {
    pub fn x(&self) -> Vertex {
        self.terminals[0]
    }
    pub fn y(&self) -> Vertex {
        self.terminals[1]
    }
    pub fn z(&self) -> Vertex {
        self.terminals[2]
    }

    pub fn pull_back(&self, v: Vertex) -> Vertex {
        self.translation.inverse().apply(v)
    }

    pub fn pull_back_paths(&self, paths: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
        paths
            .iter()
            .map(|p| self.translation.inverse().apply_path(p))
            .collect()
    }
}

fn validate_triple(cube: &AugmentedCube, d: [Vertex; 3]) -> Result<()> {
    for v in d {
        cube.check_vertex(v)?;
    }
    if d[0] == d[1] || d[0] == d[2] || d[1] == d[2] {
        return Err(Error::DuplicateTerminal);
    }
    Ok(())
}

/// Default roles: the vertex alone in its half (or, when all share a half,
/// alone in its quadrant) plays z; the remaining pair plays x, y in
/// ascending order. A triple inside one quadrant is taken in ascending
/// order. The translation maps x to the zero word, which puts x and y in
/// half 0 (quadrant 00 when they share a quadrant) and a lone z in half 1.
pub fn canonicalize_triple(cube: &AugmentedCube, d: [Vertex; 3]) -> Result<CanonicalTriple> {
    validate_triple(cube, d)?;
    let roles = default_roles(cube, d);
    canonicalize_with_roles(cube, d, roles)
}

pub(crate) fn default_roles(cube: &AugmentedCube, d: [Vertex; 3]) -> [usize; 3] {
    let key = |v: Vertex| -> u8 {
        if cube.dimension() >= 2 {
            cube.quadrant_index(v)
        } else {
            cube.half(v) << 1
        }
    };
    let halves = d.map(|v| cube.half(v));
    let quads = d.map(key);
    let lone = |labels: [u8; 3]| -> Option<usize> {
        (0..3).find(|&i| labels.iter().filter(|&&l| l == labels[i]).count() == 1)
    };
    let z = if halves.iter().any(|&h| h != halves[0]) {
        lone(halves)
    } else if quads.iter().any(|&q| q != quads[0]) {
        lone(quads)
    } else {
        None
    };
    match z {
        Some(z) => {
            let mut pair: Vec<usize> = (0..3).filter(|&i| i != z).collect();
            pair.sort_by_key(|&i| d[i]);
            [pair[0], pair[1], z]
        }
        None => {
            let mut all = [0, 1, 2];
            all.sort_by_key(|&i| d[i]);
            all
        }
    }
}

/// Canonical form for an explicit role assignment; x is translated to zero.
pub fn canonicalize_with_roles(
    cube: &AugmentedCube,
    d: [Vertex; 3],
    roles: [usize; 3],
) -> Result<CanonicalTriple> {
    validate_triple(cube, d)?;
    let mut sorted = roles;
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return Err(Error::Invalid(format!(
            "{roles:?} is not a role permutation"
        )));
    }
    let t = XorTranslation(d[roles[0]]);
    Ok(CanonicalTriple {
        terminals: roles.map(|i| t.apply(d[i])),
        translation: t,
        roles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        Vertex::parse_binary(s, s.len() as u32).unwrap()
    }

    fn b4(x: Vertex) -> String {
        x.to_binary(4)
    }

    #[test]
    fn make_cube_counts() {
        let c1 = AugmentedCube::new(1).unwrap();
        assert_eq!((c1.order(), c1.size()), (2, 1));
        assert_eq!(c1.edges().len(), 1);
        let c2 = AugmentedCube::new(2).unwrap();
        assert_eq!((c2.order(), c2.size()), (4, 6));
        assert_eq!(c2.edges().len(), 6);
        let c4 = AugmentedCube::new(4).unwrap();
        assert_eq!((c4.order(), c4.size()), (16, 56));
        assert_eq!(c4.edges().len(), 56);
        assert_eq!(AugmentedCube::new(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn hyper_and_complement_neighbors() {
        let c = AugmentedCube::new(4).unwrap();
        assert_eq!(b4(c.h_neighbor(v("0000"), 1).unwrap()), "1000");
        assert_eq!(b4(c.h_neighbor(v("0010"), 3).unwrap()), "0000");
        assert_eq!(b4(c.h_neighbor(v("0000"), 4).unwrap()), "0001");
        assert_eq!(b4(c.c_neighbor(v("0000"), 1).unwrap()), "1111");
        assert_eq!(b4(c.c_neighbor(v("0001"), 1).unwrap()), "1110");
        assert_eq!(b4(c.c_neighbor(v("0010"), 2).unwrap()), "0101");
        assert!(c.h_neighbor(v("0000"), 5).is_err());
        assert!(c.h_neighbor(v("0000"), 0).is_err());
        assert!(c.c_neighbor(v("0000"), 4).is_err());
    }

    #[test]
    fn neighbor_sets() {
        let c = AugmentedCube::new(4).unwrap();
        let mut got: Vec<String> = c.neighbors(v("0000")).into_iter().map(b4).collect();
        got.sort();
        let mut want = vec!["1000", "0100", "0010", "0001", "1111", "0111", "0011"];
        want.sort();
        assert_eq!(got, want);

        let mut got: Vec<String> = c.neighbors(v("0111")).into_iter().map(b4).collect();
        got.sort();
        let mut want = vec!["1111", "0011", "0101", "0110", "1000", "0000", "0100"];
        want.sort();
        assert_eq!(got, want);

        let c1 = AugmentedCube::new(1).unwrap();
        assert_eq!(c1.neighbors(Vertex(0)), vec![Vertex(1)]);
    }

    #[test]
    fn adjacency_examples() {
        let c = AugmentedCube::new(4).unwrap();
        assert!(c.is_adjacent(v("0000"), v("0111")));
        assert!(!c.is_adjacent(v("1010"), v("0011")));
        assert!(!c.is_adjacent(v("0101"), v("0101")));
        assert!(!c.is_adjacent(v("0000"), v("0101")));
    }

    #[test]
    fn quadrant_and_half() {
        let c = AugmentedCube::new(4).unwrap();
        assert_eq!(
            (c.quadrant(v("0111")).unwrap(), c.half(v("0111"))),
            (Quadrant::Q01, 0)
        );
        assert_eq!(
            (c.quadrant(v("1010")).unwrap(), c.half(v("1010"))),
            (Quadrant::Q10, 1)
        );
        assert_eq!(
            (c.quadrant(v("0001")).unwrap(), c.half(v("0001"))),
            (Quadrant::Q00, 0)
        );
        let c1 = AugmentedCube::new(1).unwrap();
        assert!(c1.quadrant(Vertex(1)).is_err());
        assert_eq!(c1.half(Vertex(1)), 1);
    }

    #[test]
    fn translation_examples() {
        let t0 = XorTranslation::IDENTITY;
        assert_eq!(translate(v("1011"), t0), v("1011"));
        assert_eq!(translate(v("0000"), XorTranslation(v("0111"))), v("0111"));
        let c = AugmentedCube::new(4).unwrap();
        let t = XorTranslation(v("1010"));
        assert_eq!(t.apply(v("0000")), v("1010"));
        assert_eq!(t.apply(v("0111")), v("1101"));
        assert_eq!(
            c.is_adjacent(v("0000"), v("0111")),
            c.is_adjacent(t.apply(v("0000")), t.apply(v("0111")))
        );
    }

    #[test]
    fn sub_cube_views() {
        let c = AugmentedCube::new(4).unwrap();
        let h0 = c.induced_half(0).unwrap();
        assert_eq!(h0.vertex_count(), 8);
        assert!(h0.vertices().iter().all(|&x| h0.degree(x) == 5));
        let q = c.induced_quadrant(Quadrant::Q00).unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert!(q.vertices().iter().all(|&x| q.degree(x) == 3));
        let d = c.diamond(Quadrant::Q00, Quadrant::Q10).unwrap();
        assert_eq!(d.vertex_count(), 8);
        assert!(d.vertices().iter().all(|&x| d.degree(x) == 4));
        assert!(c.diamond(Quadrant::Q00, Quadrant::Q00).is_err());
        let c2 = AugmentedCube::new(2).unwrap();
        assert!(c2.induced_quadrant(Quadrant::Q00).is_err());
        assert!(c2.induced_half(1).is_ok());
    }

    #[test]
    fn canonical_identity_when_already_canonical() {
        let c = AugmentedCube::new(4).unwrap();
        let d = [v("0000"), v("0010"), v("0001")];
        let ct = canonicalize_triple(&c, d).unwrap();
        assert_eq!(ct.translation, XorTranslation::IDENTITY);
        assert_eq!(ct.terminals, [v("0000"), v("0001"), v("0010")]);
    }

    #[test]
    fn canonical_moves_pair_to_half_zero() {
        let c = AugmentedCube::new(4).unwrap();
        let d = [v("1000"), v("1010"), v("0001")];
        let ct = canonicalize_triple(&c, d).unwrap();
        assert_eq!(c.half(ct.translation.0), 1);
        assert_eq!(ct.roles, [0, 1, 2]);
        assert_eq!(c.half(ct.x()), 0);
        assert_eq!(c.half(ct.y()), 0);
        assert_eq!(c.half(ct.z()), 1);
        for r in 0..3 {
            assert_eq!(ct.pull_back(ct.terminals[r]), d[ct.roles[r]]);
        }
    }

    #[test]
    fn canonical_rejects_duplicates() {
        let c = AugmentedCube::new(4).unwrap();
        assert_eq!(
            canonicalize_triple(&c, [v("0000"), v("0000"), v("0001")]),
            Err(Error::DuplicateTerminal)
        );
        assert!(canonicalize_with_roles(&c, [v("0000"), v("0011"), v("0001")], [0, 0, 1]).is_err());
    }
}
