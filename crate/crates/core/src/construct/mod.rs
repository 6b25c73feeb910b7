//! Constructive lower bound: `target_count(n)` internally disjoint D-paths
//! for any three vertices of `AQ_n`, `n >= 4`.
//!
//! Each dimension picks a case from where the three terminals sit, relabels
//! them so the case pattern holds literally, and builds the family. When
//! the literal recipe fails verification the same case is completed by a
//! split flow (`Variant::Adjusted`); if that fails too, a direct search on
//! the cube takes over and the step is flagged as a fallback.

mod assemble;
mod base4;
mod even;
mod odd;

use std::fmt;

use crate::cube::{
    canonicalize_with_roles, AugmentedCube, CanonicalTriple, Vertex, XorTranslation,
};
use crate::error::{Error, Result};
use crate::flow::Path;
use crate::oracle::{find_dpaths, orient_paths};
use crate::verify::{check_family, Verdict};

/// Node budget for the search used as the last resort at one level.
pub const FALLBACK_BUDGET: u64 = 20_000_000;

/// Paths the constructor delivers on `AQ_n`.
pub fn target_count(n: u32) -> Result<usize> {
    if n < 4 {
        return Err(Error::InvalidDimension(n));
    }
    let n = n as usize;
    Ok(if n.is_multiple_of(2) {
        3 * n / 2 - 2
    } else {
        3 * (n - 1) / 2 - 1
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    L8_1,
    L8_2,
    L8_3_1,
    L8_3_2,
    T1_1_1,
    T1_1_2,
    T1_2_1,
    T1_2_2,
    T1_3,
    C1,
    C2,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 11] = [
        CaseLabel::L8_1,
        CaseLabel::L8_2,
        CaseLabel::L8_3_1,
        CaseLabel::L8_3_2,
        CaseLabel::T1_1_1,
        CaseLabel::T1_1_2,
        CaseLabel::T1_2_1,
        CaseLabel::T1_2_2,
        CaseLabel::T1_3,
        CaseLabel::C1,
        CaseLabel::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::L8_1 => "L8.1",
            CaseLabel::L8_2 => "L8.2",
            CaseLabel::L8_3_1 => "L8.3.1",
            CaseLabel::L8_3_2 => "L8.3.2",
            CaseLabel::T1_1_1 => "T1.1.1",
            CaseLabel::T1_1_2 => "T1.1.2",
            CaseLabel::T1_2_1 => "T1.2.1",
            CaseLabel::T1_2_2 => "T1.2.2",
            CaseLabel::T1_3 => "T1.3",
            CaseLabel::C1 => "C.1",
            CaseLabel::C2 => "C.2",
        }
    }

    /// Cases that recurse into a smaller cube.
    pub fn recurses(self) -> bool {
        matches!(self, CaseLabel::T1_1_1 | CaseLabel::T1_1_2 | CaseLabel::C1)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the family at one level was completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The case recipe as written.
    Literal,
    /// Same case split, x-y paths and z-paths re-chosen by one flow.
    Adjusted,
    /// Direct search on the cube at this level.
    Fallback,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Adjusted => "adjusted",
            Variant::Fallback => "fallback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub dimension: u32,
    pub case: CaseLabel,
    /// Translation taking the caller's vertices to the canonical frame.
    pub translation: XorTranslation,
    /// `roles[r]` is the index in this level's triple playing x, y, z.
    pub roles: [usize; 3],
    pub variant: Variant,
}

impl TraceStep {
    pub fn fallback(&self) -> bool {
        self.variant == Variant::Fallback
    }

    pub fn line(&self) -> String {
        format!(
            "trace: n={} case={} t={} roles={},{},{} variant={}",
            self.dimension,
            self.case,
            self.translation.0.to_binary(self.dimension),
            self.roles[0],
            self.roles[1],
            self.roles[2],
            self.variant.name()
        )
    }
}

/// Steps from the outermost dimension down.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    pub fn fallback(&self) -> bool {
        self.steps.iter().any(TraceStep::fallback)
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn leaf(&self) -> Option<CaseLabel> {
        self.steps.last().map(|s| s.case)
    }

    pub fn lines(&self) -> Vec<String> {
        self.steps.iter().map(TraceStep::line).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPathFamily {
    pub terminals: [Vertex; 3],
    pub paths: Vec<Path>,
    pub trace: ConstructionTrace,
}

/// Canonical terminals of the current level plus the cube they live in.
pub(crate) struct Ctx<'a> {
    pub cube: &'a AugmentedCube,
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
}

impl Ctx<'_> {
    pub fn n(&self) -> u32 {
        self.cube.dimension()
    }
    pub fn d(&self) -> [Vertex; 3] {
        [self.x, self.y, self.z]
    }
    pub fn h(&self, v: Vertex, level: u32) -> Vertex {
        self.cube.h(v, level)
    }
    pub fn c(&self, v: Vertex, level: u32) -> Vertex {
        self.cube.c(v, level)
    }
}

/// A family found inside a subcube, already in this level's coordinates.
pub(crate) struct Sub {
    pub paths: Vec<Path>,
    pub steps: Vec<TraceStep>,
}

impl Sub {
    /// Non-terminal vertices used by the recursive family.
    pub fn interiors(&self, d: [Vertex; 3]) -> Vec<Vertex> {
        self.paths
            .iter()
            .flatten()
            .copied()
            .filter(|v| !d.contains(v))
            .collect()
    }
}

pub fn construct(n: u32, d: [Vertex; 3]) -> Result<DPathFamily> {
    let target = target_count(n)?;
    let cube = AugmentedCube::new(n)?;
    for v in d {
        cube.check_vertex(v)?;
    }
    if d[0] == d[1] || d[0] == d[2] || d[1] == d[2] {
        return Err(Error::DuplicateTerminal);
    }
    let (mut paths, steps) = build(&cube, d)?;
    match check_family(&cube, d, &paths) {
        Verdict::Accept(k) if k == target => {}
        other => {
            return Err(Error::Construction(format!(
                "assembled family rejected: {other:?}"
            )))
        }
    }
    orient_paths(&mut paths);
    Ok(DPathFamily {
        terminals: d,
        paths,
        trace: ConstructionTrace { steps },
    })
}

/// Case and role assignment for a triple of `cube`.
pub(crate) fn classify(cube: &AugmentedCube, d: [Vertex; 3]) -> (CaseLabel, [usize; 3]) {
    let n = cube.dimension();
    let half = d.map(|v| cube.half(v));
    let quad = d.map(|v| cube.quadrant_index(v));
    let sorted = |mut idx: Vec<usize>| -> Vec<usize> {
        idx.sort_by_key(|&i| d[i]);
        idx
    };
    // the index alone in its class, with the other two ascending
    let lone = |labels: [u8; 3]| -> Option<[usize; 3]> {
        let z = (0..3).find(|&i| labels.iter().filter(|&&l| l == labels[i]).count() == 1)?;
        let p = sorted((0..3).filter(|&i| i != z).collect());
        Some([p[0], p[1], z])
    };
    let asc = {
        let s = sorted(vec![0, 1, 2]);
        [s[0], s[1], s[2]]
    };
    let c2 = crate::cube::complement_word(n, 2);
    let c3 = if n >= 3 {
        crate::cube::complement_word(n, 3)
    } else {
        0
    };
    let spans = half[0] != half[1] || half[0] != half[2];
    let one_quad = quad[0] == quad[1] && quad[0] == quad[2];

    if n == 4 {
        if one_quad {
            // x is the quadrant vertex opposite the missing one
            let q = (d[0].0 >> 2) << 2;
            let missing = (0..4u32)
                .map(|i| q | i)
                .find(|v| !d.iter().any(|w| w.0 == *v))
                .unwrap();
            let x = missing ^ 0b0011;
            let y = x ^ 0b0010;
            let z = x ^ 0b0001;
            let at = |v: u32| d.iter().position(|w| w.0 == v).unwrap();
            return (CaseLabel::L8_1, [at(x), at(y), at(z)]);
        }
        let roles = lone(if spans { half } else { quad }).unwrap();
        if !spans {
            return (CaseLabel::L8_2, roles);
        }
        let (x, y) = (d[roles[0]], d[roles[1]]);
        let case = if x.0 ^ y.0 == c2 {
            CaseLabel::L8_3_1
        } else {
            CaseLabel::L8_3_2
        };
        return (case, roles);
    }

    if n % 2 == 1 {
        if spans {
            return (CaseLabel::C2, lone(half).unwrap());
        }
        // x: first vertex whose level-2 complement partner is not in D
        let x = asc
            .into_iter()
            .find(|&i| !d.contains(&Vertex(d[i].0 ^ c2)))
            .unwrap_or(asc[0]);
        let rest = sorted((0..3).filter(|&i| i != x).collect());
        return (CaseLabel::C1, [x, rest[0], rest[1]]);
    }

    if spans {
        return (CaseLabel::T1_3, lone(half).unwrap());
    }
    if one_quad {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if d[i].0 ^ d[j].0 == c3 {
                let p = sorted(vec![i, j]);
                let z = 3 - i - j;
                return (CaseLabel::T1_1_1, [p[0], p[1], z]);
            }
        }
        return (CaseLabel::T1_1_2, asc);
    }
    let roles = lone(quad).unwrap();
    let z = d[roles[2]];
    let partner = Vertex(z.0 ^ c2);
    if partner == d[roles[0]] {
        (CaseLabel::T1_2_1, roles)
    } else if partner == d[roles[1]] {
        (CaseLabel::T1_2_1, [roles[1], roles[0], roles[2]])
    } else {
        (CaseLabel::T1_2_2, roles)
    }
}

fn accepts(cube: &AugmentedCube, d: [Vertex; 3], paths: &[Path], want: usize) -> bool {
    matches!(check_family(cube, d, paths), Verdict::Accept(k) if k == want)
}

/// Recursive builder; returns paths in the caller's coordinates and the
/// trace from this level down.
pub(crate) fn build(cube: &AugmentedCube, d: [Vertex; 3]) -> Result<(Vec<Path>, Vec<TraceStep>)> {
    let n = cube.dimension();
    let target = target_count(n)?;
    let (case, roles) = classify(cube, d);
    let canon: CanonicalTriple = canonicalize_with_roles(cube, d, roles)?;
    let ctx = Ctx {
        cube,
        x: canon.x(),
        y: canon.y(),
        z: canon.z(),
    };
    let cd = ctx.d();

    let sub = if case.recurses() {
        let m = if n.is_multiple_of(2) { n - 2 } else { n - 1 };
        let small = AugmentedCube::new(m)?;
        // canonical terminals all lie in the low quadrant/half, whose words
        // are the vertices of the smaller cube
        let (paths, steps) = build(&small, cd)?;
        Some(Sub { paths, steps })
    } else {
        None
    };

    let literal = match case {
        CaseLabel::L8_1 | CaseLabel::L8_2 | CaseLabel::L8_3_1 | CaseLabel::L8_3_2 => {
            base4::literal(&ctx, case)
        }
        CaseLabel::T1_1_1
        | CaseLabel::T1_1_2
        | CaseLabel::T1_2_1
        | CaseLabel::T1_2_2
        | CaseLabel::T1_3 => even::literal(&ctx, case, sub.as_ref()),
        CaseLabel::C1 | CaseLabel::C2 => odd::literal(&ctx, case, sub.as_ref()),
    };

    let mut found = None;
    if let Some(p) = literal {
        if accepts(cube, cd, &p, target) {
            found = Some((p, Variant::Literal));
        }
    }
    if found.is_none() {
        if let Some(p) = adjusted(&ctx, case, sub.as_ref()) {
            if accepts(cube, cd, &p, target) {
                found = Some((p, Variant::Adjusted));
            }
        }
    }
    let (paths, variant) = match found {
        Some(f) => f,
        None => {
            let hit = find_dpaths(cube, cd, target, FALLBACK_BUDGET)?.ok_or_else(|| {
                Error::Construction(format!("no {target} D-paths found for {cd:?} in AQ_{n}"))
            })?;
            (hit.paths, Variant::Fallback)
        }
    };
    let mut steps = vec![TraceStep {
        dimension: n,
        case,
        translation: canon.translation,
        roles,
        variant,
    }];
    // a fallback replaces the whole level, recursion included
    if variant != Variant::Fallback {
        if let Some(s) = sub {
            steps.extend(s.steps);
        }
    }
    Ok((canon.pull_back_paths(&paths), steps))
}

/// Keeps the case split but lets flows choose the x-y paths and the
/// z-paths. Recursive cases keep the subcube family and complete the
/// remaining paths in what is left of the cube.
fn adjusted(ctx: &Ctx<'_>, case: CaseLabel, sub: Option<&Sub>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let d = ctx.d();
    let target = target_count(ctx.n()).ok()?;
    if let Some(sub) = sub {
        let extra = target - sub.paths.len();
        let base = crate::graph::Restricted::new(cube).without_vertices(sub.interiors(d));
        let more = crate::flow::split_flow(&base, &base, d, extra).or_else(|| {
            find_dpaths(&base, d, extra, FALLBACK_BUDGET)
                .ok()
                .flatten()
                .map(|r| r.paths)
        })?;
        let mut all = sub.paths.clone();
        all.extend(more);
        return Some(all);
    }
    let region = match case {
        CaseLabel::L8_1 => return crate::flow::split_flow(cube, cube, d, target),
        CaseLabel::L8_2 => cube
            .diamond(crate::cube::Quadrant::Q00, crate::cube::Quadrant::Q10)
            .ok()?,
        CaseLabel::T1_2_1 | CaseLabel::T1_2_2 => {
            cube.induced_quadrant(crate::cube::Quadrant::Q00).ok()?
        }
        _ => cube.induced_half(0).ok()?,
    };
    crate::flow::split_flow(cube, &region, d, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        Vertex::parse_binary(s, s.len() as u32).unwrap()
    }

    #[test]
    fn target_values() {
        assert_eq!(target_count(4).unwrap(), 4);
        assert_eq!(target_count(5).unwrap(), 5);
        assert_eq!(target_count(6).unwrap(), 7);
        assert_eq!(target_count(7).unwrap(), 8);
        assert!(target_count(3).is_err());
    }

    #[test]
    fn base_instance_matches_listing() {
        let d = [v("0000"), v("0010"), v("0001")];
        let f = construct(4, d).unwrap();
        assert_eq!(f.trace.steps[0].case, CaseLabel::L8_1);
        assert_eq!(f.trace.steps[0].variant, Variant::Literal);
        let interiors: Vec<Vec<Vertex>> = f
            .paths
            .iter()
            .map(|p| {
                let mut i: Vec<Vertex> = p.iter().copied().filter(|w| !d.contains(w)).collect();
                i.sort();
                i
            })
            .collect();
        assert!(interiors.contains(&vec![]));
        assert!(interiors.contains(&vec![v("0011")]));
        assert!(interiors.contains(&vec![v("0100"), v("0101"), v("0110")]));
        assert!(interiors.contains(&vec![v("1000"), v("1010"), v("1110"), v("1111")]));
    }

    #[test]
    fn classification_examples() {
        let c = AugmentedCube::new(6).unwrap();
        let (case, _) = classify(&c, [v("000000"), v("000010"), v("000001")]);
        assert!(matches!(case, CaseLabel::T1_1_1 | CaseLabel::T1_1_2));
        let (case, roles) = classify(&c, [v("011111"), v("000000"), v("000101")]);
        assert_eq!(case, CaseLabel::T1_2_1);
        assert_eq!(roles[0], 1);
        let (case, _) = classify(&c, [v("000000"), v("000101"), v("100000")]);
        assert_eq!(case, CaseLabel::T1_3);
        let c5 = AugmentedCube::new(5).unwrap();
        assert_eq!(
            classify(&c5, [v("00000"), v("01000"), v("00111")]).0,
            CaseLabel::C1
        );
        assert_eq!(
            classify(&c5, [v("00000"), v("01000"), v("10111")]).0,
            CaseLabel::C2
        );
    }

    #[test]
    fn recursion_reaches_base() {
        let f = construct(6, [v("000000"), v("000010"), v("000001")]).unwrap();
        assert_eq!(f.paths.len(), 7);
        let labels: Vec<CaseLabel> = f.trace.steps.iter().map(|s| s.case).collect();
        assert!(matches!(labels[0], CaseLabel::T1_1_1 | CaseLabel::T1_1_2));
        assert_eq!(f.trace.steps.last().unwrap().dimension, 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(construct(3, [Vertex(0), Vertex(1), Vertex(2)]).is_err());
        assert!(construct(4, [Vertex(0), Vertex(0), Vertex(2)]).is_err());
        assert!(construct(4, [Vertex(0), Vertex(16), Vertex(2)]).is_err());
    }
}
