//! Dimension four.

use super::assemble::{materialize, split_q_p, Family};
use super::{CaseLabel, Ctx};
use crate::cube::{Quadrant, Vertex};
use crate::flow::Path;

pub(crate) fn literal(ctx: &Ctx<'_>, case: CaseLabel) -> Option<Vec<Path>> {
    match case {
        CaseLabel::L8_1 => Some(one_quadrant(ctx)),
        CaseLabel::L8_2 => two_quadrants(ctx),
        CaseLabel::L8_3_1 => partner_halves(ctx),
        CaseLabel::L8_3_2 => halves(ctx),
        _ => None,
    }
}

/// Fixed listing; canonical terminals are 0000, 0010, 0001.
fn one_quadrant(ctx: &Ctx<'_>) -> Vec<Path> {
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h = |v| ctx.h(v, 1);
    let c = |v| ctx.c(v, 1);
    let h2 = |v| ctx.h(v, 2);
    let a = Vertex(x.0 ^ 0b0011);
    vec![
        vec![y, x, z],
        vec![x, a, y, z],
        vec![x, h2(x), h2(y), y, h2(z), z],
        vec![y, h(y), h(x), x, c(x), c(z), z],
    ]
}

fn two_quadrants(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let (x, y) = (ctx.x, ctx.y);
    let xy_region = cube.diamond(Quadrant::Q00, Quadrant::Q10).ok()?;
    let (_, p) = split_q_p(&xy_region, x, y, 4, 0)?;
    let fams = vec![
        Family::A {
            p: p[0].clone(),
            arm: vec![x, ctx.h(x, 2)],
        },
        Family::B {
            p: p[1].clone(),
            arm: vec![y, ctx.h(y, 2)],
        },
        Family::A {
            p: p[2].clone(),
            arm: vec![x, ctx.c(x, 1)],
        },
        Family::B {
            p: p[3].clone(),
            arm: vec![y, ctx.c(y, 1)],
        },
    ];
    let fan_region = cube.diamond(Quadrant::Q01, Quadrant::Q11).ok()?;
    materialize(&fan_region, ctx.d(), &fams)
}

/// `y` is the level-2 complement of `x`: five short x-y paths are listed
/// explicitly and four of them are used.
fn partner_halves(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let (x, y) = (ctx.x, ctx.y);
    let w = |bits: u32| Vertex(x.0 ^ bits);
    let h = |v| ctx.h(v, 1);
    let p1 = vec![x, y];
    let p2 = vec![x, w(0b0011), y];
    let p3 = vec![x, w(0b0100), y];
    let p4 = vec![x, w(0b0001), w(0b0101), y];
    let x2 = w(0b0010);
    let y2 = w(0b0110);
    let fams = vec![
        Family::A {
            p: p1,
            arm: vec![x, h(x)],
        },
        Family::B {
            p: p2,
            arm: vec![y, h(y)],
        },
        Family::A {
            p: p3,
            arm: vec![x, x2, h(x2)],
        },
        Family::B {
            p: p4,
            arm: vec![y, y2, h(y2)],
        },
    ];
    let fan_region = ctx.cube.induced_half(1).ok()?;
    materialize(&fan_region, ctx.d(), &fams)
}

fn halves(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let (x, y) = (ctx.x, ctx.y);
    let half0 = cube.induced_half(0).ok()?;
    let (_, p) = split_q_p(&half0, x, y, 4, 0)?;
    let fams = vec![
        Family::A {
            p: p[0].clone(),
            arm: vec![x, ctx.h(x, 1)],
        },
        Family::B {
            p: p[1].clone(),
            arm: vec![y, ctx.h(y, 1)],
        },
        Family::A {
            p: p[2].clone(),
            arm: vec![x, ctx.c(x, 1)],
        },
        Family::B {
            p: p[3].clone(),
            arm: vec![y, ctx.c(y, 1)],
        },
    ];
    let fan_region = cube.induced_half(1).ok()?;
    materialize(&fan_region, ctx.d(), &fams)
}
