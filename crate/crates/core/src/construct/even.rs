//! Even dimensions six and up.

use super::assemble::{join, materialize, rev, route_pairs, split_q_p, Family};
use super::{CaseLabel, Ctx, Sub};
use crate::cube::{Quadrant, Vertex};
use crate::flow::Path;
use crate::graph::Graph;

pub(crate) fn literal(ctx: &Ctx<'_>, case: CaseLabel, sub: Option<&Sub>) -> Option<Vec<Path>> {
    match case {
        CaseLabel::T1_1_1 => quadrant_partner(ctx, sub?),
        CaseLabel::T1_1_2 => quadrant_plain(ctx, sub?),
        CaseLabel::T1_2_1 => split_partner(ctx),
        CaseLabel::T1_2_2 => split_plain(ctx),
        CaseLabel::T1_3 => halves(ctx),
        _ => None,
    }
}

/// First and last interior vertex of an x-y path, if they differ.
pub(crate) fn ends(q: &Path) -> Option<(Vertex, Vertex)> {
    if q.len() < 4 {
        return None;
    }
    Some((q[1], q[q.len() - 2]))
}

fn with_sub(sub: &Sub, extra: Vec<Path>) -> Vec<Path> {
    let mut all = sub.paths.clone();
    all.extend(extra);
    all
}

/// All three in quadrant 00 and `y = x` complemented at level 3.
fn quadrant_partner(ctx: &Ctx<'_>, sub: &Sub) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h = |v| ctx.h(v, 1);
    let c = |v| ctx.c(v, 1);
    let h2 = |v| ctx.h(v, 2);
    let c2 = |v| ctx.c(v, 2);
    let zc = c(z);
    let q10 = cube.induced_quadrant(Quadrant::Q10).ok()?;
    let a = cube
        .neighbors(zc)
        .into_iter()
        .find(|&w| q10.contains(w) && ![h(x), h(y), h(z)].contains(&w))?;
    let r = route_pairs(&q10, &[(h(x), h(z)), (a, h(y))], &[])?;
    let diamond = cube.diamond(Quadrant::Q01, Quadrant::Q11).ok()?;
    let s = route_pairs(
        &diamond,
        &[(c(x), c2(z)), (c(y), h2(z))],
        &[h2(x), h2(y), zc],
    )?;
    let psi_a = join(&[y, h2(x), x, c(x)], &join(&s[0], &[c2(z), z]));
    let psi_b = join(&[x, h2(y), y, c(y)], &join(&s[1], &[h2(z), z]));
    let psi_c = join(
        &join(&[x, h(x)], &r[0]),
        &join(&[h(z), z, zc, a], &join(&r[1], &[h(y), y])),
    );
    Some(with_sub(sub, vec![psi_a, psi_b, psi_c]))
}

fn quadrant_plain(ctx: &Ctx<'_>, sub: &Sub) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h = |v| ctx.h(v, 1);
    let c = |v| ctx.c(v, 1);
    let h2 = |v| ctx.h(v, 2);
    let c2 = |v| ctx.c(v, 2);
    let q01 = cube.induced_quadrant(Quadrant::Q01).ok()?;
    let r = route_pairs(&q01, &[(h2(x), h2(z)), (h2(y), c2(z)), (c2(x), c2(y))], &[])?;
    let half1 = cube.induced_half(1).ok()?;
    let s = route_pairs(&half1, &[(h(x), h(z)), (h(y), c(z)), (c(x), c(y))], &[])?;
    // x, x^h2 ~ z^h2, z, z^c2 ~ y^h2, y
    let psi1 = join(
        &join(&[x, h2(x)], &r[0]),
        &join(&[h2(z), z, c2(z)], &join(&rev(&r[1]), &[h2(y), y])),
    );
    // y, y^c2 ~ x^c2, x, x^h ~ z^h, z
    let psi2 = join(
        &join(&[y, c2(y)], &rev(&r[2])),
        &join(&[c2(x), x, h(x)], &join(&s[0], &[h(z), z])),
    );
    // x, x^c ~ y^c, y, y^h ~ z^c, z
    let psi3 = join(
        &join(&[x, c(x)], &s[2]),
        &join(&[c(y), y, h(y)], &join(&s[1], &[c(z), z])),
    );
    Some(with_sub(sub, vec![psi1, psi2, psi3]))
}

/// Arms `x, x_i, image` for the x ends of the listed paths.
fn x_arm(x: Vertex, q: &Path, img: impl Fn(Vertex) -> Vertex) -> Option<Path> {
    let (a, _) = ends(q)?;
    Some(vec![x, a, img(a)])
}

fn y_arm(y: Vertex, q: &Path, img: impl Fn(Vertex) -> Vertex) -> Option<Path> {
    let (_, b) = ends(q)?;
    Some(vec![y, b, img(b)])
}

/// x, y in quadrant 00, z in 01 and `z` is the level-2 complement of `x`.
fn split_partner(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let n = ctx.n() as usize;
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h2 = |v| ctx.h(v, 2);
    let k2 = n / 2;
    let q00 = cube.induced_quadrant(Quadrant::Q00).ok()?;
    let (q, p) = split_q_p(&q00, x, y, 2 * n - 5, n - 3)?;
    let pp = |i: usize| p[i - 1].clone();
    let qq = |i: usize| &q[i - 1];
    let mut fams = Vec::new();
    for i in 1..=k2 - 2 {
        fams.push(Family::A {
            p: pp(i),
            arm: x_arm(x, qq(i), h2)?,
        });
    }
    for k in 1..=k2 - 2 {
        fams.push(Family::B {
            p: pp(k2 - 2 + k),
            arm: y_arm(y, qq(k), h2)?,
        });
    }
    for k in k2 - 1..=n - 3 {
        fams.push(Family::C {
            xarm: x_arm(x, qq(k), h2)?,
            yarm: y_arm(y, qq(k), h2)?,
        });
    }
    fams.push(Family::C {
        xarm: vec![x, z],
        yarm: vec![y, h2(y)],
    });
    fams.push(Family::A {
        p: pp(n - 3),
        arm: vec![x, ctx.h(x, 1), z],
    });
    fams.push(Family::A {
        p: pp(n - 2),
        arm: vec![x, ctx.c(x, 1), z],
    });
    let q01 = cube.induced_quadrant(Quadrant::Q01).ok()?;
    materialize(&q01, ctx.d(), &fams)
}

/// x, y in quadrant 00, z in 01, `z` not complement-paired with x or y.
fn split_plain(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let n = ctx.n() as usize;
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h = |v| ctx.h(v, 1);
    let c = |v| ctx.c(v, 1);
    let h2 = |v| ctx.h(v, 2);
    let k2 = n / 2;
    let q00 = cube.induced_quadrant(Quadrant::Q00).ok()?;
    let (q, p) = split_q_p(&q00, x, y, 2 * n - 5, n - 3)?;
    let half1 = cube.induced_half(1).ok()?;
    let s = route_pairs(&half1, &[(h(x), c(z)), (c(x), h(y)), (c(y), h(z))], &[])?;
    let pp = |i: usize| p[i - 1].clone();
    let qq = |i: usize| &q[i - 1];
    let mut fams = Vec::new();
    for i in 1..=k2 - 2 {
        fams.push(Family::A {
            p: pp(i),
            arm: x_arm(x, qq(i), h2)?,
        });
    }
    for k in 1..=k2 - 2 {
        fams.push(Family::B {
            p: pp(k2 - 2 + k),
            arm: y_arm(y, qq(k), h2)?,
        });
    }
    for k in k2 - 1..=n - 4 {
        fams.push(Family::C {
            xarm: x_arm(x, qq(k), h2)?,
            yarm: y_arm(y, qq(k), h2)?,
        });
    }
    fams.push(Family::C {
        xarm: vec![x, h2(x)],
        yarm: vec![y, h2(y)],
    });
    fams.push(Family::A {
        p: pp(n - 2),
        arm: x_arm(x, qq(n - 3), h2)?,
    });
    fams.push(Family::A {
        p: pp(n - 3),
        arm: join(&join(&[x, h(x)], &s[0]), &[c(z), z]),
    });
    // x, x^c ~ y^h, y, y^c ~ z^h, z
    fams.push(Family::Whole(join(
        &join(&[x, c(x)], &s[1]),
        &join(&[h(y), y, c(y)], &join(&s[2], &[h(z), z])),
    )));
    let q01 = cube.induced_quadrant(Quadrant::Q01).ok()?;
    materialize(&q01, ctx.d(), &fams)
}

/// x, y in half 0 and z in half 1.
fn halves(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let n = ctx.n() as usize;
    let (x, y) = (ctx.x, ctx.y);
    let h = |v| ctx.h(v, 1);
    let k2 = n / 2;
    let half0 = cube.induced_half(0).ok()?;
    let (q, p) = split_q_p(&half0, x, y, 2 * n - 3, n - 2)?;
    let pp = |i: usize| p[i - 1].clone();
    let qq = |i: usize| &q[i - 1];
    let mut fams = Vec::new();
    for i in 1..=k2 - 2 {
        fams.push(Family::A {
            p: pp(i),
            arm: x_arm(x, qq(i), h)?,
        });
    }
    for k in 1..=k2 - 2 {
        fams.push(Family::B {
            p: pp(k2 - 2 + k),
            arm: y_arm(y, qq(k), h)?,
        });
    }
    for k in k2 - 1..=n - 4 {
        fams.push(Family::C {
            xarm: x_arm(x, qq(k), h)?,
            yarm: y_arm(y, qq(k), h)?,
        });
    }
    fams.push(Family::C {
        xarm: vec![x, h(x)],
        yarm: vec![y, h(y)],
    });
    fams.push(Family::A {
        p: pp(n - 3),
        arm: x_arm(x, qq(n - 3), h)?,
    });
    fams.push(Family::B {
        p: pp(n - 2),
        arm: y_arm(y, qq(n - 3), h)?,
    });
    let xa = *qq(n - 2).get(1)?;
    fams.push(Family::A {
        p: pp(n - 1),
        arm: vec![x, xa, h(xa)],
    });
    let half1 = cube.induced_half(1).ok()?;
    materialize(&half1, ctx.d(), &fams)
}
