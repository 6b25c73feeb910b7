//! Odd dimensions five and up.

use super::assemble::{join, materialize, rev, route_pairs, split_q_p, Family};
use super::even::ends;
use super::{CaseLabel, Ctx, Sub};
use crate::flow::Path;

pub(crate) fn literal(ctx: &Ctx<'_>, case: CaseLabel, sub: Option<&Sub>) -> Option<Vec<Path>> {
    match case {
        CaseLabel::C1 => one_half(ctx, sub?),
        CaseLabel::C2 => halves(ctx),
        _ => None,
    }
}

/// Everything in half 0: the even family of the half plus one path
/// y, y^h ~ x^h, x, x^c ~ z^h, z.
fn one_half(ctx: &Ctx<'_>, sub: &Sub) -> Option<Vec<Path>> {
    let (x, y, z) = (ctx.x, ctx.y, ctx.z);
    let h = |v| ctx.h(v, 1);
    let c = |v| ctx.c(v, 1);
    let half1 = ctx.cube.induced_half(1).ok()?;
    let r = route_pairs(&half1, &[(h(x), h(y)), (c(x), h(z))], &[])?;
    let psi = join(
        &join(&[y, h(y)], &rev(&r[0])),
        &join(&[h(x), x, c(x)], &join(&r[1], &[h(z), z])),
    );
    let mut all = sub.paths.clone();
    all.push(psi);
    Some(all)
}

fn halves(ctx: &Ctx<'_>) -> Option<Vec<Path>> {
    let cube = ctx.cube;
    let n = ctx.n() as usize;
    let (x, y) = (ctx.x, ctx.y);
    let h = |v| ctx.h(v, 1);
    let k = (n - 1) / 2;
    let half0 = cube.induced_half(0).ok()?;
    let (q, p) = split_q_p(&half0, x, y, 2 * n - 3, n - 2)?;
    let mut fams = Vec::new();
    for i in 1..=k {
        let (a, _) = ends(&q[i - 1])?;
        fams.push(Family::A {
            p: p[i - 1].clone(),
            arm: vec![x, a, h(a)],
        });
    }
    for j in 1..=k {
        let (_, b) = ends(&q[j - 1])?;
        fams.push(Family::B {
            p: p[k + j - 1].clone(),
            arm: vec![y, b, h(b)],
        });
    }
    for m in k + 1..=n - 3 {
        let (a, b) = ends(&q[m - 1])?;
        fams.push(Family::C {
            xarm: vec![x, a, h(a)],
            yarm: vec![y, b, h(b)],
        });
    }
    fams.push(Family::C {
        xarm: vec![x, h(x)],
        yarm: vec![y, h(y)],
    });
    let half1 = cube.induced_half(1).ok()?;
    materialize(&half1, ctx.d(), &fams)
}
