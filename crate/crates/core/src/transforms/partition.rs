use crate::geom::polygon::RectilinearPolygon;
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};

/// Cuts a simply connected rectilinear polygon into rectangles with the
/// horizontal chords through its reflex vertices.
///
/// Works slab by slab between consecutive vertex heights. The cross-section
/// of a slab is a set of x-intervals; an interval that continues unchanged
/// into the next slab has no vertex on the line between them, so no chord
/// cuts it and the two pieces merge. Output is sorted by `(y0, x0)`.
pub fn partition_rectilinear(poly: &RectilinearPolygon) -> Vec<Rect> {
    partition_cycles(&[poly.vertices()])
}

/// The same cut for a region bounded by several axis-parallel cycles, such
/// as a hole with pockets. Crossing edges alternate between entering and
/// leaving the region, so each slab pairs them up in x order.
pub fn partition_cycles(cycles: &[&[Point]]) -> Vec<Rect> {
    let mut ys: Vec<Rational> = cycles.iter().flat_map(|c| c.iter().map(|p| p.y.clone())).collect();
    ys.sort();
    ys.dedup();
    let verticals: Vec<(Rational, Rational, Rational)> = cycles
        .iter()
        .flat_map(|c| (0..c.len()).map(move |k| (&c[k], &c[(k + 1) % c.len()])))
        .filter(|(a, b)| a.x == b.x)
        .map(|(a, b)| (a.x.clone(), Rational::min(&a.y, &b.y), Rational::max(&a.y, &b.y)))
        .collect();
    let mut out = Vec::new();
    // open pieces: (x-interval, bottom)
    let mut open: Vec<(Rational, Rational, Rational)> = Vec::new();
    for w in ys.windows(2) {
        let (ya, yb) = (&w[0], &w[1]);
        let mut xs: Vec<Rational> =
            verticals.iter().filter(|(_, lo, hi)| lo <= ya && hi >= yb).map(|(x, _, _)| x.clone()).collect();
        xs.sort();
        let spans: Vec<(Rational, Rational)> = xs.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
        let mut next = Vec::with_capacity(spans.len());
        for (a, b) in spans {
            match open.iter().position(|(oa, ob, _)| *oa == a && *ob == b) {
                Some(k) => next.push(open.swap_remove(k)),
                None => next.push((a, b, ya.clone())),
            }
        }
        for (a, b, bottom) in open.drain(..) {
            out.push(Rect::from_bounds(a, bottom, b, ya.clone()).expect("slab pieces have extent"));
        }
        open = next;
    }
    let top = ys.last().cloned().unwrap_or_default();
    for (a, b, bottom) in open {
        out.push(Rect::from_bounds(a, bottom, b, top.clone()).expect("slab pieces have extent"));
    }
    out.sort_by(|p, q| (p.y0(), p.x0()).cmp(&(q.y0(), q.x0())));
    out
}
