//! Lower-bound constructions and seeded random arrangements.

pub mod fixtures;
pub mod rng;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Cake, Toppings};
use crate::bounds::isqrt;
use crate::error::{Error, Result};
use crate::geom::polygon::{convex_hull, ConvexPolygon, RectilinearPolygon};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};
use rng::XorShift64Star;

/// Unit-grid cell `[x0, x1] x [y0, y1]` of a combinatorial layout.
type Cell = (i64, i64, i64, i64);

/// Cells of the square-grid layout for `m`, with its width and height.
///
/// `k = isqrt(m - 1)`, `t = m - k^2`. A `k x k` block of unit squares gets
/// up to `k` squares glued on the right, then the rest on top; the last
/// square glued on each side is stretched to the cake edge.
fn grid_layout(m: usize) -> (Vec<Cell>, i64, i64) {
    let k = isqrt(m as u64 - 1) as i64;
    let t = m as i64 - k * k;
    let mut cells: Vec<Cell> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j, i + 1, j + 1))).collect();
    if t <= k {
        cells.extend((0..t - 1).map(|j| (k, j, k + 1, j + 1)));
        cells.push((k, t - 1, k + 1, k));
        (cells, k + 1, k)
    } else {
        let s = t - k;
        cells.extend((0..k).map(|j| (k, j, k + 1, j + 1)));
        cells.extend((0..s - 1).map(|i| (i, k, i + 1, k + 1)));
        cells.push((s - 1, k, k + 1, k + 1));
        (cells, k + 1, k + 1)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Turns every 4-vertex of a unit-grid partition into a small pinwheel hole.
///
/// Coordinates are scaled by 3. Each partition line is cut at 4-vertices
/// into pieces; a piece sits at `3c` or `3c + 1`. At a 4-vertex `(X, Y)`
/// with `X + Y` even (clockwise) the piece above and the piece to the left
/// sit at offset 0, the ones below and to the right at 1; counter-clockwise
/// vertices use the opposite offsets. The hole is `[3X, 3X+1] x [3Y, 3Y+1]`.
fn pinwheel_scale(cells: &[Cell], w: i64, h: i64) -> Vec<Rect> {
    let mut corners: HashMap<(i64, i64), usize> = HashMap::new();
    for &(x0, y0, x1, y1) in cells {
        for p in [(x0, y0), (x1, y0), (x1, y1), (x0, y1)] {
            *corners.entry(p).or_default() += 1;
        }
    }
    let four: HashSet<(i64, i64)> =
        corners.iter().filter(|&(&(x, y), &n)| n == 4 && x > 0 && x < w && y > 0 && y < h).map(|(&p, _)| p).collect();
    // unit edges keyed by (vertical?, x, y) of their lower/left end
    let mut edges: Vec<(bool, i64, i64)> = Vec::new();
    for &(x0, y0, x1, y1) in cells {
        for x in [x0, x1] {
            if x > 0 && x < w {
                edges.extend((y0..y1).map(|y| (true, x, y)));
            }
        }
        for y in [y0, y1] {
            if y > 0 && y < h {
                edges.extend((x0..x1).map(|x| (false, x, y)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let index: HashMap<(bool, i64, i64), usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut dsu = Dsu((0..edges.len()).collect());
    for (&(vertical, x, y), &k) in &index {
        let (next, joint) = if vertical { ((true, x, y + 1), (x, y + 1)) } else { ((false, x + 1, y), (x + 1, y)) };
        if let Some(&k2) = index.get(&next) {
            if !four.contains(&joint) {
                dsu.union(k, k2);
            }
        }
    }
    let mut offset: HashMap<usize, i64> = HashMap::new();
    let mut fours: Vec<&(i64, i64)> = four.iter().collect();
    fours.sort_unstable();
    for &(x, y) in fours {
        let cw = (x + y) % 2 == 0;
        let (a, b) = if cw { (0, 1) } else { (1, 0) };
        for (edge, off) in [((true, x, y), a), ((true, x, y - 1), b), ((false, x - 1, y), a), ((false, x, y), b)] {
            let root = dsu.find(index[&edge]);
            let prev = offset.insert(root, off);
            assert!(prev.is_none() || prev == Some(off), "inconsistent pinwheel offsets at ({x}, {y})");
        }
    }
    let mut coord = |vertical: bool, x: i64, y: i64| -> Rational {
        let (c, limit) = if vertical { (x, w) } else { (y, h) };
        if c == 0 || c == limit {
            return Rational::from_int(3 * c);
        }
        let root = dsu.find(index[&(vertical, x, y)]);
        Rational::from_int(3 * c + offset.get(&root).copied().unwrap_or(0))
    };
    let mut sorted = cells.to_vec();
    sorted.sort_by_key(|&(x0, y0, _, _)| (y0, x0));
    sorted
        .into_iter()
        .map(|(x0, y0, x1, y1)| {
            Rect::from_bounds(coord(true, x0, y0), coord(false, x0, y0), coord(true, x1, y0), coord(false, x0, y1))
                .expect("offsets keep cells non-degenerate")
        })
        .collect()
}

/// Maximal arrangement of `m` toppings in a rectangle with
/// `m - doubleroot(m)` rectangular holes.
pub fn gen_grid(m: usize) -> Result<Arrangement> {
    if m < 1 {
        return Err(Error::InvalidArgument("grid construction needs m >= 1".into()));
    }
    let (cells, w, h) = grid_layout(m);
    let rects = pinwheel_scale(&cells, w, h);
    Ok(Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 3 * w, 3 * h)), rects))
}

/// The grid construction with a staircase of `steps` steps attached to the
/// right side of the cake, flush with its top. The staircase adds `steps`
/// reflex cake vertices and a boundary hole needing `steps` blanks.
pub fn gen_staircase(m: usize, steps: usize) -> Result<Arrangement> {
    if steps < 1 {
        return Err(Error::InvalidArgument("staircase needs T >= 1".into()));
    }
    let grid = gen_grid(m)?;
    let Cake::Rect(base) = &grid.cake else { unreachable!() };
    let (s, h) = (base.x1().clone(), base.y1().clone());
    // step heights n/(T+1) for n = T..1 stay below the top-right topping (height >= 2)
    let depth = |n: usize| &h - &Rational::new(n as i64, steps as i64 + 1);
    let x_at = |i: usize| &s + &Rational::from_int(i as i64);
    let mut vertices = vec![Point::new(Rational::zero(), Rational::zero()), Point::new(s.clone(), Rational::zero())];
    for i in 0..steps {
        let y = depth(steps - i);
        vertices.push(Point::new(x_at(i), y.clone()));
        vertices.push(Point::new(x_at(i + 1), y));
    }
    vertices.push(Point::new(x_at(steps), h.clone()));
    vertices.push(Point::new(Rational::zero(), h));
    let cake = RectilinearPolygon::new(vertices).map_err(Error::Geom)?;
    Ok(Arrangement { cake: Cake::Rectilinear(cake), toppings: grid.toppings, labels: grid.labels })
}

/// `m` rectangles in the plane with `m - 2` complement components: an open
/// box of four walls with `m - 4` separators inside.
pub fn gen_plane_longbox(m: usize) -> Result<Arrangement> {
    if m < 5 {
        return Err(Error::InvalidArgument("long box needs m >= 5".into()));
    }
    let n = (m - 4) as i64;
    let len = 2 * n + 3;
    let mut rects = vec![
        Rect::ints(0, 0, len, 1),
        Rect::ints(0, 2, len, 3),
        Rect::ints(0, 1, 1, 2),
        Rect::ints(len - 1, 1, len, 2),
    ];
    rects.extend((1..=n).map(|k| Rect::ints(2 * k, 1, 2 * k + 1, 2)));
    Ok(Arrangement::with_rects(Cake::Plane, rects))
}

/// Triangle cake with `m` convex toppings leaving `2m - 5` triangular blanks.
pub fn gen_convex_fixture(m: usize) -> Result<Arrangement> {
    if !(3..=5).contains(&m) {
        return Err(Error::InvalidArgument(format!("convex fixture exists for m in 3..=5, got {m}")));
    }
    let poly = |c: &[(i64, i64)]| ConvexPolygon::from_ints(c).expect("fixture polygons are convex");
    let cake = poly(&[(0, 0), (48, 0), (0, 48)]);
    let mut toppings = vec![
        poly(&[(12, 0), (48, 0), (36, 12), (12, 12)]),
        poly(&[(24, 12), (36, 12), (0, 48), (0, 36)]),
        poly(&[(0, 0), (12, 0), (12, 24), (0, 36)]),
    ];
    if m >= 4 {
        toppings.push(poly(&[(18, 12), (18, 18), (12, 18)]));
    }
    if m >= 5 {
        toppings.push(poly(&[(15, 12), (15, 15), (12, 15)]));
    }
    Ok(Arrangement::new(Cake::Convex(cake), Toppings::Convex(toppings)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CakeKind {
    Rectangle,
    /// Square cake with staircase notches carved at its corners, `T` reflex vertices in total.
    Rectilinear(usize),
    Plane,
    Convex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub m: usize,
    pub grid_extent: i64,
    pub cake_kind: CakeKind,
    pub iterations: usize,
}

impl FuzzConfig {
    pub fn new(seed: u64, m: usize, cake_kind: CakeKind) -> Self {
        FuzzConfig { seed, m, grid_extent: 12, cake_kind, iterations: 1 }
    }
}

/// Guillotine partition of `[0, w] x [0, h]` into `n` integer cells.
fn guillotine(rng: &mut XorShift64Star, w: i64, h: i64, n: usize) -> Vec<Cell> {
    let mut cells: Vec<Cell> = vec![(0, 0, w, h)];
    while cells.len() < n {
        let splittable: Vec<usize> =
            (0..cells.len()).filter(|&k| cells[k].2 - cells[k].0 >= 2 || cells[k].3 - cells[k].1 >= 2).collect();
        let k = splittable[rng.below(splittable.len() as u64) as usize];
        let (x0, y0, x1, y1) = cells[k];
        let vertical = if x1 - x0 < 2 {
            false
        } else if y1 - y0 < 2 {
            true
        } else {
            rng.chance(1, 2)
        };
        if vertical {
            let x = rng.range(x0 + 1, x1 - 1);
            cells[k] = (x0, y0, x, y1);
            cells.push((x, y0, x1, y1));
        } else {
            let y = rng.range(y0 + 1, y1 - 1);
            cells[k] = (x0, y0, x1, y);
            cells.push((x0, y, x1, y1));
        }
    }
    cells
}

/// Shrinks a cell by random margins; half the time a side is left flush.
fn shrink(rng: &mut XorShift64Star, (x0, y0, x1, y1): Cell) -> Rect {
    let mut side = |lo: i64, hi: i64| {
        let slack = hi - lo - 1;
        let a = if rng.chance(1, 2) { 0 } else { rng.range(0, slack) };
        let b = if rng.chance(1, 2) { 0 } else { rng.range(0, slack - a) };
        (lo + a, hi - b)
    };
    let (a0, a1) = side(x0, x1);
    let (b0, b1) = side(y0, y1);
    Rect::ints(a0, b0, a1, b1)
}

fn extent_for(cfg: &FuzzConfig) -> i64 {
    let fit = 2 * isqrt(cfg.m as u64) as i64 + 2;
    cfg.grid_extent.max(fit)
}

/// Square `[0, e]^2` with staircase notches at its corners, `steps` reflex
/// vertices in total, plus the removed notch rectangles.
fn notched_square(rng: &mut XorShift64Star, e: i64, steps: usize) -> (RectilinearPolygon, Vec<Rect>) {
    let half = e / 2;
    let mut per_corner = [0usize; 4];
    for _ in 0..steps {
        per_corner[rng.below(4) as usize] += 1;
    }
    // A notch with t steps at the lower-left corner removes [0, a_j] x [0, b_j]
    // for increasing a and decreasing b, all inside [0, half - 1].
    let mut removed = Vec::new();
    let mut chains: Vec<Vec<(i64, i64)>> = Vec::with_capacity(4);
    for &t in &per_corner {
        let mut pick = |t: usize| {
            let mut v: Vec<i64> = Vec::new();
            while v.len() < t {
                let c = rng.range(1, half - 1);
                if !v.contains(&c) {
                    v.push(c);
                }
            }
            v.sort_unstable();
            v
        };
        let a = pick(t);
        let mut b = pick(t);
        b.reverse();
        chains.push(a.into_iter().zip(b).collect());
    }
    // map a lower-left staircase point to corner c (0 = lower-left, counter-clockwise)
    let place = |c: usize, (u, v): (i64, i64)| match c {
        0 => (u, v),
        1 => (e - v, u),
        2 => (e - u, e - v),
        _ => (v, e - u),
    };
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for (c, chain) in chains.iter().enumerate() {
        if chain.is_empty() {
            pts.push(place(c, (0, 0)));
            continue;
        }
        // walk the notch from the incoming side to the outgoing side
        let (a, b): (Vec<i64>, Vec<i64>) = chain.iter().copied().unzip();
        let t = chain.len();
        pts.push(place(c, (0, b[0])));
        for j in 0..t {
            pts.push(place(c, (a[j], b[j])));
            let next_b = if j + 1 < t { b[j + 1] } else { 0 };
            pts.push(place(c, (a[j], next_b)));
        }
        for &(u, v) in chain {
            let (p, q) = (place(c, (0, 0)), place(c, (u, v)));
            removed.push(Rect::ints(p.0.min(q.0), p.1.min(q.1), p.0.max(q.0), p.1.max(q.1)));
        }
    }
    let mut vertices: Vec<Point> = pts.into_iter().map(|(x, y)| Point::from_ints(x, y)).collect();
    vertices.dedup();
    if crate::geom::shapes::twice_signed_area(&vertices) < Rational::zero() {
        vertices.reverse();
    }
    let poly = RectilinearPolygon::new(vertices).expect("notched square is a simple rectilinear polygon");
    (poly, removed)
}

fn random_rects(rng: &mut XorShift64Star, cfg: &FuzzConfig) -> (Cake, Vec<Rect>) {
    let e = extent_for(cfg);
    match cfg.cake_kind {
        CakeKind::Rectangle | CakeKind::Plane => {
            let cells = guillotine(rng, e, e, cfg.m);
            let rects = cells.into_iter().map(|c| shrink(rng, c)).collect();
            let cake = if cfg.cake_kind == CakeKind::Plane { Cake::Plane } else { Cake::Rect(Rect::ints(0, 0, e, e)) };
            (cake, rects)
        }
        CakeKind::Rectilinear(steps) => {
            let e = e.max(2 * steps as i64 + 4);
            let (poly, removed) = notched_square(rng, e, steps);
            loop {
                let cells = guillotine(rng, e, e, cfg.m + cfg.m / 2 + 2);
                let mut rects: Vec<Rect> = cells
                    .into_iter()
                    .map(|c| shrink(rng, c))
                    .filter(|r| removed.iter().all(|n| !n.overlaps(r)))
                    .collect();
                while rects.len() > cfg.m {
                    rects.remove(rng.below(rects.len() as u64) as usize);
                }
                if rects.len() == cfg.m {
                    return (Cake::Rectilinear(poly), rects);
                }
            }
        }
        CakeKind::Convex => unreachable!("convex arrangements are built separately"),
    }
}

/// Convex toppings: guillotine cells with random corners cut off, so that
/// neighbours still touch and the cuts leave small holes between them.
fn random_convex(rng: &mut XorShift64Star, cfg: &FuzzConfig) -> Vec<ConvexPolygon> {
    let e = extent_for(cfg) * 2;
    let cells = guillotine(rng, e, e, cfg.m);
    cells
        .into_iter()
        .map(|(x0, y0, x1, y1)| {
            let (w, h) = (x1 - x0, y1 - y0);
            let mut pts = Vec::new();
            let corners = [(x0, y0, 1, 1), (x1, y0, -1, 1), (x1, y1, -1, -1), (x0, y1, 1, -1)];
            for (cx, cy, sx, sy) in corners {
                if w >= 2 && h >= 2 && rng.chance(1, 2) {
                    let dx = rng.range(1, w / 2);
                    let dy = rng.range(1, h / 2);
                    pts.push(Point::from_ints(cx + sx * dx, cy));
                    pts.push(Point::from_ints(cx, cy + sy * dy));
                } else {
                    pts.push(Point::from_ints(cx, cy));
                }
            }
            convex_hull(&pts).expect("cells have positive area")
        })
        .collect()
}

/// Item `index` of the stream for `cfg`; independent of every other item.
pub fn gen_random_item(cfg: &FuzzConfig, index: u64) -> Arrangement {
    let mut rng = XorShift64Star::for_item(cfg.seed, index);
    match cfg.cake_kind {
        CakeKind::Convex => Arrangement::new(Cake::Plane, Toppings::Convex(random_convex(&mut rng, cfg))),
        _ => {
            let (cake, rects) = random_rects(&mut rng, cfg);
            Arrangement::with_rects(cake, rects)
        }
    }
}

/// `gen_grid(m)` with every topping pulled in from each side by 0 or 1/4 of
/// its extent, and a random expansion order. Expanding in that order mostly
/// gives arrangements with several windmill holes, which the guillotine
/// stream rarely does.
pub fn gen_shaken_grid(seed: u64, m: usize, index: u64) -> Result<(Arrangement, Vec<usize>)> {
    let mut rng = XorShift64Star::for_item(seed, index);
    let grid = gen_grid(m)?;
    let quarter = Rational::new(1, 4);
    let mut pull = |len: Rational| if rng.chance(1, 2) { &len * &quarter } else { Rational::zero() };
    let rects = grid
        .rects()?
        .iter()
        .map(|r| {
            let (w, h) = (r.x1() - r.x0(), r.y1() - r.y0());
            let (x0, y0) = (r.x0() + &pull(w.clone()), r.y0() + &pull(h.clone()));
            let (x1, y1) = (r.x1() - &pull(w), r.y1() - &pull(h));
            Ok(Rect::from_bounds(x0, y0, x1, y1)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..m).collect();
    for k in (1..m).rev() {
        order.swap(k, rng.below(k as u64 + 1) as usize);
    }
    Ok((grid.with_toppings(rects), order))
}

/// The first `cfg.iterations` items of the stream.
pub fn gen_random(cfg: &FuzzConfig) -> impl Iterator<Item = Arrangement> + '_ {
    (0..cfg.iterations as u64).map(move |k| gen_random_item(cfg, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::validate;

    #[test]
    fn grid_layout_counts() {
        for m in 1..=50 {
            let (cells, w, h) = grid_layout(m);
            assert_eq!(cells.len(), m);
            let area: i64 = cells.iter().map(|c| (c.2 - c.0) * (c.3 - c.1)).sum();
            assert_eq!(area, w * h, "m = {m}");
        }
    }

    #[test]
    fn shaken_grid_expands_to_holes() {
        use crate::expansion::{greedy_expand, TieBreak};
        use crate::holes::extract_holes;
        let mut holes = 0;
        for k in 0..40 {
            let (a, order) = gen_shaken_grid(5, 9, k).unwrap();
            assert!(validate(&a).is_empty());
            let mut sorted = order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..9).collect::<Vec<_>>());
            holes += extract_holes(&greedy_expand(&a, &order, TieBreak::Lexicographic).unwrap()).unwrap().len();
        }
        assert!(holes >= 20, "{holes}");
        assert_eq!(gen_shaken_grid(5, 9, 3).unwrap(), gen_shaken_grid(5, 9, 3).unwrap());
    }

    #[test]
    fn grid_is_valid() {
        for m in 1..=40 {
            let a = gen_grid(m).unwrap();
            assert_eq!(a.m(), m);
            assert!(validate(&a).is_empty(), "m = {m}: {:?}", validate(&a));
        }
    }

    #[test]
    fn grid_is_maximal_with_expected_holes() {
        use crate::bounds::doubleroot;
        use crate::expansion::is_maximal;
        use crate::holes::verify_structure;
        for m in 1..=60 {
            let a = gen_grid(m).unwrap();
            assert!(is_maximal(&a).unwrap().is_maximal(), "m = {m}");
            let r = verify_structure(&a).unwrap();
            assert!(r.passed(), "m = {m}: {:?}", r.violations);
            assert_eq!(r.inner_holes() as u64, m as u64 - doubleroot(m as u64).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn staircase_structure() {
        use crate::holes::verify_structure;
        for (m, t) in [(16, 4), (1, 1), (4, 2), (10, 6)] {
            let a = gen_staircase(m, t).unwrap();
            let r = verify_structure(&a).unwrap();
            assert!(r.passed(), "({m}, {t}): {:?}", r.violations);
            assert_eq!(r.boundary_holes(), 1);
            let b = r.holes.iter().find(|h| h.kind == crate::holes::HoleKind::Boundary).unwrap();
            assert_eq!((b.reflex_c_vertices, b.reflex_hole_vertices), (t, t - 1));
        }
    }

    #[test]
    fn staircase_reflex_count() {
        for (m, t) in [(16, 4), (1, 1), (4, 2), (10, 6)] {
            let a = gen_staircase(m, t).unwrap();
            assert_eq!(a.cake.reflex_count(), t);
            assert!(validate(&a).is_empty());
        }
    }

    #[test]
    fn longbox_shape() {
        let a = gen_plane_longbox(9).unwrap();
        assert_eq!(a.m(), 9);
        assert!(validate(&a).is_empty());
        assert!(gen_plane_longbox(4).is_err());
    }

    #[test]
    fn convex_fixture_valid() {
        for m in 3..=5 {
            let a = gen_convex_fixture(m).unwrap();
            assert!(validate(&a).is_empty(), "m = {m}: {:?}", validate(&a));
        }
        assert!(gen_convex_fixture(6).is_err());
    }

    #[test]
    fn random_items_are_valid_and_deterministic() {
        for kind in [CakeKind::Rectangle, CakeKind::Rectilinear(3), CakeKind::Plane, CakeKind::Convex] {
            for m in [1, 3, 6, 12] {
                let cfg = FuzzConfig { iterations: 20, ..FuzzConfig::new(42, m, kind) };
                for (k, a) in gen_random(&cfg).enumerate() {
                    assert_eq!(a.m(), m);
                    assert!(validate(&a).is_empty(), "{kind:?} m={m} item {k}: {:?}", validate(&a));
                    assert_eq!(a, gen_random_item(&cfg, k as u64));
                }
            }
        }
    }

    #[test]
    fn notched_cake_reflex_count() {
        let mut rng = XorShift64Star::new(5);
        for steps in 0..=6 {
            for _ in 0..10 {
                let (p, _) = notched_square(&mut rng, 16, steps);
                assert_eq!(p.reflex_count(), steps);
            }
        }
    }
}
