//! Complement components of toppings in the unbounded plane or in a
//! convex cake.

use serde::{Deserialize, Serialize};

use crate::arrangement::Region;
use crate::error::{Error, Result};
use crate::geom::grid::{Grid, Label, Outline};
use crate::geom::polygon::{boundaries_meet, convex_hull, ConvexPolygon};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};

fn require_m(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::BelowDomain { bound: "plane hole count", min: 3, m });
    }
    Ok(())
}

/// Connected components of the plane minus the rectangles, the unbounded
/// one included.
pub fn plane_hole_count(rects: &[Rect]) -> Result<usize> {
    require_m(rects.len())?;
    Ok(rect_components(rects))
}

/// Component count without the `m >= 3` domain check.
pub(crate) fn rect_components(rects: &[Rect]) -> usize {
    // the padding ring of the grid is free and connected, so every region
    // reaching the border lands in one group: the unbounded component
    Grid::build(Outline::Plane, rects, &[]).groups(|l| l == Label::Free).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactGraph {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

impl ContactGraph {
    /// Faces of a plane embedding, outer face included: `E - V + 1 + C`.
    pub fn faces(&self) -> usize {
        self.edges + 1 + self.components - self.vertices
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedHole {
    pub area: Rational,
    /// The hole itself when it is a convex polygon.
    pub convex: Option<ConvexPolygon>,
    /// Interior-disjoint convex parts covering the hole.
    pub parts: Vec<ConvexPolygon>,
}

impl BoundedHole {
    pub fn region(&self) -> Region {
        match &self.convex {
            Some(c) => Region::Convex(c.clone()),
            None => Region::Parts(self.parts.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexHoleCount {
    /// Complement components, the unbounded one included.
    pub holes: usize,
    pub bounded: Vec<BoundedHole>,
    pub graph: ContactGraph,
}

struct Trapezoid {
    xa: Rational,
    xb: Rational,
    /// Open vertical extent at `xa` and `xb`; `None` stands for infinity.
    at_a: (Option<Rational>, Option<Rational>),
    at_b: (Option<Rational>, Option<Rational>),
}

impl Trapezoid {
    fn bounded(&self) -> bool {
        self.at_a.0.is_some() && self.at_a.1.is_some()
    }

    fn area(&self) -> Rational {
        let h = |(lo, hi): &(Option<Rational>, Option<Rational>)| hi.as_ref().unwrap() - lo.as_ref().unwrap();
        &(&(&self.xb - &self.xa) * &(&h(&self.at_a) + &h(&self.at_b))) / &Rational::from_int(2)
    }

    fn corners(&self) -> Vec<Point> {
        let (a0, a1) = (self.at_a.0.clone().unwrap(), self.at_a.1.clone().unwrap());
        let (b0, b1) = (self.at_b.0.clone().unwrap(), self.at_b.1.clone().unwrap());
        vec![
            Point::new(self.xa.clone(), a0),
            Point::new(self.xb.clone(), b0),
            Point::new(self.xb.clone(), b1),
            Point::new(self.xa.clone(), a1),
        ]
    }
}

/// True if two open intervals (with infinite ends as `None`) share a
/// segment of positive length.
fn open_overlap(a: &(Option<Rational>, Option<Rational>), b: &(Option<Rational>, Option<Rational>)) -> bool {
    let lo = match (&a.0, &b.0) {
        (Some(x), Some(y)) => Some(Rational::max(x, y)),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    };
    let hi = match (&a.1, &b.1) {
        (Some(x), Some(y)) => Some(Rational::min(x, y)),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    };
    match (lo, hi) {
        (Some(l), Some(h)) => l < h,
        _ => true,
    }
}

fn nonempty(iv: &(Option<Rational>, Option<Rational>)) -> bool {
    match iv {
        (Some(l), Some(h)) => l < h,
        _ => true,
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

/// Slab decomposition of the free space: the complement of pairwise
/// interior-disjoint convex polygons, in the plane or inside `container`.
///
/// Slabs run between consecutive vertex x-coordinates. In a slab the
/// polygons crossing it are ordered by height; the gaps between them are
/// trapezoids. Trapezoids of neighbouring slabs connect when their open
/// extents on the shared vertical line overlap, so pinch points separate.
/// Returns the bounded components, ordered by their lowest corner.
fn free_components(polys: &[ConvexPolygon], container: Option<&ConvexPolygon>) -> Vec<BoundedHole> {
    let mut xs: Vec<Rational> =
        polys.iter().chain(container).flat_map(|p| p.vertices().iter().map(|v| v.x.clone())).collect();
    xs.sort();
    xs.dedup();
    let section = |p: &ConvexPolygon, x: &Rational| p.y_range_at(x).expect("polygon spans the slab");
    let mut traps: Vec<Trapezoid> = Vec::new();
    let mut slab_of: Vec<std::ops::Range<usize>> = Vec::new();
    for w in xs.windows(2) {
        let (xa, xb) = (&w[0], &w[1]);
        let xm = Rational::midpoint(xa, xb);
        let mut crossing: Vec<(&ConvexPolygon, Rational)> =
            polys.iter().filter(|p| p.min_x() <= xa && p.max_x() >= xb).map(|p| (p, section(p, &xm).0)).collect();
        crossing.sort_by(|a, b| a.1.cmp(&b.1));
        let floor = |x: &Rational| container.map(|c| section(c, x).0);
        let ceiling = |x: &Rational| container.map(|c| section(c, x).1);
        let start = traps.len();
        let mut below: Option<&ConvexPolygon> = None;
        for k in 0..=crossing.len() {
            let above = crossing.get(k).map(|c| c.0);
            let ends = |x: &Rational| {
                (
                    below.map_or_else(|| floor(x), |p| Some(section(p, x).1)),
                    above.map_or_else(|| ceiling(x), |p| Some(section(p, x).0)),
                )
            };
            if nonempty(&ends(&xm)) {
                traps.push(Trapezoid { xa: xa.clone(), xb: xb.clone(), at_a: ends(xa), at_b: ends(xb) });
            }
            below = above;
        }
        slab_of.push(start..traps.len());
    }
    let outside = traps.len();
    let mut dsu = Dsu((0..=outside).collect());
    let unbounded = container.is_none();
    for (s, range) in slab_of.iter().enumerate() {
        for i in range.clone() {
            if unbounded {
                let first = s == 0 && nonempty(&traps[i].at_a);
                let last = s + 1 == slab_of.len() && nonempty(&traps[i].at_b);
                if !traps[i].bounded() || first || last {
                    dsu.union(i, outside);
                }
            }
            if s + 1 < slab_of.len() {
                for j in slab_of[s + 1].clone() {
                    if open_overlap(&traps[i].at_b, &traps[j].at_a) {
                        dsu.union(i, j);
                    }
                }
            }
        }
    }
    let root_out = dsu.find(outside);
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..traps.len() {
        let r = dsu.find(i);
        if r != root_out {
            groups.entry(r).or_default().push(i);
        }
    }
    let mut bounded: Vec<(Point, BoundedHole)> = groups
        .into_values()
        .map(|members| {
            let area: Rational = members.iter().map(|&i| traps[i].area()).sum();
            let parts: Vec<ConvexPolygon> = members.iter().filter_map(|&i| convex_hull(&traps[i].corners())).collect();
            let pts: Vec<Point> = members.iter().flat_map(|&i| traps[i].corners()).collect();
            let convex = convex_hull(&pts).filter(|h| h.area() == area);
            let anchor = pts.iter().min().cloned().expect("trapezoids have corners");
            (anchor, BoundedHole { area, convex, parts })
        })
        .collect();
    bounded.sort_by(|a, b| a.0.cmp(&b.0));
    bounded.into_iter().map(|(_, h)| h).collect()
}

/// Complement components of disjoint convex polygons in the plane.
pub fn convex_hole_count(polys: &[ConvexPolygon]) -> Result<ConvexHoleCount> {
    require_m(polys.len())?;
    let bounded = free_components(polys, None);
    Ok(ConvexHoleCount { holes: bounded.len() + 1, bounded, graph: contact_graph(polys) })
}

/// Components of a convex cake minus the toppings.
pub fn convex_blanks(cake: &ConvexPolygon, polys: &[ConvexPolygon]) -> Vec<BoundedHole> {
    free_components(polys, Some(cake))
}

/// Contact graph: toppings are vertices, an edge joins two toppings whose
/// boundaries meet, even at a single point.
pub fn contact_graph(polys: &[ConvexPolygon]) -> ContactGraph {
    let n = polys.len();
    let mut dsu = Dsu((0..n).collect());
    let mut edges = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if boundaries_meet(&polys[i], &polys[j]) {
                edges += 1;
                dsu.union(i, j);
            }
        }
    }
    let components = (0..n).filter(|&i| dsu.find(i) == i).count();
    ContactGraph { vertices: n, edges, components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Toppings;
    use crate::generators::{gen_convex_fixture, gen_plane_longbox};

    fn convex_toppings(m: usize) -> Vec<ConvexPolygon> {
        match gen_convex_fixture(m).unwrap().toppings {
            Toppings::Convex(v) => v,
            _ => unreachable!(),
        }
    }

    #[test]
    fn longbox_counts() {
        for (m, want) in [(9, 7), (5, 3), (6, 4)] {
            let a = gen_plane_longbox(m).unwrap();
            assert_eq!(plane_hole_count(a.rects().unwrap()).unwrap(), want);
        }
    }

    #[test]
    fn simple_plane_cases() {
        let row = [Rect::ints(0, 0, 1, 1), Rect::ints(2, 0, 3, 1), Rect::ints(4, 0, 5, 1)];
        assert_eq!(plane_hole_count(&row).unwrap(), 1);
        let ring = [Rect::ints(0, 0, 2, 1), Rect::ints(2, 0, 3, 2), Rect::ints(1, 2, 3, 3), Rect::ints(0, 1, 1, 3)];
        assert_eq!(plane_hole_count(&ring).unwrap(), 2);
        assert!(plane_hole_count(&row[..2]).is_err());
    }

    #[test]
    fn convex_fixtures() {
        for (m, bounded) in [(3, 1), (4, 3), (5, 5)] {
            let r = convex_hole_count(&convex_toppings(m)).unwrap();
            assert_eq!(r.bounded.len(), bounded, "m = {m}");
            assert_eq!(r.holes, 2 * m - 4);
            assert!(r.bounded.iter().all(|h| h.convex.is_some()));
            assert!(r.holes <= r.graph.faces());
        }
    }

    #[test]
    fn convex_fixture_blanks_inside_cake() {
        for m in 3..=5 {
            let a = gen_convex_fixture(m).unwrap();
            let crate::arrangement::Cake::Convex(cake) = &a.cake else { unreachable!() };
            let blanks = convex_blanks(cake, &convex_toppings(m));
            assert_eq!(blanks.len(), 2 * m - 5, "m = {m}");
            assert!(blanks.iter().all(|b| b.convex.as_ref().is_some_and(|c| c.vertices().len() == 3)));
            let covered: Rational =
                convex_toppings(m).iter().map(|p| p.area()).chain(blanks.iter().map(|b| b.area.clone())).sum();
            assert_eq!(covered, cake.area());
        }
    }

    #[test]
    fn nonconvex_blank_has_parts() {
        let cake = ConvexPolygon::from_rect(&Rect::ints(0, 0, 3, 3));
        let l = ConvexPolygon::from_rect(&Rect::ints(0, 0, 2, 2));
        let blanks = convex_blanks(&cake, &[l]);
        assert_eq!(blanks.len(), 1);
        assert!(blanks[0].convex.is_none());
        assert_eq!(blanks[0].area, Rational::from_int(5));
        assert!(matches!(blanks[0].region(), Region::Parts(ref p) if p.len() == 2));
    }

    #[test]
    fn far_apart_triangles() {
        let t = |dx: i64| ConvexPolygon::from_ints(&[(dx, 0), (dx + 1, 0), (dx, 1)]).unwrap();
        let r = convex_hole_count(&[t(0), t(10), t(20)]).unwrap();
        assert_eq!(r.holes, 1);
        assert_eq!(r.graph, ContactGraph { vertices: 3, edges: 0, components: 3 });
    }

    #[test]
    fn rectangles_agree_with_grid_count() {
        let ring = [Rect::ints(0, 0, 2, 1), Rect::ints(2, 0, 3, 2), Rect::ints(1, 2, 3, 3), Rect::ints(0, 1, 1, 3)];
        let polys: Vec<ConvexPolygon> = ring.iter().map(ConvexPolygon::from_rect).collect();
        let r = convex_hole_count(&polys).unwrap();
        assert_eq!(r.holes, 2);
        assert_eq!(r.bounded[0].area, Rational::one());
        let longbox = gen_plane_longbox(8).unwrap();
        let polys: Vec<ConvexPolygon> = longbox.rects().unwrap().iter().map(ConvexPolygon::from_rect).collect();
        assert_eq!(convex_hole_count(&polys).unwrap().holes, 6);
    }

    #[test]
    fn corner_contact_separates() {
        // two L-ish enclosures meeting only at a corner point
        let sq = |x: i64, y: i64| ConvexPolygon::from_rect(&Rect::ints(x, y, x + 1, y + 1));
        // diamond of four squares touching pairwise at corners encloses a unit square hole
        let r = convex_hole_count(&[sq(1, 0), sq(2, 1), sq(1, 2), sq(0, 1)]).unwrap();
        assert_eq!(r.holes, 2);
        assert_eq!(r.graph.edges, 4);
    }
}
