use std::cmp::Ordering;

use super::rational::Rational;
use super::shapes::{orient, twice_signed_area, Point, Rect};
use crate::error::GeomError;

/// Simple, counter-clockwise, axis-parallel polygon.
///
/// Polygons produced by boundary tracing may be *weakly* simple (the cycle
/// may pass through a pinch point twice); [`RectilinearPolygon::new`] only
/// accepts strictly simple input.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RectilinearPolygon {
    vertices: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Left,
    Straight,
    Right,
}

pub fn turn(a: &Point, b: &Point, c: &Point) -> Turn {
    match orient(a, b, c) {
        Ordering::Greater => Turn::Left,
        Ordering::Equal => Turn::Straight,
        Ordering::Less => Turn::Right,
    }
}

fn axis_segments_intersect(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> bool {
    let (ax0, ax1) = (Rational::min(&a0.x, &a1.x), Rational::max(&a0.x, &a1.x));
    let (ay0, ay1) = (Rational::min(&a0.y, &a1.y), Rational::max(&a0.y, &a1.y));
    let (bx0, bx1) = (Rational::min(&b0.x, &b1.x), Rational::max(&b0.x, &b1.x));
    let (by0, by1) = (Rational::min(&b0.y, &b1.y), Rational::max(&b0.y, &b1.y));
    ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
}

impl RectilinearPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let poly = RectilinearPolygon::new_weakly_simple(vertices)?;
        let (vertices, n) = (&poly.vertices, poly.vertices.len());
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a0, a1) = (&vertices[i], &vertices[(i + 1) % n]);
                let (b0, b1) = (&vertices[j], &vertices[(j + 1) % n]);
                if axis_segments_intersect(a0, a1, b0, b1) {
                    return Err(GeomError::InvalidRectilinear(format!("edges {i} and {j} intersect")));
                }
            }
        }
        Ok(poly)
    }

    /// Like [`RectilinearPolygon::new`] but allows the boundary to touch
    /// itself at isolated points, as traced hole and piece outlines may.
    pub fn new_weakly_simple(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        let bad = |msg: String| Err(GeomError::InvalidRectilinear(msg));
        if n < 4 || !n.is_multiple_of(2) {
            return bad(format!("needs an even number >= 4 of vertices, got {n}"));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            let horizontal = a.y == b.y && a.x != b.x;
            let vertical = a.x == b.x && a.y != b.y;
            if !horizontal && !vertical {
                return bad(format!("edge {a:?} -> {b:?} is not axis-parallel or has zero length"));
            }
            if turn(a, b, c) == Turn::Straight {
                return bad(format!("collinear consecutive edges at {b:?}"));
            }
        }
        if twice_signed_area(&vertices).signum() != Ordering::Greater {
            return bad("vertices are not counter-clockwise".into());
        }
        Ok(RectilinearPolygon { vertices })
    }

    /// Builds from a traced boundary; callers guarantee axis-parallel,
    /// counter-clockwise, no collinear consecutive vertices.
    pub(crate) fn from_trace(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 4);
        RectilinearPolygon { vertices }
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        RectilinearPolygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn from_rect(r: &Rect) -> Self {
        RectilinearPolygon { vertices: r.corners().to_vec() }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    fn turn_at(&self, i: usize) -> Turn {
        let n = self.vertices.len();
        turn(&self.vertices[(i + n - 1) % n], &self.vertices[i], &self.vertices[(i + 1) % n])
    }

    /// Vertices with a 270° interior angle, in boundary order.
    pub fn reflex_vertices(&self) -> Vec<Point> {
        (0..self.vertices.len()).filter(|&i| self.turn_at(i) == Turn::Right).map(|i| self.vertices[i].clone()).collect()
    }

    pub fn reflex_count(&self) -> usize {
        (0..self.vertices.len()).filter(|&i| self.turn_at(i) == Turn::Right).count()
    }

    pub fn convex_count(&self) -> usize {
        (0..self.vertices.len()).filter(|&i| self.turn_at(i) == Turn::Left).count()
    }

    pub fn area(&self) -> Rational {
        &twice_signed_area(&self.vertices) / &Rational::from_int(2)
    }

    pub fn bbox(&self) -> Rect {
        let mut x0 = self.vertices[0].x.clone();
        let mut x1 = x0.clone();
        let mut y0 = self.vertices[0].y.clone();
        let mut y1 = y0.clone();
        for v in &self.vertices {
            if v.x < x0 {
                x0 = v.x.clone();
            }
            if v.x > x1 {
                x1 = v.x.clone();
            }
            if v.y < y0 {
                y0 = v.y.clone();
            }
            if v.y > y1 {
                y1 = v.y.clone();
            }
        }
        Rect::from_bounds(x0, y0, x1, y1).expect("polygon has positive area")
    }

    /// Returns the rectangle if the polygon is one.
    pub fn as_rect(&self) -> Option<Rect> {
        if self.vertices.len() == 4 {
            Some(self.bbox())
        } else {
            None
        }
    }

    /// Strict point-in-polygon test for points not on any edge.
    /// Counts crossings of vertical edges to the right of `p`.
    pub fn contains_off_edge(&self, p: &Point) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if a.x == b.x && a.x > p.x {
                let (lo, hi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                if *lo <= p.y && p.y < *hi {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn is_vertex(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v == p)
    }
}

/// Strictly convex polygon, counter-clockwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::InvalidConvex(format!("needs >= 3 vertices, got {n}")));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            for (k, c) in vertices.iter().enumerate() {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                if orient(a, b, c) != Ordering::Greater {
                    return Err(GeomError::InvalidConvex(format!(
                        "vertex {c:?} is not strictly left of edge {a:?} -> {b:?}"
                    )));
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        ConvexPolygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn from_rect(r: &Rect) -> Self {
        ConvexPolygon { vertices: r.corners().to_vec() }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Rational {
        &twice_signed_area(&self.vertices) / &Rational::from_int(2)
    }

    pub fn min_x(&self) -> &Rational {
        self.vertices.iter().map(|v| &v.x).min().unwrap()
    }

    pub fn max_x(&self) -> &Rational {
        self.vertices.iter().map(|v| &v.x).max().unwrap()
    }

    /// Closed containment of a point.
    pub fn contains_point(&self, p: &Point) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) != Ordering::Less)
    }

    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    /// Lower and upper boundary `y` at abscissa `x`, if `x` lies in the
    /// polygon's closed x-range.
    pub fn y_range_at(&self, x: &Rational) -> Option<(Rational, Rational)> {
        if x < self.min_x() || x > self.max_x() {
            return None;
        }
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |y: Rational| {
            if lo.as_ref().is_none_or(|l| y < *l) {
                lo = Some(y.clone());
            }
            if hi.as_ref().is_none_or(|h| y > *h) {
                hi = Some(y);
            }
        };
        for (a, b) in self.edges() {
            if a.x == b.x {
                if a.x == *x {
                    push(a.y.clone());
                    push(b.y.clone());
                }
                continue;
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            if l.x <= *x && *x <= r.x {
                let t = &(x - &l.x) / &(&r.x - &l.x);
                push(&l.y + &(&t * &(&r.y - &l.y)));
            }
        }
        Some((lo?, hi?))
    }
}

/// Interiors of two convex polygons are disjoint iff some edge line of one
/// of them weakly separates the other.
pub fn convex_interior_disjoint(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    let separates = |p: &ConvexPolygon, o: &ConvexPolygon| {
        p.edges().any(|(s, t)| o.vertices.iter().all(|v| orient(s, t, v) != Ordering::Greater))
    };
    separates(a, b) || separates(b, a)
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    Rational::min(&a.x, &b.x) <= p.x
        && p.x <= Rational::max(&a.x, &b.x)
        && Rational::min(&a.y, &b.y) <= p.y
        && p.y <= Rational::max(&a.y, &b.y)
}

/// Closed-segment intersection, exact.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(a, b, c))
        || (o2 == Ordering::Equal && on_segment(a, b, d))
        || (o3 == Ordering::Equal && on_segment(c, d, a))
        || (o4 == Ordering::Equal && on_segment(c, d, b))
}

/// True iff the polygon boundaries share at least one point.
pub fn boundaries_meet(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    a.edges().any(|(p, q)| b.edges().any(|(r, s)| segments_intersect(p, q, r, s)))
}

/// Convex hull (monotone chain); `None` when the points are collinear.
pub fn convex_hull(points: &[Point]) -> Option<ConvexPolygon> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return None;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return None;
    }
    ConvexPolygon::new(lower).ok()
}
