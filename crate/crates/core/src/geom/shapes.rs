use std::fmt;

use super::rational::Rational;
use crate::error::GeomError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Closed axis-parallel rectangle with positive area.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    lo: Point,
    hi: Point,
}

impl Rect {
    pub fn new(lo: Point, hi: Point) -> Result<Self, GeomError> {
        if lo.x < hi.x && lo.y < hi.y {
            Ok(Rect { lo, hi })
        } else {
            Err(GeomError::DegenerateRect(format!("{lo:?} -> {hi:?}")))
        }
    }

    pub fn from_bounds(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, GeomError> {
        Rect::new(Point::new(x0, y0), Point::new(x1, y1))
    }

    /// Integer-coordinate constructor for fixtures; panics on degenerate input.
    pub fn ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        Rect::from_bounds(x0.into(), y0.into(), x1.into(), y1.into()).expect("degenerate rectangle")
    }

    pub fn lo(&self) -> &Point {
        &self.lo
    }

    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn x0(&self) -> &Rational {
        &self.lo.x
    }

    pub fn y0(&self) -> &Rational {
        &self.lo.y
    }

    pub fn x1(&self) -> &Rational {
        &self.hi.x
    }

    pub fn y1(&self) -> &Rational {
        &self.hi.y
    }

    pub fn width(&self) -> Rational {
        &self.hi.x - &self.lo.x
    }

    pub fn height(&self) -> Rational {
        &self.hi.y - &self.lo.y
    }

    pub fn area(&self) -> Rational {
        &self.width() * &self.height()
    }

    /// Corners in counter-clockwise order starting at the lower-left.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.lo.clone(),
            Point::new(self.hi.x.clone(), self.lo.y.clone()),
            self.hi.clone(),
            Point::new(self.lo.x.clone(), self.hi.y.clone()),
        ]
    }

    /// Bounds as `(x0, y0, x1, y1)`; the tie-break key for expansions.
    pub fn key(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.lo.x, &self.lo.y, &self.hi.x, &self.hi.y)
    }

    pub fn contains_rect(&self, inner: &Rect) -> bool {
        self.lo.x <= inner.lo.x && self.lo.y <= inner.lo.y && inner.hi.x <= self.hi.x && inner.hi.y <= self.hi.y
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    /// Open-interior intersection test; touching boundaries do not count.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.lo.x < other.hi.x && other.lo.x < self.hi.x && self.lo.y < other.hi.y && other.lo.y < self.hi.y
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Rect {
        Rect { lo: Point::new(&self.lo.x + dx, &self.lo.y + dy), hi: Point::new(&self.hi.x + dx, &self.hi.y + dy) }
    }

    /// Smallest rectangle containing both.
    pub fn hull(&self, other: &Rect) -> Rect {
        Rect {
            lo: Point::new(Rational::min(&self.lo.x, &other.lo.x), Rational::min(&self.lo.y, &other.lo.y)),
            hi: Point::new(Rational::max(&self.hi.x, &other.hi.x), Rational::max(&self.hi.y, &other.hi.y)),
        }
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]->[{},{}]", self.lo.x, self.lo.y, self.hi.x, self.hi.y)
    }
}

/// True iff the open interiors of `a` and `b` are disjoint.
pub fn interior_disjoint(a: &Rect, b: &Rect) -> bool {
    !a.overlaps(b)
}

/// Twice the signed area of a closed vertex cycle (positive when counter-clockwise).
pub fn twice_signed_area(vertices: &[Point]) -> Rational {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            &(&a.x * &b.y) - &(&b.x * &a.y)
        })
        .sum()
}

/// Sign of the cross product `(b - a) x (c - a)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> std::cmp::Ordering {
    let lhs = &(&b.x - &a.x) * &(&c.y - &a.y);
    let rhs = &(&b.y - &a.y) * &(&c.x - &a.x);
    lhs.cmp(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::q;
    use proptest::prelude::*;

    #[test]
    fn disjointness_examples() {
        assert!(interior_disjoint(&Rect::ints(0, 0, 1, 1), &Rect::ints(1, 0, 2, 1)));
        assert!(!interior_disjoint(&Rect::ints(0, 0, 2, 2), &Rect::ints(1, 1, 3, 3)));
        assert!(interior_disjoint(&Rect::ints(0, 0, 1, 1), &Rect::ints(1, 1, 2, 2)));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Rect::from_bounds(q(0), q(0), q(0), q(1)).is_err());
        assert!(Rect::from_bounds(q(0), q(2), q(1), q(1)).is_err());
    }

    fn arb_rect() -> impl Strategy<Value = Rect> {
        (-50i64..50, -50i64..50, 1i64..30, 1i64..30, 1i64..4).prop_map(|(x, y, w, h, d)| {
            let d = Rational::from_int(d);
            Rect::from_bounds(
                &Rational::from_int(x) / &d,
                &Rational::from_int(y) / &d,
                &Rational::from_int(x + w) / &d,
                &Rational::from_int(y + h) / &d,
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn disjoint_symmetric_and_translation_invariant(a in arb_rect(), b in arb_rect(), dx in -20i64..20, dy in -20i64..20, den in 1i64..7) {
            let dx = Rational::new(dx, den);
            let dy = Rational::new(dy, den);
            prop_assert_eq!(interior_disjoint(&a, &b), interior_disjoint(&b, &a));
            prop_assert_eq!(
                interior_disjoint(&a, &b),
                interior_disjoint(&a.translate(&dx, &dy), &b.translate(&dx, &dy))
            );
        }
    }
}
