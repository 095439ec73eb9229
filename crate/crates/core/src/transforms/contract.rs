use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Cake};
use crate::bounds::check_exact_cover;
use crate::error::{Error, Result};
use crate::expansion::{is_maximal, Maximality};
use crate::geom::rational::Rational;
use crate::geom::shapes::Rect;
use crate::holes::{extract_holes, Hole};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

/// Coordinates driving one contraction. The hole is `[x1,x2]×[y1,y2]`;
/// `y0` is the bottom of the topping below it and `x0` the left of the
/// topping to its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionFrame {
    pub x0: Rational,
    pub x1: Rational,
    pub x2: Rational,
    pub y0: Rational,
    pub y1: Rational,
    pub y2: Rational,
    pub orientation: Orientation,
}

/// Indices of the toppings on the four sides of a hole.
#[derive(Clone, Copy, Debug)]
struct Sides {
    below: usize,
    above: usize,
    left: usize,
    right: usize,
}

fn find_sides(rects: &[Rect], h: &Rect) -> Option<Sides> {
    let find = |pred: &dyn Fn(&Rect) -> bool| rects.iter().position(pred);
    Some(Sides {
        below: find(&|r| r.y1() == h.y0() && r.x0() <= h.x0() && r.x1() >= h.x1())?,
        above: find(&|r| r.y0() == h.y1() && r.x0() <= h.x0() && r.x1() >= h.x1())?,
        left: find(&|r| r.x1() == h.x0() && r.y0() <= h.y0() && r.y1() >= h.y1())?,
        right: find(&|r| r.x0() == h.x1() && r.y0() <= h.y0() && r.y1() >= h.y1())?,
    })
}

fn windmill(rects: &[Rect], h: &Rect) -> Result<(Sides, Orientation)> {
    let s = find_sides(rects, h)
        .ok_or_else(|| Error::NoContractibleHole(format!("hole {h:?} is not enclosed by four toppings")))?;
    let (b, t, l, r) = (&rects[s.below], &rects[s.above], &rects[s.left], &rects[s.right]);
    let cw = b.x1() == h.x1() && t.x0() == h.x0() && l.y0() == h.y0() && r.y1() == h.y1();
    let ccw = b.x0() == h.x0() && t.x1() == h.x1() && l.y1() == h.y1() && r.y0() == h.y0();
    match (cw, ccw) {
        (true, _) => Ok((s, Orientation::Clockwise)),
        (false, true) => Ok((s, Orientation::Counterclockwise)),
        _ => Err(Error::NoContractibleHole(format!("windmill orientation undetectable around {h:?}"))),
    }
}

fn mirror(r: &Rect) -> Rect {
    Rect::from_bounds(-r.x1(), r.y0().clone(), -r.x0(), r.y1().clone()).expect("mirror keeps extents")
}

fn rect_hole(hole: &Hole) -> Result<Rect> {
    if hole.kind != crate::holes::HoleKind::Inner {
        return Err(Error::NoContractibleHole("hole touches the cake boundary".into()));
    }
    hole.as_rect().ok_or_else(|| Error::NoContractibleHole("hole is not a rectangle".into()))
}

/// The frame of a rectangular inner hole, in original coordinates.
pub fn contraction_frame(a: &Arrangement, hole: &Hole) -> Result<ContractionFrame> {
    let rects = a.rects()?;
    let h = rect_hole(hole)?;
    let (s, orientation) = windmill(rects, &h)?;
    let x0 = match orientation {
        Orientation::Clockwise => rects[s.left].x0().clone(),
        Orientation::Counterclockwise => rects[s.right].x1().clone(),
    };
    Ok(ContractionFrame {
        x0,
        x1: h.x0().clone(),
        x2: h.x1().clone(),
        y0: rects[s.below].y0().clone(),
        y1: h.y0().clone(),
        y2: h.y1().clone(),
        orientation,
    })
}

/// Affine squeeze of `[lo, hi]` onto `[lo, to]`, identity outside.
fn squeeze(v: &Rational, lo: &Rational, to: &Rational, hi: &Rational) -> Rational {
    if v < lo || v > hi {
        return v.clone();
    }
    lo + &(&(&(to - lo) / &(hi - lo)) * &(v - lo))
}

/// The clockwise contraction on already-normalised rectangles.
fn contract_clockwise(rects: &mut [Rect], h: &Rect, s: Sides) {
    let (x1, x2, y1, y2) = (h.x0().clone(), h.x1().clone(), h.y0().clone(), h.y1().clone());
    let y0 = rects[s.below].y0().clone();
    let x0 = rects[s.left].x0().clone();
    for (i, r) in rects.iter_mut().enumerate() {
        if i != s.above && r.x0() >= &x2 {
            let (b, t) = (squeeze(r.y0(), &y0, &y1, &y2), squeeze(r.y1(), &y0, &y1, &y2));
            *r = Rect::from_bounds(r.x0().clone(), b, r.x1().clone(), t).expect("monotone map keeps extents");
        }
    }
    let t = &rects[s.above];
    rects[s.above] = Rect::from_bounds(t.x0().clone(), y1.clone(), t.x1().clone(), t.y1().clone()).unwrap();
    for r in rects.iter_mut() {
        if r.y1() <= &y1 {
            let (l, rt) = (squeeze(r.x0(), &x0, &x1, &x2), squeeze(r.x1(), &x0, &x1, &x2));
            *r = Rect::from_bounds(l, r.y0().clone(), rt, r.y1().clone()).expect("monotone map keeps extents");
        }
    }
}

/// Contracts one rectangular inner hole to a 4-vertex; the counter-clockwise
/// case runs the clockwise map on the x-mirrored picture.
pub fn contract_hole(a: &Arrangement, hole: &Hole) -> Result<Arrangement> {
    if !matches!(a.cake, Cake::Rect(_)) {
        return Err(Error::UnsupportedCake { expected: "rectangle", found: a.cake.kind_name() });
    }
    let rects = a.rects()?;
    let h = rect_hole(hole)?;
    let (_, orientation) = windmill(rects, &h)?;
    let out = match orientation {
        Orientation::Clockwise => {
            let mut v = rects.to_vec();
            let (s, _) = windmill(&v, &h)?;
            contract_clockwise(&mut v, &h, s);
            v
        }
        Orientation::Counterclockwise => {
            let mut v: Vec<Rect> = rects.iter().map(mirror).collect();
            let mh = mirror(&h);
            let (s, o) = windmill(&v, &mh)?;
            debug_assert_eq!(o, Orientation::Clockwise);
            contract_clockwise(&mut v, &mh, s);
            v.iter().map(mirror).collect()
        }
    };
    let result = a.with_toppings(out);
    result.require_valid()?;
    Ok(result)
}

/// Contracts holes one at a time, smallest lower-left corner first, until
/// the toppings tile the cake. Returns the tiling and the number of holes
/// removed.
pub fn contract_all(a: &Arrangement) -> Result<(Arrangement, usize)> {
    let cake = match &a.cake {
        Cake::Rect(c) => c.clone(),
        other => return Err(Error::UnsupportedCake { expected: "rectangle", found: other.kind_name() }),
    };
    if let Maximality::Expandable { index, direction, .. } = is_maximal(a)? {
        return Err(Error::NotMaximal { index, direction: direction.to_string() });
    }
    let mut cur = a.clone();
    let mut holes = extract_holes(&cur)?;
    let mut contracted = 0;
    while !holes.is_empty() {
        let pick = holes.iter().min_by_key(|h| h.region.bbox().lo().clone()).expect("non-empty");
        let next = contract_hole(&cur, pick)?;
        let after = extract_holes(&next)?;
        if after.len() + 1 != holes.len() {
            return Err(Error::InvalidArrangement(format!(
                "contraction changed the hole count from {} to {}",
                holes.len(),
                after.len()
            )));
        }
        cur = next;
        holes = after;
        contracted += 1;
    }
    check_exact_cover(&cake, cur.rects()?)?;
    Ok((cur, contracted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::four_vertex_census;
    use crate::generators::fixtures::pinwheel;
    use crate::generators::gen_grid;

    fn mirrored(a: &Arrangement) -> Arrangement {
        let Cake::Rect(c) = &a.cake else { unreachable!() };
        let shift = c.x1() + c.x0();
        let flip =
            |r: &Rect| Rect::from_bounds(&shift - r.x1(), r.y0().clone(), &shift - r.x0(), r.y1().clone()).unwrap();
        Arrangement::with_rects(a.cake.clone(), a.rects().unwrap().iter().map(flip).collect())
    }

    #[test]
    fn pinwheel_contracts_to_four_vertex() {
        let a = pinwheel();
        let holes = extract_holes(&a).unwrap();
        let f = contraction_frame(&a, &holes[0]).unwrap();
        assert_eq!(f.orientation, Orientation::Clockwise);
        assert_eq!((f.x0.clone(), f.y0.clone()), (Rational::zero(), Rational::zero()));
        let c = contract_hole(&a, &holes[0]).unwrap();
        assert_eq!(
            c.rects().unwrap(),
            &[Rect::ints(0, 0, 1, 1), Rect::ints(1, 0, 3, 1), Rect::ints(1, 1, 3, 3), Rect::ints(0, 1, 1, 3)]
        );
        let census = four_vertex_census(&Rect::ints(0, 0, 3, 3), c.rects().unwrap()).unwrap();
        assert_eq!(census.four_vertices, 1);
    }

    #[test]
    fn mirrored_pinwheel_is_counterclockwise() {
        let a = mirrored(&pinwheel());
        let holes = extract_holes(&a).unwrap();
        assert_eq!(contraction_frame(&a, &holes[0]).unwrap().orientation, Orientation::Counterclockwise);
        let (c, n) = contract_all(&a).unwrap();
        assert_eq!(n, 1);
        let census = four_vertex_census(&Rect::ints(0, 0, 3, 3), c.rects().unwrap()).unwrap();
        assert_eq!(census.four_vertices, 1);
    }

    #[test]
    fn grid16_contracts_all_nine() {
        let a = gen_grid(16).unwrap();
        let (c, n) = contract_all(&a).unwrap();
        assert_eq!(n, 9);
        let Cake::Rect(cake) = &c.cake else { unreachable!() };
        let census = four_vertex_census(cake, c.rects().unwrap()).unwrap();
        assert_eq!(census.four_vertices, 9);
    }

    #[test]
    fn grid_family_contracts() {
        for m in 2..=30 {
            let a = gen_grid(m).unwrap();
            let holes = extract_holes(&a).unwrap().len();
            let (c, n) = contract_all(&a).unwrap();
            assert_eq!(n, holes, "m = {m}");
            let Cake::Rect(cake) = &c.cake else { unreachable!() };
            assert!(four_vertex_census(cake, c.rects().unwrap()).unwrap().four_vertices >= n);
        }
    }

    #[test]
    fn perfect_partition_unchanged() {
        let a = Arrangement::with_rects(
            Cake::Rect(Rect::ints(0, 0, 2, 1)),
            vec![Rect::ints(0, 0, 1, 1), Rect::ints(1, 0, 2, 1)],
        );
        let (c, n) = contract_all(&a).unwrap();
        assert_eq!((c, n), (a, 0));
    }

    #[test]
    fn no_hole_is_an_error() {
        let a = Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 1, 1)), vec![Rect::ints(0, 0, 1, 1)]);
        let fake = extract_holes(&pinwheel()).unwrap().remove(0);
        assert!(matches!(contract_hole(&a, &fake), Err(Error::NoContractibleHole(_))));
    }
}
