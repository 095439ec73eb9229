//! Blank counting per bound: builds the partition report for an arrangement.

use crate::arrangement::{Arrangement, BoundSummary, Cake, PartitionReport, Piece, PolygonRegion, Region, Toppings};
use crate::bounds::{check_bound, BoundName};
use crate::error::{Error, Result};
use crate::geom::grid::{Grid, Label, Outline};
use crate::geom::polygon::ConvexPolygon;
use crate::geom::shapes::Rect;
use crate::holes::{extract_holes, structure_of, Hole};
use crate::plane::{convex_blanks, convex_hole_count};
use crate::transforms::{absorb_holes, partition_cycles};

/// The bound that matches the cake and topping kinds.
pub fn default_bound(a: &Arrangement) -> BoundName {
    match (&a.cake, &a.toppings) {
        (Cake::Rect(_), _) => BoundName::Thm3,
        (Cake::Rectilinear(_), _) => BoundName::Thm8,
        (Cake::Plane, Toppings::Rects(_)) => BoundName::Thm3prime,
        (Cake::Plane, Toppings::Convex(_)) => BoundName::Thm2prime,
        (Cake::Convex(_), _) => BoundName::Thm2,
    }
}

/// Rectangles cutting one hole along horizontal chords.
pub fn partition_hole(hole: &Hole) -> Vec<Rect> {
    let mut cycles: Vec<&[crate::geom::shapes::Point]> = vec![hole.region.vertices()];
    cycles.extend(hole.pockets.iter().map(Vec::as_slice));
    partition_cycles(&cycles)
}

/// Every hole cut into rectangles, holes in extraction order.
pub fn partition_holes(a: &Arrangement) -> Result<Vec<Rect>> {
    Ok(extract_holes(a)?.iter().flat_map(partition_hole).collect())
}

fn rect_pieces(a: &Arrangement, rects: &[Rect]) -> Vec<Piece> {
    rects
        .iter()
        .enumerate()
        .map(|(k, r)| Piece { label: a.label(k).to_string(), region: Region::Rect(r.clone()) })
        .collect()
}

fn convex_pieces(a: &Arrangement, polys: &[ConvexPolygon]) -> Vec<Piece> {
    polys
        .iter()
        .enumerate()
        .map(|(k, p)| Piece { label: a.label(k).to_string(), region: Region::Convex(p.clone()) })
        .collect()
}

fn convex_toppings(a: &Arrangement) -> Result<&[ConvexPolygon]> {
    match &a.toppings {
        Toppings::Convex(v) => Ok(v),
        Toppings::Rects(_) => Err(Error::InvalidArgument("bound needs convex toppings".into())),
    }
}

fn wrong_cake(name: BoundName, a: &Arrangement) -> Error {
    let expected = match name {
        BoundName::Thm3 | BoundName::Lemma6 => "rectangle",
        BoundName::Thm8 | BoundName::Thm1 => "rectangle or rectilinear",
        BoundName::Thm3prime | BoundName::Thm2prime => "plane",
        BoundName::Thm2 => "convex",
    };
    Error::UnsupportedCake { expected, found: a.cake.kind_name() }
}

/// Bounded free regions of rectangles in the plane, and the component
/// count including the unbounded one.
pub(crate) fn plane_rect_holes(rects: &[Rect]) -> (Vec<Region>, usize) {
    let grid = Grid::build(Outline::Plane, rects, &[]);
    let groups = grid.groups(|l| l == Label::Free);
    let count = groups.len();
    let regions = groups
        .into_iter()
        .filter(|g| !g.contains(&(0, 0)))
        .map(|g| {
            let c = grid.component(g);
            match c.outer.as_rect().filter(|_| c.inner.is_empty()) {
                Some(r) => Region::Rect(r),
                None => Region::Polygon(PolygonRegion { outer: c.outer, holes: c.inner }),
            }
        })
        .collect();
    (regions, count)
}

/// Counts blanks (or holes, for the plane bounds) and checks them against
/// `bound`. No expansion happens here: pass a maximal arrangement to get
/// the setting the bound is stated for.
pub fn analyze(a: &Arrangement, bound: BoundName) -> Result<PartitionReport> {
    a.require_valid()?;
    let m = a.m();
    let t = a.cake.reflex_count();
    let report =
        |pieces: Vec<Piece>, blanks: Vec<Region>, holes: Option<usize>, structure| -> Result<PartitionReport> {
            let observed = holes.unwrap_or(blanks.len()) as i64;
            let v = check_bound(bound, m, t, observed)?;
            Ok(PartitionReport {
                cake: a.cake.clone(),
                pieces,
                b: blanks.len(),
                blanks,
                m,
                t,
                holes,
                bound: BoundSummary { name: bound, value: v.limit },
                satisfied: v.satisfied(),
                tight: v.tight,
                structure,
            })
        };
    match (bound, &a.cake) {
        (BoundName::Thm3, Cake::Rect(_)) | (BoundName::Thm8, Cake::Rect(_) | Cake::Rectilinear(_)) => {
            let rects = a.bounded_rects()?;
            let holes = extract_holes(a)?;
            let blanks = holes.iter().flat_map(partition_hole).map(Region::Rect).collect();
            let structure = structure_of(a, &holes);
            report(rect_pieces(a, rects), blanks, None, Some(structure))
        }
        (BoundName::Thm1, Cake::Rect(_) | Cake::Rectilinear(_)) => absorb_holes(a),
        (BoundName::Thm3prime, Cake::Plane) => {
            let rects = a.rects()?;
            let (blanks, count) = plane_rect_holes(rects);
            report(rect_pieces(a, rects), blanks, Some(count), None)
        }
        (BoundName::Thm2prime, Cake::Plane) => {
            let polys = convex_toppings(a)?;
            let c = convex_hole_count(polys)?;
            let blanks = c.bounded.iter().map(|h| h.region()).collect();
            report(convex_pieces(a, polys), blanks, Some(c.holes), None)
        }
        (BoundName::Thm2, Cake::Convex(cake)) => {
            let polys = convex_toppings(a)?;
            let blanks = convex_blanks(cake, polys).iter().map(|h| h.region()).collect();
            report(convex_pieces(a, polys), blanks, None, None)
        }
        (BoundName::Lemma6, _) => {
            Err(Error::InvalidArgument("lemma6 applies to tilings; contract and saturate instead".into()))
        }
        (name, _) => Err(wrong_cake(name, a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::doubleroot;
    use crate::generators::fixtures::pinwheel;
    use crate::generators::{gen_convex_fixture, gen_grid, gen_plane_longbox, gen_staircase};

    #[test]
    fn grid_is_tight() {
        for m in [1usize, 4, 10, 16, 17] {
            let r = analyze(&gen_grid(m).unwrap(), BoundName::Thm3).unwrap();
            assert_eq!(r.b as u64, m as u64 - doubleroot(m as u64).unwrap(), "m = {m}");
            assert!(r.satisfied && r.tight);
            assert!(r.structure.as_ref().unwrap().passed());
        }
    }

    #[test]
    fn staircase_is_tight() {
        let r = analyze(&gen_staircase(16, 4).unwrap(), BoundName::Thm8).unwrap();
        assert_eq!((r.b, r.t, r.bound.value), (13, 4, 13));
        assert!(r.tight);
        let r = analyze(&gen_staircase(4, 2).unwrap(), BoundName::Thm8).unwrap();
        assert_eq!(r.b, 3);
    }

    #[test]
    fn plane_and_convex() {
        let r = analyze(&gen_plane_longbox(9).unwrap(), BoundName::Thm3prime).unwrap();
        assert_eq!((r.holes, r.b, r.bound.value), (Some(7), 6, 7));
        assert!(r.tight);
        for m in 3..=5 {
            let a = gen_convex_fixture(m).unwrap();
            let r = analyze(&a, BoundName::Thm2).unwrap();
            assert_eq!(r.b, 2 * m - 5);
            assert!(r.tight);
            assert!(r.blanks.iter().all(|b| matches!(b, Region::Convex(_))));
        }
    }

    #[test]
    fn pieces_and_blanks_cover_the_cake() {
        let a = gen_staircase(10, 3).unwrap();
        let r = analyze(&a, BoundName::Thm8).unwrap();
        let total: crate::Rational =
            r.pieces.iter().map(|p| p.region.area()).chain(r.blanks.iter().map(Region::area)).sum();
        assert_eq!(Some(total), a.cake.area());
    }

    #[test]
    fn wrong_pairings_refused() {
        assert!(matches!(analyze(&pinwheel(), BoundName::Thm2), Err(Error::UnsupportedCake { .. })));
        assert!(analyze(&pinwheel(), BoundName::Lemma6).is_err());
        let r = analyze(&pinwheel(), BoundName::Thm1).unwrap();
        assert_eq!(r.b, 0);
        assert_eq!(default_bound(&pinwheel()), BoundName::Thm3);
    }
}
