use crate::arrangement::{Arrangement, BoundSummary, PartitionReport, Piece, PolygonRegion, Region};
use crate::bounds::BoundName;
use crate::error::{Error, Result};
use crate::geom::grid::{Grid, Label};

fn touching<'a>(grid: &'a Grid, cells: &'a [(usize, usize)]) -> impl Iterator<Item = usize> + 'a {
    cells.iter().flat_map(move |&(i, j)| {
        let (i, j) = (i as isize, j as isize);
        [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].into_iter().filter_map(move |(a, b)| match grid.label(a, b) {
            Label::Occupied(k) => Some(k),
            _ => None,
        })
    })
}

/// Gives every hole to the lowest-indexed topping sharing a boundary segment
/// with it, producing a partition with no blanks.
pub fn absorb_holes(a: &Arrangement) -> Result<PartitionReport> {
    let rects = a.bounded_rects()?;
    a.require_valid()?;
    let grid = Grid::build(a.cake.outline()?, rects, &[]);
    let comps = grid.free_components();
    let mut cells: Vec<Vec<(usize, usize)>> = (0..rects.len()).map(|k| grid.cells_with(Label::Occupied(k))).collect();
    let mut grew = vec![false; rects.len()];
    for (h, comp) in comps.iter().enumerate() {
        // read off the grid so that pocket rims count too
        let owner = touching(&grid, &comp.cells)
            .min()
            .ok_or_else(|| Error::InvalidArrangement(format!("hole {h} touches no topping")))?;
        cells[owner].extend(comp.cells.iter().copied());
        grew[owner] = true;
    }
    let pieces = cells
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let region = if grew[k] {
                let comp = grid.component(c);
                Region::Polygon(PolygonRegion { outer: comp.outer, holes: comp.inner })
            } else {
                Region::Rect(rects[k].clone())
            };
            Piece { label: a.label(k).to_string(), region }
        })
        .collect();
    Ok(PartitionReport {
        cake: a.cake.clone(),
        pieces,
        blanks: Vec::new(),
        m: a.m(),
        b: 0,
        t: a.cake.reflex_count(),
        holes: None,
        bound: BoundSummary { name: BoundName::Thm1, value: 0 },
        satisfied: true,
        tight: true,
        structure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Cake;
    use crate::generators::fixtures::pinwheel;
    use crate::generators::gen_grid;
    use crate::geom::rational::Rational;
    use crate::geom::shapes::Rect;

    fn check(a: &Arrangement, polygons: usize) {
        let r = absorb_holes(a).unwrap();
        assert_eq!((r.pieces.len(), r.b), (a.m(), 0));
        let total: Rational = r.pieces.iter().map(|p| p.region.area()).sum();
        assert_eq!(Some(total), a.cake.area());
        let grown = r.pieces.iter().filter(|p| matches!(p.region, Region::Polygon(_))).count();
        assert_eq!(grown, polygons);
        for (p, t) in r.pieces.iter().zip(a.rects().unwrap()) {
            if let Region::Polygon(poly) = &p.region {
                assert!(crate::geom::grid::polygon_contains_rect(&poly.outer, t));
            }
        }
    }

    #[test]
    fn pinwheel_hole_goes_to_first_topping() {
        let r = absorb_holes(&pinwheel()).unwrap();
        let Region::Polygon(p) = &r.pieces[0].region else { panic!("topping 0 absorbs the hole") };
        assert_eq!(p.outer.area(), Rational::from_int(3));
        check(&pinwheel(), 1);
    }

    #[test]
    fn hole_meeting_toppings_only_at_its_pocket() {
        let a = Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 5, 5)), vec![Rect::ints(2, 2, 3, 3)]);
        check(&a, 1);
        let r = absorb_holes(&a).unwrap();
        let Region::Polygon(p) = &r.pieces[0].region else { panic!() };
        assert_eq!(p.outer.as_rect(), Some(Rect::ints(0, 0, 5, 5)));
    }

    #[test]
    fn grid_pieces() {
        let a = gen_grid(16).unwrap();
        let r = absorb_holes(&a).unwrap();
        assert_eq!(r.pieces.len(), 16);
        let total: Rational = r.pieces.iter().map(|p| p.region.area()).sum();
        assert_eq!(Some(total), a.cake.area());
    }

    #[test]
    fn zero_holes_keeps_toppings() {
        let a = gen_grid(1).unwrap();
        check(&a, 0);
    }
}
