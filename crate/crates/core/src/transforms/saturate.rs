use serde::{Deserialize, Serialize};

use crate::bounds::{check_exact_cover, corner_incidence, four_vertex_census};
use crate::error::{Error, Result};
use crate::geom::shapes::{Point, Rect};

/// Where a cut ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Landing {
    /// On the cake boundary.
    Boundary,
    /// Inside another rectangle's side; the cut continues from there.
    Side,
    /// On an existing 3-vertex, which becomes a 4-vertex.
    Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
    pub landing: Landing,
}

/// Outcome of saturating a tiling: a `k1` columns by `k2` rows grid reached
/// after `t` splits, so the tiling had `k1 * k2 - t` rectangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub k1: u64,
    pub k2: u64,
    pub t: u64,
    pub added_segments: Vec<Segment>,
}

/// The rectangle having `v` inside one of its sides, and the point where
/// the line through `v` leaves it on the far side.
fn through(rects: &[Rect], v: &Point) -> Option<(usize, Point)> {
    rects.iter().enumerate().find_map(|(i, r)| {
        let inside_x = r.x0() < &v.x && &v.x < r.x1();
        let inside_y = r.y0() < &v.y && &v.y < r.y1();
        let exit = if inside_y && &v.x == r.x0() {
            Point::new(r.x1().clone(), v.y.clone())
        } else if inside_y && &v.x == r.x1() {
            Point::new(r.x0().clone(), v.y.clone())
        } else if inside_x && &v.y == r.y0() {
            Point::new(v.x.clone(), r.y1().clone())
        } else if inside_x && &v.y == r.y1() {
            Point::new(v.x.clone(), r.y0().clone())
        } else {
            return None;
        };
        Some((i, exit))
    })
}

fn split(r: &Rect, from: &Point, to: &Point) -> (Rect, Rect) {
    if from.y == to.y {
        (
            Rect::from_bounds(r.x0().clone(), r.y0().clone(), r.x1().clone(), from.y.clone()).unwrap(),
            Rect::from_bounds(r.x0().clone(), from.y.clone(), r.x1().clone(), r.y1().clone()).unwrap(),
        )
    } else {
        (
            Rect::from_bounds(r.x0().clone(), r.y0().clone(), from.x.clone(), r.y1().clone()).unwrap(),
            Rect::from_bounds(from.x.clone(), r.y0().clone(), r.x1().clone(), r.y1().clone()).unwrap(),
        )
    }
}

/// Removes 3-vertices by cutting the rectangle whose side passes through
/// them, continuing the cut while it lands inside another side, until the
/// tiling is the full grid of its lines.
///
/// Vertices are handled smallest point first. Every cut is checked to add
/// at least as many 4-vertices as rectangles.
pub fn saturate_to_grid(cake: &Rect, rects: &[Rect]) -> Result<GridSummary> {
    check_exact_cover(cake, rects)?;
    let mut cur = rects.to_vec();
    let mut added = Vec::new();
    let mut fours = four_vertex_census(cake, &cur)?.four_vertices;
    loop {
        let start = corner_incidence(cake, &cur).into_iter().filter(|(_, n)| *n == 2).map(|(p, _)| p).min();
        let Some(mut v) = start else { break };
        while let Some((i, exit)) = through(&cur, &v) {
            let (lo, hi) = split(&cur[i], &v, &exit);
            cur[i] = lo;
            cur.push(hi);
            let on_boundary =
                exit.x == *cake.x0() || exit.x == *cake.x1() || exit.y == *cake.y0() || exit.y == *cake.y1();
            let landing = if on_boundary {
                Landing::Boundary
            } else if through(&cur, &exit).is_some() {
                Landing::Side
            } else {
                Landing::Vertex
            };
            added.push(Segment { from: v.clone(), to: exit.clone(), landing });
            let now = four_vertex_census(cake, &cur)?.four_vertices;
            if now < fours + 1 {
                return Err(Error::InvalidArrangement(format!("cut at {v:?} added fewer 4-vertices than rectangles")));
            }
            fours = now;
            v = exit;
        }
    }
    let mut xs: Vec<_> = cur.iter().flat_map(|r| [r.x0().clone(), r.x1().clone()]).collect();
    let mut ys: Vec<_> = cur.iter().flat_map(|r| [r.y0().clone(), r.y1().clone()]).collect();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let (k1, k2) = (xs.len() as u64 - 1, ys.len() as u64 - 1);
    let t = added.len() as u64;
    if cur.len() as u64 != k1 * k2 || fours as u64 != (k1 - 1) * (k2 - 1) {
        return Err(Error::InvalidArrangement("saturation did not reach a full grid".into()));
    }
    Ok(GridSummary { k1, k2, t, added_segments: added })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::lemma_k1k2_holds;

    #[test]
    fn trivial_grids() {
        let g = saturate_to_grid(&Rect::ints(0, 0, 1, 1), &[Rect::ints(0, 0, 1, 1)]).unwrap();
        assert_eq!((g.k1, g.k2, g.t), (1, 1, 0));
        let quad = [Rect::ints(0, 0, 1, 1), Rect::ints(1, 0, 2, 1), Rect::ints(0, 1, 1, 2), Rect::ints(1, 1, 2, 2)];
        let g = saturate_to_grid(&Rect::ints(0, 0, 2, 2), &quad).unwrap();
        assert_eq!((g.k1, g.k2, g.t), (2, 2, 0));
    }

    #[test]
    fn single_t_junction() {
        // left half whole, right half split: one 3-vertex at (1, 1)
        let rs = [Rect::ints(0, 0, 1, 2), Rect::ints(1, 0, 2, 1), Rect::ints(1, 1, 2, 2)];
        let g = saturate_to_grid(&Rect::ints(0, 0, 2, 2), &rs).unwrap();
        assert_eq!((g.k1, g.k2, g.t), (2, 2, 1));
        assert_eq!(
            g.added_segments[0],
            Segment { from: Point::from_ints(1, 1), to: Point::from_ints(0, 1), landing: Landing::Boundary }
        );
    }

    #[test]
    fn rejects_gaps() {
        assert!(saturate_to_grid(&Rect::ints(0, 0, 2, 1), &[Rect::ints(0, 0, 1, 1)]).is_err());
    }

    #[test]
    fn census_identity_holds() {
        // a brick wall: rows offset by half a brick
        let rs = [
            Rect::ints(0, 0, 2, 1),
            Rect::ints(2, 0, 4, 1),
            Rect::ints(0, 1, 1, 2),
            Rect::ints(1, 1, 3, 2),
            Rect::ints(3, 1, 4, 2),
        ];
        let cake = Rect::ints(0, 0, 4, 2);
        let before = four_vertex_census(&cake, &rs).unwrap().four_vertices as i128;
        let g = saturate_to_grid(&cake, &rs).unwrap();
        assert_eq!(rs.len() as u64, g.k1 * g.k2 - g.t);
        assert!(before <= ((g.k1 - 1) * (g.k2 - 1)) as i128 - g.t as i128);
        assert!(lemma_k1k2_holds(g.k1, g.k2, g.t).unwrap());
    }
}
