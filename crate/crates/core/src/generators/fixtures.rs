//! Small hand-made arrangements used by tests, docs and the CLI.

use crate::arrangement::{Arrangement, Cake};
use crate::geom::shapes::Rect;

/// Four toppings around a unit hole in the 3x3 cake.
pub fn pinwheel() -> Arrangement {
    Arrangement::with_rects(
        Cake::Rect(Rect::ints(0, 0, 3, 3)),
        vec![Rect::ints(0, 0, 2, 1), Rect::ints(2, 0, 3, 2), Rect::ints(1, 2, 3, 3), Rect::ints(0, 1, 1, 3)],
    )
}

/// A hole whose upper edge is not blocked: `Z2` can still grow upward.
pub fn non_maximal() -> Arrangement {
    Arrangement::with_rects(
        Cake::Rect(Rect::ints(0, 0, 6, 4)),
        vec![Rect::ints(0, 0, 3, 2), Rect::ints(3, 0, 6, 1), Rect::ints(0, 2, 2, 4)],
    )
}

/// Greedy order for [`greedy_tie`]: `Z4` grows second.
pub const GREEDY_TIE_ORDER: [usize; 4] = [0, 3, 1, 2];

/// Four unexpanded toppings where `Z4`, when its turn comes, can grow left
/// or down by the same area. Growing left ends with no blank, growing down
/// with one.
pub fn greedy_tie() -> Arrangement {
    Arrangement::with_rects(
        Cake::Rect(Rect::ints(0, 0, 4, 4)),
        vec![Rect::ints(0, 0, 1, 1), Rect::ints(3, 0, 4, 2), Rect::ints(0, 1, 2, 3), Rect::ints(2, 3, 3, 4)],
    )
}

/// A tiling of the 3x4 cake whose saturation meets every landing case:
/// a cut ending on the boundary, one ending inside another side and
/// continuing, and one ending on an existing 3-vertex.
pub fn saturation_tiling() -> (Rect, Vec<Rect>) {
    (
        Rect::ints(0, 0, 3, 4),
        vec![
            Rect::ints(0, 0, 1, 1),
            Rect::ints(1, 0, 2, 1),
            Rect::ints(2, 0, 3, 1),
            Rect::ints(0, 1, 3, 2),
            Rect::ints(0, 2, 1, 3),
            Rect::ints(1, 2, 3, 3),
            Rect::ints(0, 3, 3, 4),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{greedy_expand, TieBreak};
    use crate::holes::extract_holes;
    use crate::transforms::{saturate_to_grid, Landing};

    #[test]
    fn tie_break_decides_the_blank() {
        let a = greedy_tie();
        let left = greedy_expand(&a, &GREEDY_TIE_ORDER, TieBreak::Lexicographic).unwrap();
        let down = greedy_expand(&a, &GREEDY_TIE_ORDER, TieBreak::Down).unwrap();
        assert_eq!(left.rects().unwrap()[3], Rect::ints(0, 3, 4, 4));
        assert_eq!(down.rects().unwrap()[3], Rect::ints(2, 2, 4, 4));
        assert_eq!(extract_holes(&left).unwrap().len(), 0);
        assert_eq!(extract_holes(&down).unwrap().len(), 1);
    }

    #[test]
    fn saturation_cases() {
        let (cake, rs) = saturation_tiling();
        let g = saturate_to_grid(&cake, &rs).unwrap();
        assert_eq!((g.k1, g.k2, g.t), (3, 4, 5));
        assert_eq!(rs.len() as u64, g.k1 * g.k2 - g.t);
        let landings: Vec<Landing> = g.added_segments.iter().map(|s| s.landing).collect();
        assert_eq!(landings, [Landing::Vertex, Landing::Boundary, Landing::Side, Landing::Side, Landing::Boundary]);
    }
}
