//! Coordinate-compressed grid over a cake and a set of rectangles.
//!
//! Every x- and y-coordinate of the cake and of the rectangles becomes a
//! grid line, so each cell lies entirely inside or outside every input
//! shape. Connectivity is edge adjacency: cells touching only at a corner
//! are not connected.

use std::collections::HashMap;

use super::polygon::{turn, RectilinearPolygon, Turn};
use super::rational::Rational;
use super::shapes::{twice_signed_area, Point, Rect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Outside,
    Free,
    Occupied(usize),
}

#[derive(Clone, Copy, Debug)]
pub enum Outline<'a> {
    Rect(&'a Rect),
    Rectilinear(&'a RectilinearPolygon),
    /// Unbounded plane; the grid spans the padded bounding box of the rectangles.
    Plane,
}

#[derive(Clone, Debug)]
pub struct Grid {
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
    labels: Vec<Label>,
}

/// A connected set of cells and its boundary.
#[derive(Clone, Debug)]
pub struct Component {
    pub cells: Vec<(usize, usize)>,
    pub outer: RectilinearPolygon,
    /// Boundaries of enclosed pockets, clockwise.
    pub inner: Vec<Vec<Point>>,
    /// Outer boundary as a unit-step walk over grid points (counter-clockwise).
    pub walk: Vec<(usize, usize)>,
    pub area: Rational,
}

impl Component {
    pub fn is_simply_connected(&self) -> bool {
        self.inner.is_empty()
    }
}

fn sorted_unique(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v.dedup();
    v
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Grid {
    /// Grid with the given lines, every cell free.
    pub fn with_lines(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let xs = sorted_unique(xs);
        let ys = sorted_unique(ys);
        assert!(xs.len() >= 2 && ys.len() >= 2, "grid needs at least one cell");
        let n = (xs.len() - 1) * (ys.len() - 1);
        Grid { xs, ys, labels: vec![Label::Free; n] }
    }

    /// Builds the grid for `outline`, marks cells outside it, then paints
    /// `rects[k]` as `Occupied(k)`. Extra lines can be forced via `extra`.
    pub fn build(outline: Outline<'_>, rects: &[Rect], extra: &[Point]) -> Self {
        let mut xs: Vec<Rational> = Vec::new();
        let mut ys: Vec<Rational> = Vec::new();
        for r in rects {
            xs.extend([r.x0().clone(), r.x1().clone()]);
            ys.extend([r.y0().clone(), r.y1().clone()]);
        }
        for p in extra {
            xs.push(p.x.clone());
            ys.push(p.y.clone());
        }
        match outline {
            Outline::Rect(c) => {
                xs.extend([c.x0().clone(), c.x1().clone()]);
                ys.extend([c.y0().clone(), c.y1().clone()]);
            }
            Outline::Rectilinear(poly) => {
                for v in poly.vertices() {
                    xs.push(v.x.clone());
                    ys.push(v.y.clone());
                }
            }
            Outline::Plane => {
                let min_x = xs.iter().min().cloned().unwrap_or_default();
                let max_x = xs.iter().max().cloned().unwrap_or_default();
                let min_y = ys.iter().min().cloned().unwrap_or_default();
                let max_y = ys.iter().max().cloned().unwrap_or_default();
                let one = Rational::one();
                xs.extend([&min_x - &one, &max_x + &one]);
                ys.extend([&min_y - &one, &max_y + &one]);
            }
        }
        let mut grid = Grid::with_lines(xs, ys);
        if let Outline::Rectilinear(poly) = outline {
            grid.mark_outside(poly);
        } else if let Outline::Rect(c) = outline {
            // Lines beyond the cake can come from `extra` or stray rectangles.
            let (nx, ny) = grid.dims();
            for j in 0..ny {
                for i in 0..nx {
                    let cell = grid.cell_rect(i, j);
                    if !c.contains_rect(&cell) {
                        grid.set(i, j, Label::Outside);
                    }
                }
            }
        }
        for (k, r) in rects.iter().enumerate() {
            grid.paint(r, Label::Occupied(k));
        }
        grid
    }

    fn mark_outside(&mut self, poly: &RectilinearPolygon) {
        let (nx, ny) = self.dims();
        for j in 0..ny {
            let ymid = Rational::midpoint(&self.ys[j], &self.ys[j + 1]);
            // x-coordinates where the row's midline crosses a vertical edge.
            let mut crossings: Vec<Rational> = poly
                .edges()
                .filter(|(a, b)| a.x == b.x)
                .filter(|(a, b)| {
                    let (lo, hi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                    *lo < ymid && ymid < *hi
                })
                .map(|(a, _)| a.x.clone())
                .collect();
            crossings.sort();
            for i in 0..nx {
                let xmid = Rational::midpoint(&self.xs[i], &self.xs[i + 1]);
                let left = crossings.iter().filter(|x| **x < xmid).count();
                if left % 2 == 0 {
                    self.set(i, j, Label::Outside);
                }
            }
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.xs.len() - 1, self.ys.len() - 1)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * (self.xs.len() - 1) + i
    }

    /// Label of cell `(i, j)`; out-of-range cells are `Outside`.
    pub fn label(&self, i: isize, j: isize) -> Label {
        let (nx, ny) = self.dims();
        if i < 0 || j < 0 || i as usize >= nx || j as usize >= ny {
            Label::Outside
        } else {
            self.labels[self.idx(i as usize, j as usize)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, label: Label) {
        let k = self.idx(i, j);
        self.labels[k] = label;
    }

    pub fn x_index(&self, x: &Rational) -> Option<usize> {
        self.xs.binary_search(x).ok()
    }

    pub fn y_index(&self, y: &Rational) -> Option<usize> {
        self.ys.binary_search(y).ok()
    }

    pub fn point_index(&self, p: &Point) -> Option<(usize, usize)> {
        Some((self.x_index(&p.x)?, self.y_index(&p.y)?))
    }

    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(self.xs[i].clone(), self.ys[j].clone())
    }

    pub fn cell_rect(&self, i: usize, j: usize) -> Rect {
        Rect::from_bounds(self.xs[i].clone(), self.ys[j].clone(), self.xs[i + 1].clone(), self.ys[j + 1].clone())
            .expect("grid lines are strictly increasing")
    }

    /// Cell index ranges `(i0..i1, j0..j1)` covered by `r`.
    pub fn cell_range(&self, r: &Rect) -> Option<(std::ops::Range<usize>, std::ops::Range<usize>)> {
        Some((self.x_index(r.x0())?..self.x_index(r.x1())?, self.y_index(r.y0())?..self.y_index(r.y1())?))
    }

    /// Paints `label` over the free and occupied cells of `r`; outside cells keep their label.
    pub fn paint(&mut self, r: &Rect, label: Label) {
        let (is, js) = self.cell_range(r).expect("rectangle coordinates are grid lines");
        for j in js {
            for i in is.clone() {
                if self.labels[self.idx(i, j)] != Label::Outside {
                    self.set(i, j, label);
                }
            }
        }
    }

    pub fn cells_with(&self, label: Label) -> Vec<(usize, usize)> {
        let (nx, ny) = self.dims();
        let mut out = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if self.labels[self.idx(i, j)] == label {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edge-connected groups of cells that share a label accepted by `pick`.
    /// Groups are sorted by (min row, min column) of their bounding box.
    pub fn groups(&self, pick: impl Fn(Label) -> bool) -> Vec<Vec<(usize, usize)>> {
        let (nx, ny) = self.dims();
        let mut dsu = Dsu::new(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let l = self.labels[self.idx(i, j)];
                if !pick(l) {
                    continue;
                }
                if i + 1 < nx && self.labels[self.idx(i + 1, j)] == l {
                    dsu.union(self.idx(i, j), self.idx(i + 1, j));
                }
                if j + 1 < ny && self.labels[self.idx(i, j + 1)] == l {
                    dsu.union(self.idx(i, j), self.idx(i, j + 1));
                }
            }
        }
        let mut by_root: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for j in 0..ny {
            for i in 0..nx {
                if pick(self.labels[self.idx(i, j)]) {
                    let root = dsu.find(self.idx(i, j));
                    by_root.entry(root).or_default().push((i, j));
                }
            }
        }
        let mut groups: Vec<Vec<(usize, usize)>> = by_root.into_values().collect();
        let key = |g: &Vec<(usize, usize)>| {
            let min_j = g.iter().map(|c| c.1).min().unwrap();
            let min_i = g.iter().map(|c| c.0).min().unwrap();
            (min_j, min_i)
        };
        groups.sort_by_key(key);
        groups
    }

    /// Traces the boundary cycles of a cell set; each cycle is a unit-step
    /// walk over grid points with the set on its left. At a pinch point the
    /// walk turns right, so the open set's single boundary stays one cycle.
    pub fn trace(&self, cells: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
        let member: std::collections::HashSet<(usize, usize)> = cells.iter().copied().collect();
        let has = |i: isize, j: isize| i >= 0 && j >= 0 && member.contains(&(i as usize, j as usize));
        let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
        for &(i, j) in cells {
            let (ii, jj) = (i as isize, j as isize);
            if !has(ii, jj - 1) {
                edges.push(((i, j), (i + 1, j)));
            }
            if !has(ii + 1, jj) {
                edges.push(((i + 1, j), (i + 1, j + 1)));
            }
            if !has(ii, jj + 1) {
                edges.push(((i + 1, j + 1), (i, j + 1)));
            }
            if !has(ii - 1, jj) {
                edges.push(((i, j + 1), (i, j)));
            }
        }
        edges.sort();
        let mut out_of: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            out_of.entry(e.0).or_default().push(k);
        }
        let mut used = vec![false; edges.len()];
        let mut cycles = Vec::new();
        for start in 0..edges.len() {
            if used[start] {
                continue;
            }
            let mut walk = vec![edges[start].0];
            let mut cur = start;
            loop {
                used[cur] = true;
                let (from, to) = edges[cur];
                let candidates: Vec<usize> = out_of[&to].iter().copied().filter(|&k| !used[k] || k == start).collect();
                let next = if candidates.len() == 1 {
                    candidates[0]
                } else {
                    let d_in = (to.0 as isize - from.0 as isize, to.1 as isize - from.1 as isize);
                    *candidates
                        .iter()
                        .find(|&&k| {
                            let (a, b) = edges[k];
                            let d_out = (b.0 as isize - a.0 as isize, b.1 as isize - a.1 as isize);
                            d_in.0 * d_out.1 - d_in.1 * d_out.0 < 0
                        })
                        .unwrap_or(&candidates[0])
                };
                if next == start {
                    break;
                }
                walk.push(to);
                cur = next;
            }
            cycles.push(walk);
        }
        cycles
    }

    /// Drops straight-through points from a unit-step walk.
    pub fn corners_of_walk(&self, walk: &[(usize, usize)]) -> Vec<Point> {
        let n = walk.len();
        let pts: Vec<Point> = walk.iter().map(|&(i, j)| self.point(i, j)).collect();
        (0..n)
            .filter(|&k| turn(&pts[(k + n - 1) % n], &pts[k], &pts[(k + 1) % n]) != Turn::Straight)
            .map(|k| pts[k].clone())
            .collect()
    }

    pub fn component(&self, cells: Vec<(usize, usize)>) -> Component {
        let mut outer = None;
        let mut inner = Vec::new();
        for walk in self.trace(&cells) {
            let corners = self.corners_of_walk(&walk);
            if twice_signed_area(&corners).signum() == std::cmp::Ordering::Greater {
                debug_assert!(outer.is_none(), "a connected cell set has one outer boundary");
                outer = Some((RectilinearPolygon::from_trace(corners), walk));
            } else {
                inner.push(corners);
            }
        }
        let (outer, walk) = outer.expect("non-empty cell set has an outer boundary");
        let area = cells.iter().map(|&(i, j)| self.cell_rect(i, j).area()).sum();
        Component { cells, outer, inner, walk, area }
    }

    pub fn free_components(&self) -> Vec<Component> {
        self.groups(|l| l == Label::Free).into_iter().map(|g| self.component(g)).collect()
    }
}

/// Closures of the connected components of `clip` minus the rectangles.
pub fn union_components(rects: &[Rect], clip: &RectilinearPolygon) -> Vec<RectilinearPolygon> {
    Grid::build(Outline::Rectilinear(clip), rects, &[]).free_components().into_iter().map(|c| c.outer).collect()
}

/// True iff `inner` lies in the closure of `outer`.
pub fn polygon_contains_rect(outer: &RectilinearPolygon, inner: &Rect) -> bool {
    if !outer.bbox().contains_rect(inner) {
        return false;
    }
    let grid = Grid::build(Outline::Rectilinear(outer), &[], &[inner.lo().clone(), inner.hi().clone()]);
    let (is, js) = grid.cell_range(inner).expect("corners were added as lines");
    js.into_iter().all(|j| is.clone().all(|i| grid.label(i as isize, j as isize) != Label::Outside))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pinwheel() -> Vec<Rect> {
        vec![Rect::ints(0, 0, 2, 1), Rect::ints(2, 0, 3, 2), Rect::ints(1, 2, 3, 3), Rect::ints(0, 1, 1, 3)]
    }

    fn square(n: i64) -> RectilinearPolygon {
        RectilinearPolygon::from_rect(&Rect::ints(0, 0, n, n))
    }

    /// Independent oracle: flood fill on a unit lattice for integer inputs,
    /// counting 4-connected free unit squares.
    fn lattice_components(rects: &[Rect], n: i64) -> Vec<usize> {
        let covered = |x: i64, y: i64| {
            rects.iter().any(|r| {
                let c = Rect::ints(x, y, x + 1, y + 1);
                r.contains_rect(&c)
            })
        };
        let mut seen = vec![vec![false; n as usize]; n as usize];
        let mut sizes = Vec::new();
        for y in 0..n {
            for x in 0..n {
                if seen[y as usize][x as usize] || covered(x, y) {
                    continue;
                }
                let mut stack = vec![(x, y)];
                seen[y as usize][x as usize] = true;
                let mut size = 0;
                while let Some((cx, cy)) = stack.pop() {
                    size += 1;
                    for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                        let (nx, ny) = (cx + dx, cy + dy);
                        if nx >= 0 && ny >= 0 && nx < n && ny < n && !seen[ny as usize][nx as usize] && !covered(nx, ny)
                        {
                            seen[ny as usize][nx as usize] = true;
                            stack.push((nx, ny));
                        }
                    }
                }
                sizes.push(size);
            }
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn pinwheel_has_one_square_hole() {
        let comps = union_components(&pinwheel(), &square(3));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].as_rect(), Some(Rect::ints(1, 1, 2, 2)));
        assert_eq!(lattice_components(&pinwheel(), 3), vec![1]);
    }

    #[test]
    fn full_cover_and_empty() {
        assert!(union_components(&[Rect::ints(0, 0, 3, 3)], &square(3)).is_empty());
        let comps = union_components(&[], &square(1));
        assert_eq!(comps, vec![square(1)]);
    }

    #[test]
    fn corner_contact_separates() {
        // two free squares meeting only at (1,1)
        let rects = [Rect::ints(1, 0, 2, 1), Rect::ints(0, 1, 1, 2)];
        let comps = union_components(&rects, &square(2));
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn pinched_component_traces_as_one_outer_cycle() {
        // C-shaped free region whose tips touch diagonally around a topping at (1,1)-(2,2)
        let rects = [Rect::ints(1, 1, 2, 2), Rect::ints(2, 2, 3, 3)];
        let grid = Grid::build(Outline::Rect(&Rect::ints(0, 0, 3, 3)), &rects, &[]);
        let comps = grid.free_components();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].inner.len() <= 1);
        assert_eq!(comps[0].area, Rational::from_int(7));
    }

    #[test]
    fn l_shape_containment() {
        let l = RectilinearPolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!polygon_contains_rect(&l, &Rect::ints(1, 1, 2, 2)));
        assert!(polygon_contains_rect(&l, &Rect::ints(0, 0, 2, 1)));
        assert!(polygon_contains_rect(&l, &Rect::ints(0, 0, 1, 2)));
        assert!(polygon_contains_rect(&square(3), &Rect::ints(0, 0, 3, 3)));
        assert!(!polygon_contains_rect(&square(3), &Rect::ints(1, 1, 4, 2)));
        // rational sample-grid oracle for the L example
        let inner = Rect::ints(1, 1, 2, 2);
        let mut all_inside = true;
        for a in 0..=8 {
            for b in 0..=8 {
                let p = Point::new(
                    &Rational::from_int(1) + &Rational::new(2 * a + 1, 18),
                    &Rational::from_int(1) + &Rational::new(2 * b + 1, 18),
                );
                if inner.contains_point(&p) && !l.contains_off_edge(&p) {
                    all_inside = false;
                }
            }
        }
        assert!(!all_inside);
    }

    proptest::proptest! {
        #[test]
        fn components_match_lattice_and_conserve_area(seed in 0u64..5000) {
            let mut rng = crate::generators::rng::XorShift64Star::new(seed);
            let n = 8i64;
            let mut rects: Vec<Rect> = Vec::new();
            for _ in 0..rng.below(7) {
                let x = rng.below(n as u64) as i64;
                let y = rng.below(n as u64) as i64;
                let w = 1 + rng.below((n - x) as u64) as i64;
                let h = 1 + rng.below((n - y) as u64) as i64;
                let r = Rect::ints(x, y, x + w, y + h);
                if rects.iter().all(|o| !o.overlaps(&r)) {
                    rects.push(r);
                }
            }
            let grid = Grid::build(Outline::Rect(&Rect::ints(0, 0, n, n)), &rects, &[]);
            let comps = grid.free_components();
            let mut sizes: Vec<usize> = comps
                .iter()
                .map(|c| c.cells.iter().map(|&(i, j)| grid.cell_rect(i, j).area()).sum::<Rational>())
                .map(|a| a.to_string().parse::<usize>().unwrap())
                .collect();
            sizes.sort();
            proptest::prop_assert_eq!(sizes, lattice_components(&rects, n));
            let free: Rational = comps.iter().map(|c| c.area.clone()).sum();
            let used: Rational = rects.iter().map(|r| r.area()).sum();
            proptest::prop_assert_eq!(&free + &used, Rational::from_int(n * n));
            for c in &comps {
                let pockets: Rational = c.inner.iter().map(|p| -(&twice_signed_area(p) / &Rational::from_int(2))).sum();
                proptest::prop_assert_eq!(&c.outer.area() - &pockets, c.area.clone());
            }
        }
    }
}
