//! Holes of an arrangement and their vertex/edge taxonomy.
//!
//! A hole is traced counter-clockwise with the hole on the left. Its
//! vertices are the boundary points that are corners of a topping or of
//! the cake, so a hole vertex may be a straight (180°) point.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Cake};
use crate::error::{Error, Result};
use crate::expansion::{is_maximal, Maximality};
use crate::geom::grid::{Grid, Label};
use crate::geom::polygon::RectilinearPolygon;
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locus {
    Inner,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convexity {
    Convex,
    Nonconvex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// Blocks growth of the topping across the given edge (index into `Hole::edges`).
    BlockingVertexOf(usize),
    /// Reflex cake vertex joining an inner edge and a boundary edge.
    ConnectionReflexC,
    /// Reflex cake vertex between two boundary edges.
    BoundaryReflexC,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleVertex {
    pub point: Point,
    /// Interior angle of the hole at this visit: 90, 180 or 270.
    pub angle: u16,
    pub convexity: Convexity,
    pub locus: Locus,
    pub roles: Vec<VertexRole>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleEdge {
    pub from: Point,
    pub to: Point,
    pub locus: Locus,
    /// Topping on the far side; `None` for boundary edges.
    pub across: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleKind {
    #[default]
    Inner,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    pub region: RectilinearPolygon,
    /// Clockwise boundaries of enclosed pockets; empty when simply connected.
    pub pockets: Vec<Vec<Point>>,
    /// For a hole with pockets, a topping lying inside one of them.
    pub enclosed_topping: Option<usize>,
    pub kind: HoleKind,
    pub vertices: Vec<HoleVertex>,
    /// `edges[k]` runs from `vertices[k]` to `vertices[k + 1]`.
    pub edges: Vec<HoleEdge>,
    pub area: Rational,
}

impl Hole {
    pub fn is_simply_connected(&self) -> bool {
        self.pockets.is_empty()
    }

    pub fn as_rect(&self) -> Option<Rect> {
        if self.is_simply_connected() {
            self.region.as_rect()
        } else {
            None
        }
    }

    /// Toppings across the hole's edges, sorted and deduplicated.
    pub fn adjacent_toppings(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().filter_map(|e| e.across).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn tally(&self) -> HoleTally {
        let mut t =
            HoleTally { kind: self.kind, vertices: self.vertices.len(), edges: self.edges.len(), ..Default::default() };
        for v in &self.vertices {
            match (v.locus, v.convexity) {
                (Locus::Inner, Convexity::Convex) => t.inner_convex_vertices += 1,
                (Locus::Inner, Convexity::Nonconvex) => t.inner_nonconvex_vertices += 1,
                (Locus::Boundary, _) => t.boundary_vertices += 1,
            }
            if v.locus == Locus::Boundary && v.angle == 270 {
                t.reflex_hole_vertices += 1;
            }
            for r in &v.roles {
                match r {
                    VertexRole::BlockingVertexOf(_) => t.blocking_vertices += 1,
                    VertexRole::ConnectionReflexC => {
                        t.connection_reflex_c_vertices += 1;
                        t.reflex_c_vertices += 1;
                    }
                    VertexRole::BoundaryReflexC => t.reflex_c_vertices += 1,
                }
            }
        }
        t.reflex_hole_vertices += t.inner_nonconvex_vertices;
        let blocked: HashSet<usize> = self
            .vertices
            .iter()
            .flat_map(|v| v.roles.iter())
            .filter_map(|r| match r {
                VertexRole::BlockingVertexOf(e) => Some(*e),
                _ => None,
            })
            .collect();
        for (k, e) in self.edges.iter().enumerate() {
            match e.locus {
                Locus::Inner => {
                    t.inner_edges += 1;
                    if blocked.contains(&k) {
                        t.blocked_inner_edges += 1;
                    }
                }
                Locus::Boundary => t.boundary_edges += 1,
            }
        }
        t.rectangle = self.as_rect().is_some();
        t
    }
}

/// Per-hole counts used by the structure checks.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoleTally {
    pub kind: HoleKind,
    pub vertices: usize,
    pub edges: usize,
    pub inner_edges: usize,
    pub boundary_edges: usize,
    pub blocked_inner_edges: usize,
    pub blocking_vertices: usize,
    pub inner_convex_vertices: usize,
    pub inner_nonconvex_vertices: usize,
    pub boundary_vertices: usize,
    pub reflex_hole_vertices: usize,
    pub connection_reflex_c_vertices: usize,
    pub reflex_c_vertices: usize,
    pub rectangle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    SimplyConnected,
    InnerEdgeBlocked,
    InnerHoleBalanced,
    InnerHoleRectangle,
    NoBoundaryHoles,
    BoundaryVertexSurplus,
    ReflexSurplus,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureViolation {
    pub rule: Rule,
    pub hole: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureReport {
    pub holes: Vec<HoleTally>,
    pub violations: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn inner_holes(&self) -> usize {
        self.holes.iter().filter(|h| h.kind == HoleKind::Inner).count()
    }

    pub fn boundary_holes(&self) -> usize {
        self.holes.len() - self.inner_holes()
    }
}

/// Unit step direction between adjacent grid points.
fn step(a: (usize, usize), b: (usize, usize)) -> (isize, isize) {
    (b.0 as isize - a.0 as isize, b.1 as isize - a.1 as isize)
}

/// Label of the cell in quadrant `(sx, sy)` (each ±1) around grid point `p`.
fn quadrant(grid: &Grid, p: (usize, usize), s: (isize, isize)) -> Label {
    let i = p.0 as isize + if s.0 > 0 { 0 } else { -1 };
    let j = p.1 as isize + if s.1 > 0 { 0 } else { -1 };
    grid.label(i, j)
}

fn outside_quadrants(grid: &Grid, p: (usize, usize)) -> usize {
    [(1, 1), (-1, 1), (-1, -1), (1, -1)].into_iter().filter(|&s| quadrant(grid, p, s) == Label::Outside).count()
}

/// Hole-vertex candidates: every topping corner and cake vertex.
fn corner_set(a: &Arrangement, rects: &[Rect]) -> HashSet<Point> {
    let mut set: HashSet<Point> = rects.iter().flat_map(|r| r.corners()).collect();
    match &a.cake {
        Cake::Rect(r) => set.extend(r.corners()),
        Cake::Rectilinear(p) => set.extend(p.vertices().iter().cloned()),
        _ => {}
    }
    set
}

fn build_hole(grid: &Grid, corners: &HashSet<Point>, rects: &[Rect], comp: crate::geom::grid::Component) -> Hole {
    let walk = &comp.walk;
    let n = walk.len();
    let dir_in = |k: usize| step(walk[(k + n - 1) % n], walk[k]);
    let dir_out = |k: usize| step(walk[k], walk[(k + 1) % n]);
    let angle_at = |k: usize| {
        let (a, b) = (dir_in(k), dir_out(k));
        match (a.0 * b.1 - a.1 * b.0).signum() {
            1 => 90,
            0 => 180,
            _ => 270,
        }
    };
    let positions: Vec<usize> =
        (0..n).filter(|&k| angle_at(k) != 180 || corners.contains(&grid.point(walk[k].0, walk[k].1))).collect();
    let mut vertices: Vec<HoleVertex> = positions
        .iter()
        .map(|&k| {
            let angle = angle_at(k);
            let outside = outside_quadrants(grid, walk[k]);
            HoleVertex {
                point: grid.point(walk[k].0, walk[k].1),
                angle,
                convexity: if angle == 90 { Convexity::Convex } else { Convexity::Nonconvex },
                locus: if outside > 0 { Locus::Boundary } else { Locus::Inner },
                roles: Vec::new(),
            }
        })
        .collect();
    let nv = positions.len();
    let mut edges = Vec::with_capacity(nv);
    for idx in 0..nv {
        let (ku, kv) = (positions[idx], positions[(idx + 1) % nv]);
        let d = dir_out(ku);
        let right = (d.1, -d.0);
        let across = quadrant(grid, walk[ku], (d.0 + right.0, d.1 + right.1));
        let (locus, across) = match across {
            Label::Occupied(t) => (Locus::Inner, Some(t)),
            _ => (Locus::Boundary, None),
        };
        edges.push(HoleEdge {
            from: vertices[idx].point.clone(),
            to: vertices[(idx + 1) % nv].point.clone(),
            locus,
            across,
        });
        if let Some(t) = across {
            let d_end = dir_in(kv);
            let r_end = (d_end.1, -d_end.0);
            if angle_at(kv) == 90
                && quadrant(grid, walk[kv], (d_end.0 + r_end.0, d_end.1 + r_end.1)) == Label::Occupied(t)
            {
                vertices[(idx + 1) % nv].roles.push(VertexRole::BlockingVertexOf(idx));
            }
            if angle_at(ku) == 90 && quadrant(grid, walk[ku], (right.0 - d.0, right.1 - d.1)) == Label::Occupied(t) {
                vertices[idx].roles.push(VertexRole::BlockingVertexOf(idx));
            }
        }
    }
    for idx in 0..nv {
        if outside_quadrants(grid, walk[positions[idx]]) != 1 {
            continue;
        }
        let prev = &edges[(idx + nv - 1) % nv];
        let next = &edges[idx];
        let role = if prev.locus != next.locus { VertexRole::ConnectionReflexC } else { VertexRole::BoundaryReflexC };
        vertices[idx].roles.push(role);
    }
    let kind = if edges.iter().any(|e| e.locus == Locus::Boundary) { HoleKind::Boundary } else { HoleKind::Inner };
    let enclosed_topping = comp.inner.first().and_then(|pocket| {
        let mut ccw = pocket.clone();
        ccw.reverse();
        let poly = RectilinearPolygon::from_trace(ccw);
        let two = Rational::from_int(2);
        rects.iter().position(|r| {
            let c = Point::new(&(r.x0() + r.x1()) / &two, &(r.y0() + r.y1()) / &two);
            poly.contains_off_edge(&c)
        })
    });
    Hole { region: comp.outer, pockets: comp.inner, enclosed_topping, kind, vertices, edges, area: comp.area }
}

/// Connected components of the cake minus the toppings, with taxonomy.
pub fn extract_holes(a: &Arrangement) -> Result<Vec<Hole>> {
    let rects = a.bounded_rects()?;
    let grid = Grid::build(a.cake.outline()?, rects, &[]);
    let corners = corner_set(a, rects);
    Ok(grid.free_components().into_iter().map(|c| build_hole(&grid, &corners, rects, c)).collect())
}

/// Checks every structural consequence of maximality on the holes.
/// Refuses non-maximal input, naming the topping that can grow.
pub fn verify_structure(a: &Arrangement) -> Result<StructureReport> {
    if let Maximality::Expandable { index, direction, .. } = is_maximal(a)? {
        return Err(Error::NotMaximal { index, direction: direction.to_string() });
    }
    let holes = extract_holes(a)?;
    Ok(structure_of(a, &holes))
}

/// The structure checks without the maximality precondition.
pub fn structure_of(a: &Arrangement, holes: &[Hole]) -> StructureReport {
    let rect_cake = matches!(a.cake, Cake::Rect(_));
    let mut violations = Vec::new();
    let mut tallies = Vec::with_capacity(holes.len());
    for (h, hole) in holes.iter().enumerate() {
        let t = hole.tally();
        let mut flag = |rule: Rule, detail: String| violations.push(StructureViolation { rule, hole: h, detail });
        if !hole.is_simply_connected() {
            let witness = hole.enclosed_topping.map(|k| format!(", encloses topping {k}")).unwrap_or_default();
            flag(Rule::SimplyConnected, format!("{} pockets{witness}", hole.pockets.len()));
        }
        if t.blocked_inner_edges < t.inner_edges {
            flag(Rule::InnerEdgeBlocked, format!("{} of {} inner edges blocked", t.blocked_inner_edges, t.inner_edges));
        }
        match t.kind {
            HoleKind::Inner => {
                let inner_vertices = t.inner_convex_vertices + t.inner_nonconvex_vertices;
                if t.inner_edges != inner_vertices {
                    flag(Rule::InnerHoleBalanced, format!("{} edges, {} vertices", t.inner_edges, inner_vertices));
                }
                if !t.rectangle {
                    flag(
                        Rule::InnerHoleRectangle,
                        format!("{} vertices, {} nonconvex", t.vertices, t.inner_nonconvex_vertices),
                    );
                }
            }
            HoleKind::Boundary => {
                if rect_cake {
                    flag(Rule::NoBoundaryHoles, format!("{} boundary edges", t.boundary_edges));
                }
                if t.boundary_vertices < t.boundary_edges + 1 {
                    flag(
                        Rule::BoundaryVertexSurplus,
                        format!("{} boundary vertices, {} boundary edges", t.boundary_vertices, t.boundary_edges),
                    );
                }
                if !rect_cake && t.reflex_hole_vertices + 1 > t.reflex_c_vertices {
                    flag(
                        Rule::ReflexSurplus,
                        format!(
                            "{} reflex hole vertices, {} reflex cake vertices",
                            t.reflex_hole_vertices, t.reflex_c_vertices
                        ),
                    );
                }
            }
        }
        tallies.push(t);
    }
    StructureReport { holes: tallies, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::tests::pinwheel;

    #[test]
    fn pinwheel_hole() {
        let holes = extract_holes(&pinwheel()).unwrap();
        assert_eq!(holes.len(), 1);
        let h = &holes[0];
        assert_eq!(h.kind, HoleKind::Inner);
        assert_eq!(h.as_rect(), Some(Rect::ints(1, 1, 2, 2)));
        assert_eq!(h.vertices.len(), 4);
        assert!(h.vertices.iter().all(|v| v.convexity == Convexity::Convex && v.locus == Locus::Inner));
        assert_eq!(h.adjacent_toppings(), vec![0, 1, 2, 3]);
        // each edge blocked exactly once, and each vertex blocks one edge
        let t = h.tally();
        assert_eq!((t.blocked_inner_edges, t.blocking_vertices), (4, 4));
        for v in &h.vertices {
            assert_eq!(v.roles.len(), 1);
        }
        let report = verify_structure(&pinwheel()).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn empty_cake_is_one_boundary_hole() {
        let a = Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 2, 2)), vec![]);
        let holes = extract_holes(&a).unwrap();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].kind, HoleKind::Boundary);
        assert_eq!(holes[0].as_rect(), Some(Rect::ints(0, 0, 2, 2)));
    }

    #[test]
    fn non_maximal_refused() {
        let a = Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 4, 4)), vec![Rect::ints(1, 1, 2, 2)]);
        assert!(matches!(verify_structure(&a), Err(Error::NotMaximal { index: 0, .. })));
    }

    #[test]
    fn pocket_reports_enclosed_topping() {
        let ring = vec![
            Rect::ints(0, 0, 5, 1),
            Rect::ints(4, 1, 5, 5),
            Rect::ints(0, 4, 4, 5),
            Rect::ints(0, 1, 1, 4),
            Rect::ints(2, 2, 3, 3),
        ];
        let a = Arrangement::with_rects(Cake::Rect(Rect::ints(0, 0, 5, 5)), ring);
        let holes = extract_holes(&a).unwrap();
        assert_eq!(holes.len(), 1);
        assert!(!holes[0].is_simply_connected());
        assert_eq!(holes[0].enclosed_topping, Some(4));
        let r = structure_of(&a, &holes);
        assert!(r.violations.iter().any(|v| v.rule == Rule::SimplyConnected));
    }

    #[test]
    fn straight_topping_corner_is_a_vertex() {
        // hole [1,1]x[3,2] with a topping corner at (2,1) on its bottom side
        let a = Arrangement::with_rects(
            Cake::Rect(Rect::ints(0, 0, 4, 3)),
            vec![
                Rect::ints(0, 0, 2, 1),
                Rect::ints(2, 0, 4, 1),
                Rect::ints(3, 1, 4, 3),
                Rect::ints(1, 2, 3, 3),
                Rect::ints(0, 1, 1, 3),
            ],
        );
        let holes = extract_holes(&a).unwrap();
        assert_eq!(holes.len(), 1);
        let t = holes[0].tally();
        assert_eq!((t.vertices, t.edges, t.inner_nonconvex_vertices), (5, 5, 1));
    }
}
