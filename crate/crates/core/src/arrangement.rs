//! Cake + toppings aggregate, validation, and the partition report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundName;
use crate::error::{Error, Result};
use crate::geom::grid::{polygon_contains_rect, Outline};
use crate::geom::polygon::{convex_interior_disjoint, ConvexPolygon, RectilinearPolygon};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};
use crate::holes::StructureReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cake {
    Rect(Rect),
    Rectilinear(RectilinearPolygon),
    Plane,
    Convex(ConvexPolygon),
}

impl Cake {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Cake::Rect(_) => "rectangle",
            Cake::Rectilinear(_) => "rectilinear",
            Cake::Plane => "plane",
            Cake::Convex(_) => "convex",
        }
    }

    /// Grid outline for the rectangle-based engines.
    pub fn outline(&self) -> Result<Outline<'_>> {
        match self {
            Cake::Rect(r) => Ok(Outline::Rect(r)),
            Cake::Rectilinear(p) => Ok(Outline::Rectilinear(p)),
            Cake::Plane => Ok(Outline::Plane),
            Cake::Convex(_) => {
                Err(Error::UnsupportedCake { expected: "rectangle, rectilinear or plane", found: "convex" })
            }
        }
    }

    /// Bounding box of a bounded axis-parallel cake.
    pub fn bbox(&self) -> Option<Rect> {
        match self {
            Cake::Rect(r) => Some(r.clone()),
            Cake::Rectilinear(p) => Some(p.bbox()),
            _ => None,
        }
    }

    pub fn reflex_count(&self) -> usize {
        match self {
            Cake::Rectilinear(p) => p.reflex_count(),
            _ => 0,
        }
    }

    pub fn area(&self) -> Option<Rational> {
        match self {
            Cake::Rect(r) => Some(r.area()),
            Cake::Rectilinear(p) => Some(p.area()),
            Cake::Convex(c) => Some(c.area()),
            Cake::Plane => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Toppings {
    Rects(Vec<Rect>),
    Convex(Vec<ConvexPolygon>),
}

impl Toppings {
    pub fn len(&self) -> usize {
        match self {
            Toppings::Rects(v) => v.len(),
            Toppings::Convex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub cake: Cake,
    pub toppings: Toppings,
    pub labels: Vec<String>,
}

pub fn default_label(i: usize) -> String {
    format!("Z{}", i + 1)
}

impl Arrangement {
    pub fn new(cake: Cake, toppings: Toppings) -> Self {
        let labels = (0..toppings.len()).map(default_label).collect();
        Arrangement { cake, toppings, labels }
    }

    pub fn with_rects(cake: Cake, rects: Vec<Rect>) -> Self {
        Arrangement::new(cake, Toppings::Rects(rects))
    }

    pub fn m(&self) -> usize {
        self.toppings.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Rectangular toppings; errors for convex toppings.
    pub fn rects(&self) -> Result<&[Rect]> {
        match &self.toppings {
            Toppings::Rects(v) => Ok(v),
            Toppings::Convex(_) => Err(Error::InvalidArgument("arrangement has convex toppings".into())),
        }
    }

    /// Rectangle or rectilinear cake with rectangular toppings.
    pub fn bounded_rects(&self) -> Result<&[Rect]> {
        match self.cake {
            Cake::Rect(_) | Cake::Rectilinear(_) => self.rects(),
            _ => Err(Error::UnsupportedCake { expected: "rectangle or rectilinear", found: self.cake.kind_name() }),
        }
    }

    pub fn with_toppings(&self, rects: Vec<Rect>) -> Arrangement {
        Arrangement { cake: self.cake.clone(), toppings: Toppings::Rects(rects), labels: self.labels.clone() }
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidArrangement(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoToppings,
    Overlap(usize, usize),
    NotContained(usize),
    ToppingKind(&'static str),
    LabelCount { labels: usize, toppings: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoToppings => write!(f, "no-toppings"),
            Violation::Overlap(i, j) => write!(f, "overlap({i},{j})"),
            Violation::NotContained(i) => write!(f, "not-contained({i})"),
            Violation::ToppingKind(msg) => write!(f, "topping-kind({msg})"),
            Violation::LabelCount { labels, toppings } => {
                write!(f, "label-count({labels} labels, {toppings} toppings)")
            }
        }
    }
}

pub fn validate(a: &Arrangement) -> Vec<Violation> {
    let mut out = Vec::new();
    if a.m() == 0 {
        out.push(Violation::NoToppings);
    }
    if a.labels.len() != a.m() {
        out.push(Violation::LabelCount { labels: a.labels.len(), toppings: a.m() });
    }
    match (&a.cake, &a.toppings) {
        (Cake::Convex(_), Toppings::Rects(_)) => out.push(Violation::ToppingKind("convex cake needs polygon toppings")),
        (Cake::Rect(_) | Cake::Rectilinear(_), Toppings::Convex(_)) => {
            out.push(Violation::ToppingKind("axis-parallel cake needs rectangle toppings"))
        }
        _ => {}
    }
    match &a.toppings {
        Toppings::Rects(rs) => {
            for i in 0..rs.len() {
                for j in (i + 1)..rs.len() {
                    if rs[i].overlaps(&rs[j]) {
                        out.push(Violation::Overlap(i, j));
                    }
                }
            }
            for (i, r) in rs.iter().enumerate() {
                let inside = match &a.cake {
                    Cake::Rect(c) => c.contains_rect(r),
                    Cake::Rectilinear(p) => polygon_contains_rect(p, r),
                    Cake::Convex(c) => c.contains_polygon(&ConvexPolygon::from_rect(r)),
                    Cake::Plane => true,
                };
                if !inside {
                    out.push(Violation::NotContained(i));
                }
            }
        }
        Toppings::Convex(ps) => {
            for i in 0..ps.len() {
                for j in (i + 1)..ps.len() {
                    if !convex_interior_disjoint(&ps[i], &ps[j]) {
                        out.push(Violation::Overlap(i, j));
                    }
                }
            }
            if let Cake::Convex(c) = &a.cake {
                for (i, p) in ps.iter().enumerate() {
                    if !c.contains_polygon(p) {
                        out.push(Violation::NotContained(i));
                    }
                }
            }
        }
    }
    out
}

/// Rectilinear region that may enclose pockets (clockwise inner cycles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonRegion {
    pub outer: RectilinearPolygon,
    pub holes: Vec<Vec<Point>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Rect(Rect),
    Polygon(PolygonRegion),
    Convex(ConvexPolygon),
    /// A non-convex region given as interior-disjoint convex parts.
    Parts(Vec<ConvexPolygon>),
}

impl Region {
    pub fn area(&self) -> Rational {
        match self {
            Region::Rect(r) => r.area(),
            Region::Polygon(p) => {
                let pockets: Rational = p
                    .holes
                    .iter()
                    .map(|h| -(&crate::geom::shapes::twice_signed_area(h) / &Rational::from_int(2)))
                    .sum();
                &p.outer.area() - &pockets
            }
            Region::Convex(c) => c.area(),
            Region::Parts(ps) => ps.iter().map(|p| p.area()).sum(),
        }
    }

    pub fn as_rect(&self) -> Option<&Rect> {
        match self {
            Region::Rect(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub label: String,
    pub region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub name: BoundName,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub cake: Cake,
    pub pieces: Vec<Piece>,
    pub blanks: Vec<Region>,
    pub m: usize,
    pub b: usize,
    pub t: usize,
    /// Complement component count, for the plane bounds.
    pub holes: Option<usize>,
    pub bound: BoundSummary,
    pub satisfied: bool,
    pub tight: bool,
    pub structure: Option<StructureReport>,
}
