//! Deterministic SVG pictures of arrangements and partition reports.
//!
//! All coordinates are multiplied by a common denominator so every number
//! in the output is an exact integer. Equal input gives equal bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::analyze::{analyze, default_bound, plane_rect_holes};
use crate::arrangement::{Arrangement, Cake, PartitionReport, PolygonRegion, Region, Toppings};
use crate::error::Result;
use crate::geom::polygon::{ConvexPolygon, RectilinearPolygon};
use crate::geom::shapes::{Point, Rect};
use crate::holes::extract_holes;
use crate::plane::{convex_blanks, convex_hole_count};
use crate::transforms::partition_cycles;

pub const DEFAULT_WIDTH: u32 = 480;

struct Scene<'a> {
    cake: &'a Cake,
    pieces: Vec<(String, Region)>,
    blanks: Vec<Region>,
}

fn region_points(r: &Region) -> Vec<Point> {
    match r {
        Region::Rect(r) => r.corners().to_vec(),
        Region::Polygon(p) => p.outer.vertices().iter().chain(p.holes.iter().flatten()).cloned().collect(),
        Region::Convex(c) => c.vertices().to_vec(),
        Region::Parts(ps) => ps.iter().flat_map(|p| p.vertices().iter().cloned()).collect(),
    }
}

fn cake_outline(c: &Cake) -> Option<Vec<Point>> {
    match c {
        Cake::Rect(r) => Some(RectilinearPolygon::from_rect(r).vertices().to_vec()),
        Cake::Rectilinear(p) => Some(p.vertices().to_vec()),
        Cake::Convex(p) => Some(p.vertices().to_vec()),
        Cake::Plane => None,
    }
}

/// Maps exact points to integer user units with y pointing down.
struct Frame {
    scale: BigInt,
    x0: BigInt,
    y1: BigInt,
    pad: BigInt,
    w: BigInt,
    h: BigInt,
}

impl Frame {
    fn new(points: &[Point]) -> Frame {
        // doubled so rectangle centres land on integers too
        let mut scale = BigInt::from(2);
        for p in points {
            scale = scale.lcm(&p.x.denom()).lcm(&p.y.denom());
        }
        let int = |v: &crate::Rational| v.numer() * (&scale / v.denom());
        let xs: Vec<BigInt> = points.iter().map(|p| int(&p.x)).collect();
        let ys: Vec<BigInt> = points.iter().map(|p| int(&p.y)).collect();
        let (x0, x1) = (xs.iter().min().cloned().unwrap_or_default(), xs.iter().max().cloned().unwrap_or_default());
        let (y0, y1) = (ys.iter().min().cloned().unwrap_or_default(), ys.iter().max().cloned().unwrap_or_default());
        let span = std::cmp::max(&x1 - &x0, &y1 - &y0);
        let pad = std::cmp::max(&span / 20, BigInt::one());
        let (w, h) = (&x1 - &x0 + &pad * 2, &y1 - &y0 + &pad * 2);
        Frame { scale, x0, y1, pad, w, h }
    }

    fn xy(&self, p: &Point) -> (BigInt, BigInt) {
        let int = |v: &crate::Rational| v.numer() * (&self.scale / v.denom());
        (int(&p.x) - &self.x0 + &self.pad, &self.y1 - int(&p.y) + &self.pad)
    }

    /// A size in user units: the larger side divided by `k`, at least 1.
    fn unit(&self, k: i64) -> BigInt {
        std::cmp::max(std::cmp::max(&self.w, &self.h) / k, BigInt::one())
    }

    fn path(&self, cycles: &[&[Point]]) -> String {
        let mut d = String::new();
        for c in cycles {
            for (k, p) in c.iter().enumerate() {
                let (x, y) = self.xy(p);
                let _ = write!(d, "{}{x} {y} ", if k == 0 { "M" } else { "L" });
            }
            d.push('Z');
        }
        d
    }

    fn region_path(&self, r: &Region) -> String {
        match r {
            Region::Rect(r) => self.path(&[RectilinearPolygon::from_rect(r).vertices()]),
            Region::Polygon(p) => {
                let mut cycles: Vec<&[Point]> = vec![p.outer.vertices()];
                cycles.extend(p.holes.iter().map(Vec::as_slice));
                self.path(&cycles)
            }
            Region::Convex(c) => self.path(&[c.vertices()]),
            Region::Parts(ps) => {
                let cycles: Vec<&[Point]> = ps.iter().map(ConvexPolygon::vertices).collect();
                self.path(&cycles)
            }
        }
    }
}

/// A point well inside the region for its label.
fn label_anchor(r: &Region) -> Point {
    let centre = |r: &Rect| {
        let two = crate::Rational::from_int(2);
        Point::new(&(r.x0() + r.x1()) / &two, &(r.y0() + r.y1()) / &two)
    };
    match r {
        Region::Rect(r) => centre(r),
        Region::Polygon(PolygonRegion { outer, holes }) => {
            let mut cycles: Vec<&[Point]> = vec![outer.vertices()];
            cycles.extend(holes.iter().map(Vec::as_slice));
            let parts = partition_cycles(&cycles);
            centre(parts.iter().max_by(|a, b| a.area().cmp(&b.area())).expect("non-empty region"))
        }
        Region::Convex(c) => {
            let n = crate::Rational::from_int(c.vertices().len() as i64);
            let sx: crate::Rational = c.vertices().iter().map(|p| p.x.clone()).sum();
            let sy: crate::Rational = c.vertices().iter().map(|p| p.y.clone()).sum();
            Point::new(&sx / &n, &sy / &n)
        }
        Region::Parts(ps) => label_anchor(&Region::Convex(ps[0].clone())),
    }
}

fn render(scene: &Scene, width: u32) -> String {
    let mut pts: Vec<Point> = cake_outline(scene.cake).unwrap_or_default();
    pts.extend(scene.pieces.iter().flat_map(|(_, r)| region_points(r)));
    pts.extend(scene.blanks.iter().flat_map(region_points));
    let anchors: Vec<Point> = scene.pieces.iter().map(|(_, r)| label_anchor(r)).collect();
    pts.extend(anchors.iter().cloned());
    let f = Frame::new(&pts);
    let height = if f.w.is_zero() { BigInt::zero() } else { BigInt::from(width) * &f.h / &f.w };
    let hatch = f.unit(60);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {} {}">"#,
        f.w, f.h
    );
    let _ = writeln!(
        s,
        r#"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="{hatch}" height="{hatch}"><path d="M0 {hatch} L{hatch} 0" stroke="black" stroke-width="0.75" vector-effect="non-scaling-stroke"/></pattern></defs>"#
    );
    if let Some(outline) = cake_outline(scene.cake) {
        let _ = writeln!(
            s,
            r#"<path class="cake" d="{}" fill="white" stroke="black" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
            f.path(&[&outline])
        );
    }
    for b in &scene.blanks {
        let _ = writeln!(
            s,
            r#"<path class="blank" d="{}" fill="url(#hatch)" fill-rule="evenodd" stroke="black" stroke-width="0.5" vector-effect="non-scaling-stroke"/>"#,
            f.region_path(b)
        );
    }
    let font = f.unit(28);
    for ((label, r), anchor) in scene.pieces.iter().zip(&anchors) {
        let _ = writeln!(
            s,
            r##"<path class="topping" d="{}" fill="#c8c8c8" fill-rule="evenodd" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
            f.region_path(r)
        );
        let (x, y) = f.xy(anchor);
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="{font}" text-anchor="middle" dominant-baseline="central">{label}</text>"#
        );
    }
    let reflex = match scene.cake {
        Cake::Rectilinear(p) => p.reflex_vertices(),
        _ => Vec::new(),
    };
    let radius = f.unit(50);
    for v in &reflex {
        let (x, y) = f.xy(v);
        let _ = writeln!(
            s,
            r#"<circle class="reflex" cx="{x}" cy="{y}" r="{radius}" fill="none" stroke="black" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(label: &str) -> String {
    label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Toppings and their holes, each hole hatched as one region.
pub fn render_arrangement(a: &Arrangement, width: u32) -> Result<String> {
    a.require_valid()?;
    let pieces: Vec<(String, Region)> = match &a.toppings {
        Toppings::Rects(rs) => {
            rs.iter().enumerate().map(|(k, r)| (escape(a.label(k)), Region::Rect(r.clone()))).collect()
        }
        Toppings::Convex(ps) => {
            ps.iter().enumerate().map(|(k, p)| (escape(a.label(k)), Region::Convex(p.clone()))).collect()
        }
    };
    let blanks = match (&a.cake, &a.toppings) {
        (Cake::Rect(_) | Cake::Rectilinear(_), _) => extract_holes(a)?
            .into_iter()
            .map(|h| match h.as_rect() {
                Some(r) => Region::Rect(r),
                None => Region::Polygon(PolygonRegion { outer: h.region, holes: h.pockets }),
            })
            .collect(),
        (Cake::Plane, Toppings::Rects(rs)) => plane_rect_holes(rs).0,
        (Cake::Plane, Toppings::Convex(ps)) if ps.len() >= 3 => {
            convex_hole_count(ps)?.bounded.iter().map(|h| h.region()).collect()
        }
        (Cake::Convex(c), Toppings::Convex(ps)) => convex_blanks(c, ps).iter().map(|h| h.region()).collect(),
        _ => Vec::new(),
    };
    Ok(render(&Scene { cake: &a.cake, pieces, blanks }, width))
}

/// Pieces and blanks of a report, each blank rectangle hatched separately.
pub fn render_report(r: &PartitionReport, width: u32) -> String {
    let pieces = r.pieces.iter().map(|p| (escape(&p.label), p.region.clone())).collect();
    render(&Scene { cake: &r.cake, pieces, blanks: r.blanks.clone() }, width)
}

/// Renders the report of the default bound, falling back to holes only.
pub fn render_analyzed(a: &Arrangement, width: u32) -> Result<String> {
    match analyze(a, default_bound(a)) {
        Ok(r) => Ok(render_report(&r, width)),
        Err(_) => render_arrangement(a, width),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_staircase};

    #[test]
    fn grid16_counts() {
        let svg = render_arrangement(&gen_grid(16).unwrap(), DEFAULT_WIDTH).unwrap();
        assert_eq!(svg.matches(r#"class="topping""#).count(), 16);
        assert_eq!(svg.matches(r#"class="blank""#).count(), 9);
        assert!(svg.contains(">Z16</text>"));
        assert_eq!(svg, render_arrangement(&gen_grid(16).unwrap(), DEFAULT_WIDTH).unwrap());
    }

    #[test]
    fn staircase_circles_reflex_vertices() {
        let svg = render_arrangement(&gen_staircase(16, 4).unwrap(), DEFAULT_WIDTH).unwrap();
        assert_eq!(svg.matches(r#"class="reflex""#).count(), 4);
        // the staircase has fifths; the common denominator clears them
        for d in svg.split(r#" d=""#).skip(1) {
            let data = &d[..d.find('"').unwrap()];
            assert!(data.chars().all(|c| c.is_ascii_digit() || " MLZ-".contains(c)), "{data}");
        }
    }

    #[test]
    fn no_holes_no_hatching() {
        let svg = render_arrangement(&gen_grid(1).unwrap(), 200).unwrap();
        assert!(!svg.contains(r#"class="blank""#));
        assert!(svg.starts_with("<svg"));
    }
}
