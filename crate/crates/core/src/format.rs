//! JSON interchange format for arrangements (`.arr.json`) and partition
//! reports (`.report.json`).
//!
//! Rationals are canonical strings (`"3"`, `"-1/2"`), rectangles are
//! `[x0, y0, x1, y1]` and polygons are vertex lists `[[x, y], ...]`.
//! Output is pretty-printed with a trailing newline, so equal values give
//! identical bytes.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, BoundSummary, Cake, PartitionReport, Piece, PolygonRegion, Region, Toppings};
use crate::error::{Error, Result};
use crate::geom::polygon::{ConvexPolygon, RectilinearPolygon};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};
use crate::holes::StructureReport;

type WirePoint = [Rational; 2];
type WireRect = [Rational; 4];

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Arrangement,
    Report,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum WireCake {
    Rect(WireRect),
    Rectilinear(Vec<WirePoint>),
    Plane,
    Convex(Vec<WirePoint>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WirePolygon {
    outer: Vec<WirePoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    holes: Vec<Vec<WirePoint>>,
}

/// A topping, piece or blank: a label (absent for blanks) and one shape.
#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct WireShape {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rect: Option<WireRect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polygon: Option<WirePolygon>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    convex: Option<Vec<WirePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<Vec<WirePoint>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    kind: Kind,
    cake: WireCake,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    toppings: Option<Vec<WireShape>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pieces: Option<Vec<WireShape>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blanks: Option<Vec<WireShape>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    holes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<BoundSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    satisfied: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tight: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    structure: Option<StructureReport>,
}

impl Document {
    fn empty(kind: Kind, cake: WireCake) -> Self {
        Document {
            kind,
            cake,
            toppings: None,
            pieces: None,
            blanks: None,
            m: None,
            b: None,
            t: None,
            holes: None,
            bound: None,
            satisfied: None,
            tight: None,
            structure: None,
        }
    }
}

/// A decoded file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Arrangement(Arrangement),
    Report(PartitionReport),
}

fn wire_points(ps: &[Point]) -> Vec<WirePoint> {
    ps.iter().map(|p| [p.x.clone(), p.y.clone()]).collect()
}

fn wire_rect(r: &Rect) -> WireRect {
    [r.x0().clone(), r.y0().clone(), r.x1().clone(), r.y1().clone()]
}

fn wire_cake(c: &Cake) -> WireCake {
    match c {
        Cake::Rect(r) => WireCake::Rect(wire_rect(r)),
        Cake::Rectilinear(p) => WireCake::Rectilinear(wire_points(p.vertices())),
        Cake::Plane => WireCake::Plane,
        Cake::Convex(p) => WireCake::Convex(wire_points(p.vertices())),
    }
}

fn wire_region(label: Option<&str>, r: &Region) -> WireShape {
    let mut s = WireShape { label: label.map(str::to_string), ..Default::default() };
    match r {
        Region::Rect(r) => s.rect = Some(wire_rect(r)),
        Region::Polygon(p) => {
            s.polygon = Some(WirePolygon {
                outer: wire_points(p.outer.vertices()),
                holes: p.holes.iter().map(|h| wire_points(h)).collect(),
            })
        }
        Region::Convex(c) => s.convex = Some(wire_points(c.vertices())),
        Region::Parts(ps) => s.parts = Some(ps.iter().map(|p| wire_points(p.vertices())).collect()),
    }
    s
}

fn to_bytes(doc: &Document) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("wire types always serialize");
    out.push(b'\n');
    out
}

pub fn encode_arrangement(a: &Arrangement) -> Vec<u8> {
    let mut doc = Document::empty(Kind::Arrangement, wire_cake(&a.cake));
    let shapes = match &a.toppings {
        Toppings::Rects(rs) => rs
            .iter()
            .zip(&a.labels)
            .map(|(r, l)| WireShape { label: Some(l.clone()), rect: Some(wire_rect(r)), ..Default::default() })
            .collect(),
        Toppings::Convex(ps) => ps
            .iter()
            .zip(&a.labels)
            .map(|(p, l)| WireShape {
                label: Some(l.clone()),
                convex: Some(wire_points(p.vertices())),
                ..Default::default()
            })
            .collect(),
    };
    doc.toppings = Some(shapes);
    to_bytes(&doc)
}

pub fn encode_report(r: &PartitionReport) -> Vec<u8> {
    let mut doc = Document::empty(Kind::Report, wire_cake(&r.cake));
    doc.pieces = Some(r.pieces.iter().map(|p| wire_region(Some(&p.label), &p.region)).collect());
    doc.blanks = Some(r.blanks.iter().map(|b| wire_region(None, b)).collect());
    doc.m = Some(r.m);
    doc.b = Some(r.b);
    doc.t = Some(r.t);
    doc.holes = r.holes;
    doc.bound = Some(r.bound);
    doc.satisfied = Some(r.satisfied);
    doc.tight = Some(r.tight);
    doc.structure = r.structure.clone();
    to_bytes(&doc)
}

pub fn encode(d: &Decoded) -> Vec<u8> {
    match d {
        Decoded::Arrangement(a) => encode_arrangement(a),
        Decoded::Report(r) => encode_report(r),
    }
}

fn points(ws: Vec<WirePoint>) -> Vec<Point> {
    ws.into_iter().map(|[x, y]| Point::new(x, y)).collect()
}

fn at<T>(field: &str, r: std::result::Result<T, impl std::fmt::Display>) -> Result<T> {
    r.map_err(|e| Error::Decode(format!("{e} at field {field}")))
}

fn rect(field: &str, [x0, y0, x1, y1]: WireRect) -> Result<Rect> {
    at(field, Rect::from_bounds(x0, y0, x1, y1))
}

fn cake(w: WireCake) -> Result<Cake> {
    Ok(match w {
        WireCake::Rect(r) => Cake::Rect(rect("cake.rect", r)?),
        WireCake::Rectilinear(ps) => Cake::Rectilinear(at("cake.rectilinear", RectilinearPolygon::new(points(ps)))?),
        WireCake::Plane => Cake::Plane,
        WireCake::Convex(ps) => Cake::Convex(at("cake.convex", ConvexPolygon::new(points(ps)))?),
    })
}

fn region(field: &str, s: WireShape) -> Result<(Option<String>, Region)> {
    let label = s.label;
    let r = match (s.rect, s.polygon, s.convex, s.parts) {
        (Some(r), None, None, None) => Region::Rect(rect(&format!("{field}.rect"), r)?),
        (None, Some(p), None, None) => Region::Polygon(PolygonRegion {
            outer: at(&format!("{field}.polygon.outer"), RectilinearPolygon::new_weakly_simple(points(p.outer)))?,
            holes: p.holes.into_iter().map(points).collect(),
        }),
        (None, None, Some(c), None) => Region::Convex(at(&format!("{field}.convex"), ConvexPolygon::new(points(c)))?),
        (None, None, None, Some(ps)) => Region::Parts(
            ps.into_iter()
                .enumerate()
                .map(|(k, c)| at(&format!("{field}.parts[{k}]"), ConvexPolygon::new(points(c))))
                .collect::<Result<_>>()?,
        ),
        _ => {
            return Err(Error::Decode(format!("exactly one of rect, polygon, convex, parts expected at field {field}")))
        }
    };
    Ok((label, r))
}

fn missing(field: &str) -> Error {
    Error::Decode(format!("missing field {field}"))
}

fn forbid(present: bool, field: &str, kind: &str) -> Result<()> {
    if present {
        Err(Error::Decode(format!("unknown field {field} in {kind}")))
    } else {
        Ok(())
    }
}

fn arrangement(doc: Document) -> Result<Arrangement> {
    forbid(doc.pieces.is_some(), "pieces", "arrangement")?;
    forbid(doc.blanks.is_some(), "blanks", "arrangement")?;
    forbid(doc.m.is_some() || doc.b.is_some() || doc.t.is_some(), "m/b/t", "arrangement")?;
    forbid(doc.holes.is_some() || doc.bound.is_some(), "holes/bound", "arrangement")?;
    forbid(
        doc.satisfied.is_some() || doc.tight.is_some() || doc.structure.is_some(),
        "satisfied/tight/structure",
        "arrangement",
    )?;
    let cake = cake(doc.cake)?;
    let shapes = doc.toppings.ok_or_else(|| missing("toppings"))?;
    let mut labels = Vec::with_capacity(shapes.len());
    let mut rects = Vec::new();
    let mut convex = Vec::new();
    for (i, s) in shapes.into_iter().enumerate() {
        let field = format!("toppings[{i}]");
        let (label, r) = region(&field, s)?;
        labels.push(label.unwrap_or_else(|| crate::arrangement::default_label(i)));
        match r {
            Region::Rect(r) => rects.push(r),
            Region::Convex(c) => convex.push(c),
            Region::Polygon(_) | Region::Parts(_) => {
                return Err(Error::Decode(format!("toppings must be rect or convex at field {field}")))
            }
        }
    }
    let toppings = match (rects.is_empty(), convex.is_empty()) {
        (_, true) => Toppings::Rects(rects),
        (true, false) => Toppings::Convex(convex),
        _ => return Err(Error::Decode("toppings mix rectangles and convex polygons".into())),
    };
    Ok(Arrangement { cake, toppings, labels })
}

fn report(doc: Document) -> Result<PartitionReport> {
    forbid(doc.toppings.is_some(), "toppings", "report")?;
    let cake = cake(doc.cake)?;
    let mut pieces = Vec::new();
    for (i, s) in doc.pieces.ok_or_else(|| missing("pieces"))?.into_iter().enumerate() {
        let field = format!("pieces[{i}]");
        let (label, region) = region(&field, s)?;
        let label = label.ok_or_else(|| missing(&format!("{field}.label")))?;
        pieces.push(Piece { label, region });
    }
    let mut blanks = Vec::new();
    for (i, s) in doc.blanks.ok_or_else(|| missing("blanks"))?.into_iter().enumerate() {
        let field = format!("blanks[{i}]");
        let (label, region) = region(&field, s)?;
        forbid(label.is_some(), &format!("{field}.label"), "report")?;
        blanks.push(region);
    }
    Ok(PartitionReport {
        cake,
        pieces,
        blanks,
        m: doc.m.ok_or_else(|| missing("m"))?,
        b: doc.b.ok_or_else(|| missing("b"))?,
        t: doc.t.ok_or_else(|| missing("t"))?,
        holes: doc.holes,
        bound: doc.bound.ok_or_else(|| missing("bound"))?,
        satisfied: doc.satisfied.ok_or_else(|| missing("satisfied"))?,
        tight: doc.tight.ok_or_else(|| missing("tight"))?,
        structure: doc.structure,
    })
}

/// Parses either kind of file. Errors name the JSON path and the line and
/// column of the first offending token.
pub fn decode(bytes: &[u8]) -> Result<Decoded> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode(format!("input is not UTF-8: {e}")))?;
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let (line, col) = (inner.line(), inner.column());
        let msg = inner.to_string();
        // serde_json appends " at line L column C"; drop it in favour of our own position
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        match msg.strip_prefix("invalid rational: ") {
            Some(reason) => {
                Error::Decode(format!("invalid rational at field {path} (line {line}, column {col}): {reason}"))
            }
            None => Error::Decode(format!("{msg} at field {path} (line {line}, column {col})")),
        }
    })?;
    de.end().map_err(|e| Error::Decode(format!("trailing characters: {e}")))?;
    match doc.kind {
        Kind::Arrangement => arrangement(doc).map(Decoded::Arrangement),
        Kind::Report => report(doc).map(Decoded::Report),
    }
}

pub fn decode_arrangement(bytes: &[u8]) -> Result<Arrangement> {
    match decode(bytes)? {
        Decoded::Arrangement(a) => Ok(a),
        Decoded::Report(_) => Err(Error::Decode("expected an arrangement, found a report".into())),
    }
}

pub fn decode_report(bytes: &[u8]) -> Result<PartitionReport> {
    match decode(bytes)? {
        Decoded::Report(r) => Ok(r),
        Decoded::Arrangement(_) => Err(Error::Decode("expected a report, found an arrangement".into())),
    }
}

pub fn read_arrangement(path: &std::path::Path) -> Result<Arrangement> {
    decode_arrangement(&std::fs::read(path)?)
}
