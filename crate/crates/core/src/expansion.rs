//! Area-maximal expansion of rectangular toppings and the greedy pass.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Cake};
use crate::error::{Error, Result};
use crate::geom::grid::{Grid, Label, Outline};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};
use crate::par::{self, Execution};

/// Preference among equal-area expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Smallest `(x0, y0, x1, y1)`: leftward growth wins.
    #[default]
    Lexicographic,
    /// Smallest `(y0, x0, y1, x1)`: downward growth wins.
    Down,
}

impl TieBreak {
    fn cmp(self, a: &Rect, b: &Rect) -> Ordering {
        match self {
            TieBreak::Lexicographic => a.key().cmp(&b.key()),
            TieBreak::Down => (a.y0(), a.x0(), a.y1(), a.x1()).cmp(&(b.y0(), b.x0(), b.y1(), b.x1())),
        }
    }

    /// True if `cand` beats `best`: larger area, then the tie-break order.
    pub fn better(self, cand: &Rect, cand_area: &Rational, best: &Rect, best_area: &Rational) -> bool {
        match cand_area.cmp(best_area) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.cmp(cand, best) == Ordering::Less,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Up,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Left, Direction::Right, Direction::Up, Direction::Down];
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Blocker {
    CakeBoundary,
    Topping(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWitness {
    pub topping_index: usize,
    pub direction: Direction,
    pub blocker: Blocker,
    pub contact: (Point, Point),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal(Vec<BlockWitness>),
    Expandable { index: usize, direction: Direction, larger: Rect },
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal(_))
    }
}

/// Obstacle set of a bounded cake: its bounding box, plus the rows of
/// bounding-box cells outside a rectilinear cake.
#[derive(Clone, Debug)]
pub struct Frame {
    pub bbox: Rect,
    pub phantoms: Vec<Rect>,
}

impl Frame {
    pub fn of(cake: &Cake) -> Result<Frame> {
        match cake {
            Cake::Rect(r) => Ok(Frame { bbox: r.clone(), phantoms: Vec::new() }),
            Cake::Rectilinear(p) => {
                let grid = Grid::build(Outline::Rectilinear(p), &[], &[]);
                let (nx, ny) = grid.dims();
                let mut phantoms = Vec::new();
                for j in 0..ny {
                    let mut i = 0;
                    while i < nx {
                        if grid.label(i as isize, j as isize) != Label::Outside {
                            i += 1;
                            continue;
                        }
                        let start = i;
                        while i < nx && grid.label(i as isize, j as isize) == Label::Outside {
                            i += 1;
                        }
                        phantoms.push(
                            Rect::from_bounds(
                                grid.xs[start].clone(),
                                grid.ys[j].clone(),
                                grid.xs[i].clone(),
                                grid.ys[j + 1].clone(),
                            )
                            .expect("grid cells have positive size"),
                        );
                    }
                }
                Ok(Frame { bbox: p.bbox(), phantoms })
            }
            other => Err(Error::UnsupportedCake { expected: "rectangle or rectilinear", found: other.kind_name() }),
        }
    }
}

/// Largest-area rectangle containing `rects[index]`, inside the frame, and
/// interior-disjoint from every other rectangle and phantom.
///
/// The optimum is bounded on each side by an event coordinate (frame side
/// or obstacle side), so only event pairs are tried as horizontal spans; the
/// vertical span for each is then forced.
pub fn max_expansion_in(frame: &Frame, rects: &[Rect], index: usize, tie: TieBreak) -> Rect {
    let z = &rects[index];
    let obstacles: Vec<&Rect> =
        rects.iter().enumerate().filter(|&(j, _)| j != index).map(|(_, r)| r).chain(frame.phantoms.iter()).collect();
    let mut lefts: Vec<&Rational> = std::iter::once(frame.bbox.x0())
        .chain(obstacles.iter().flat_map(|o| [o.x0(), o.x1()]))
        .filter(|x| *x <= z.x0())
        .chain(std::iter::once(z.x0()))
        .collect();
    lefts.sort_by(|a, b| b.cmp(a));
    lefts.dedup();
    let mut rights: Vec<&Rational> = std::iter::once(frame.bbox.x1())
        .chain(obstacles.iter().flat_map(|o| [o.x0(), o.x1()]))
        .filter(|x| *x >= z.x1())
        .chain(std::iter::once(z.x1()))
        .collect();
    rights.sort();
    rights.dedup();

    let mut best = z.clone();
    let mut best_area = z.area();
    for left in lefts {
        let mut active: Vec<&Rect> = obstacles.iter().copied().filter(|o| o.x1() > left).collect();
        active.sort_by(|a, b| a.x0().cmp(b.x0()));
        let mut bottom = frame.bbox.y0().clone();
        let mut top = frame.bbox.y1().clone();
        let mut next = 0;
        let mut feasible_any = false;
        for right in &rights {
            let mut blocked = false;
            while next < active.len() && active[next].x0() < *right {
                let o = active[next];
                next += 1;
                if o.y1() <= z.y0() {
                    if *o.y1() > bottom {
                        bottom = o.y1().clone();
                    }
                } else if o.y0() >= z.y1() {
                    if *o.y0() < top {
                        top = o.y0().clone();
                    }
                } else {
                    blocked = true;
                    break;
                }
            }
            if blocked {
                break;
            }
            feasible_any = true;
            let cand = Rect::from_bounds(left.clone(), bottom.clone(), (*right).clone(), top.clone())
                .expect("candidate contains the topping");
            let area = cand.area();
            if tie.better(&cand, &area, &best, &best_area) {
                best = cand;
                best_area = area;
            }
        }
        if !feasible_any {
            // A wider left bound meets a superset of obstacles.
            break;
        }
    }
    best
}

pub fn max_expansion(a: &Arrangement, index: usize) -> Result<Rect> {
    max_expansion_with(a, index, TieBreak::default())
}

pub fn max_expansion_with(a: &Arrangement, index: usize, tie: TieBreak) -> Result<Rect> {
    let rects = a.bounded_rects()?;
    if index >= rects.len() {
        return Err(Error::InvalidIndex { index, m: rects.len() });
    }
    let frame = Frame::of(&a.cake)?;
    Ok(max_expansion_in(&frame, rects, index, tie))
}

fn check_permutation(order: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if order.len() != m {
        return Err(Error::NotAPermutation(m));
    }
    for &k in order {
        if k >= m || std::mem::replace(&mut seen[k], true) {
            return Err(Error::NotAPermutation(m));
        }
    }
    Ok(())
}

/// Replaces each topping, in `order`, by its maximal expansion against the
/// arrangement as updated so far. Inherently sequential.
pub fn greedy_expand(a: &Arrangement, order: &[usize], tie: TieBreak) -> Result<Arrangement> {
    let rects = a.bounded_rects()?;
    check_permutation(order, rects.len())?;
    let frame = Frame::of(&a.cake)?;
    let mut current = rects.to_vec();
    for &k in order {
        current[k] = max_expansion_in(&frame, &current, k, tie);
    }
    Ok(a.with_toppings(current))
}

pub fn identity_order(m: usize) -> Vec<usize> {
    (0..m).collect()
}

fn side_blocker(
    frame: &Frame,
    rects: &[Rect],
    i: usize,
    dir: Direction,
    cake_rect: bool,
) -> Option<(Blocker, (Point, Point))> {
    let z = &rects[i];
    // (coordinate of the side, span along it, obstacle side facing it)
    let (line, lo, hi, vertical) = match dir {
        Direction::Left => (z.x0(), z.y0(), z.y1(), true),
        Direction::Right => (z.x1(), z.y0(), z.y1(), true),
        Direction::Down => (z.y0(), z.x0(), z.x1(), false),
        Direction::Up => (z.y1(), z.x0(), z.x1(), false),
    };
    let seg = |a: &Rational, b: &Rational| {
        if vertical {
            (Point::new(line.clone(), a.clone()), Point::new(line.clone(), b.clone()))
        } else {
            (Point::new(a.clone(), line.clone()), Point::new(b.clone(), line.clone()))
        }
    };
    let on_frame = match dir {
        Direction::Left => line == frame.bbox.x0(),
        Direction::Right => line == frame.bbox.x1(),
        Direction::Down => line == frame.bbox.y0(),
        Direction::Up => line == frame.bbox.y1(),
    };
    if on_frame {
        return Some((Blocker::CakeBoundary, seg(lo, hi)));
    }
    let facing = |o: &Rect| -> Option<(Rational, Rational)> {
        let (side, olo, ohi) = match dir {
            Direction::Left => (o.x1(), o.y0(), o.y1()),
            Direction::Right => (o.x0(), o.y0(), o.y1()),
            Direction::Down => (o.y1(), o.x0(), o.x1()),
            Direction::Up => (o.y0(), o.x0(), o.x1()),
        };
        let a = Rational::max(lo, olo);
        let b = Rational::min(hi, ohi);
        (side == line && a < b).then_some((a, b))
    };
    if !cake_rect {
        if let Some((a, b)) = frame.phantoms.iter().find_map(&facing) {
            return Some((Blocker::CakeBoundary, seg(&a, &b)));
        }
    }
    rects
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .find_map(|(j, o)| facing(o).map(|(a, b)| (Blocker::Topping(j), seg(&a, &b))))
}

fn grow_to_next_event(frame: &Frame, rects: &[Rect], i: usize, dir: Direction) -> Rect {
    let z = &rects[i];
    let events = std::iter::once(&frame.bbox).chain(rects.iter()).chain(frame.phantoms.iter());
    match dir {
        Direction::Left => {
            let x = events.flat_map(|r| [r.x0(), r.x1()]).filter(|x| *x < z.x0()).max().unwrap();
            Rect::from_bounds(x.clone(), z.y0().clone(), z.x1().clone(), z.y1().clone()).unwrap()
        }
        Direction::Right => {
            let x = events.flat_map(|r| [r.x0(), r.x1()]).filter(|x| *x > z.x1()).min().unwrap();
            Rect::from_bounds(z.x0().clone(), z.y0().clone(), x.clone(), z.y1().clone()).unwrap()
        }
        Direction::Down => {
            let y = events.flat_map(|r| [r.y0(), r.y1()]).filter(|y| *y < z.y0()).max().unwrap();
            Rect::from_bounds(z.x0().clone(), y.clone(), z.x1().clone(), z.y1().clone()).unwrap()
        }
        Direction::Up => {
            let y = events.flat_map(|r| [r.y0(), r.y1()]).filter(|y| *y > z.y1()).min().unwrap();
            Rect::from_bounds(z.x0().clone(), z.y0().clone(), z.x1().clone(), y.clone()).unwrap()
        }
    }
}

/// Inclusion-maximality: every side of every topping touches an obstacle
/// along a segment of positive length. Otherwise reports the first
/// topping (by index) and direction that can grow, with a larger feasible
/// rectangle.
pub fn is_maximal(a: &Arrangement) -> Result<Maximality> {
    is_maximal_with(a, Execution::default())
}

pub fn is_maximal_with(a: &Arrangement, exec: Execution) -> Result<Maximality> {
    let rects = a.bounded_rects()?;
    let frame = Frame::of(&a.cake)?;
    let cake_rect = matches!(a.cake, Cake::Rect(_));
    let per_topping = par::map_range(exec, rects.len(), |i| {
        let mut ws = Vec::with_capacity(4);
        for dir in Direction::ALL {
            match side_blocker(&frame, rects, i, dir, cake_rect) {
                Some((blocker, contact)) => {
                    ws.push(BlockWitness { topping_index: i, direction: dir, blocker, contact })
                }
                None => return Err((dir, grow_to_next_event(&frame, rects, i, dir))),
            }
        }
        Ok(ws)
    });
    let mut witnesses = Vec::new();
    for (i, r) in per_topping.into_iter().enumerate() {
        match r {
            Ok(ws) => witnesses.extend(ws),
            Err((direction, larger)) => return Ok(Maximality::Expandable { index: i, direction, larger }),
        }
    }
    Ok(Maximality::Maximal(witnesses))
}
