//! Integer bound machinery: `⌈2√m − 1⌉`, the k₁k₂ inequality, the 3-/4-vertex
//! census of a perfect partition, and the limit for each bound.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::rational::Rational;
use crate::geom::shapes::{Point, Rect};

/// Floor of the square root by monotone binary search.
pub fn isqrt(n: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 1u64 << 32);
    // invariant: lo^2 <= n < hi^2
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if (mid as u128) * (mid as u128) <= n as u128 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `⌈2√m − 1⌉` via the piecewise form: with `k² < m ≤ (k+1)²` it is `2k`
/// when `m ≤ k² + k` and `2k + 1` otherwise.
pub fn doubleroot(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidArgument("doubleroot needs m >= 1".into()));
    }
    let k = isqrt(m - 1);
    Ok(if m <= k * k + k { 2 * k } else { 2 * k + 1 })
}

/// `(k₁−1)(k₂−1) − t ≤ k₁k₂ − t − ⌈2√(k₁k₂−t) − 1⌉`.
pub fn lemma_k1k2_holds(k1: u64, k2: u64, t: u64) -> Result<bool> {
    let prod = k1 * k2;
    if k1 < 1 || k2 < 1 || prod <= t {
        return Err(Error::InvalidArgument(format!("need k1, k2 >= 1 and k1*k2 - t >= 1 (k1={k1}, k2={k2}, t={t})")));
    }
    let m = prod - t;
    let lhs = ((k1 - 1) * (k2 - 1)) as i128 - t as i128;
    let rhs = m as i128 - doubleroot(m)? as i128;
    Ok(lhs <= rhs)
}

/// Both sides of the k₁k₂ inequality, for equality checks.
pub fn lemma_k1k2_sides(k1: u64, k2: u64, t: u64) -> Result<(i128, i128)> {
    lemma_k1k2_holds(k1, k2, t)?;
    let m = k1 * k2 - t;
    Ok((((k1 - 1) * (k2 - 1)) as i128 - t as i128, m as i128 - doubleroot(m)? as i128))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Census {
    pub three_vertices: usize,
    pub four_vertices: usize,
}

/// Checks that `rects` tile `cake` exactly (contained, interior-disjoint, area-exact).
pub fn check_exact_cover(cake: &Rect, rects: &[Rect]) -> Result<()> {
    for (i, r) in rects.iter().enumerate() {
        if !cake.contains_rect(r) {
            return Err(Error::NotExactCover(format!("rectangle {i} leaves the cake")));
        }
    }
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by(|&a, &b| rects[a].x0().cmp(rects[b].x0()));
    for (p, &i) in order.iter().enumerate() {
        for &j in &order[p + 1..] {
            if rects[j].x0() >= rects[i].x1() {
                break;
            }
            if rects[i].overlaps(&rects[j]) {
                return Err(Error::NotExactCover(format!("rectangles {i} and {j} overlap")));
            }
        }
    }
    let total: Rational = rects.iter().map(|r| r.area()).sum();
    if total != cake.area() {
        return Err(Error::NotExactCover(format!("areas sum to {total}, cake area is {}", cake.area())));
    }
    Ok(())
}

/// Interior points of a perfect partition where rectangle corners meet,
/// keyed by point, with the number of corners there.
pub fn corner_incidence(cake: &Rect, rects: &[Rect]) -> HashMap<Point, usize> {
    let mut corners: HashMap<Point, usize> = HashMap::new();
    for r in rects {
        for c in r.corners() {
            let interior = *cake.x0() < c.x && c.x < *cake.x1() && *cake.y0() < c.y && c.y < *cake.y1();
            if interior {
                *corners.entry(c).or_default() += 1;
            }
        }
    }
    corners
}

/// Counts interior points where exactly three / four rectangles meet.
///
/// In an exact cover, an interior point that is a corner of some piece is a
/// corner of exactly two (a T-junction, three pieces) or four pieces.
pub fn four_vertex_census(cake: &Rect, rects: &[Rect]) -> Result<Census> {
    check_exact_cover(cake, rects)?;
    let mut census = Census::default();
    for (p, n) in corner_incidence(cake, rects) {
        match n {
            2 => census.three_vertices += 1,
            4 => census.four_vertices += 1,
            _ => return Err(Error::NotExactCover(format!("{n} corners meet at {p:?}"))),
        }
    }
    Ok(census)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundName {
    Thm1,
    Thm2,
    Thm2prime,
    Thm3,
    Thm3prime,
    Thm8,
    Lemma6,
}

impl BoundName {
    pub const ALL: [BoundName; 7] = [
        BoundName::Thm1,
        BoundName::Thm2,
        BoundName::Thm2prime,
        BoundName::Thm3,
        BoundName::Thm3prime,
        BoundName::Thm8,
        BoundName::Lemma6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Thm1 => "thm1",
            BoundName::Thm2 => "thm2",
            BoundName::Thm2prime => "thm2prime",
            BoundName::Thm3 => "thm3",
            BoundName::Thm3prime => "thm3prime",
            BoundName::Thm8 => "thm8",
            BoundName::Lemma6 => "lemma6",
        }
    }

    fn min_m(self) -> usize {
        match self {
            BoundName::Thm2 | BoundName::Thm2prime | BoundName::Thm3prime => 3,
            _ => 1,
        }
    }

    /// The limit for `m` toppings and `t` reflex cake vertices.
    pub fn limit(self, m: usize, t: usize) -> Result<i64> {
        if m < self.min_m() {
            return Err(Error::BelowDomain { bound: self.as_str(), min: self.min_m(), m });
        }
        let (m, t) = (m as i64, t as i64);
        let dr = || doubleroot(m as u64).map(|d| d as i64);
        Ok(match self {
            BoundName::Thm1 => 0,
            BoundName::Thm2 => 2 * m - 5,
            BoundName::Thm2prime => 2 * m - 4,
            BoundName::Thm3 | BoundName::Lemma6 => m - dr()?,
            BoundName::Thm3prime => m - 2,
            BoundName::Thm8 => m + t - dr()?,
        })
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub bound_name: BoundName,
    pub m: usize,
    pub t: usize,
    pub observed: i64,
    pub limit: i64,
    pub tight: bool,
}

impl BoundVerdict {
    pub fn satisfied(&self) -> bool {
        self.observed <= self.limit
    }
}

pub fn check_bound(name: BoundName, m: usize, t: usize, observed: i64) -> Result<BoundVerdict> {
    let limit = name.limit(m, t)?;
    Ok(BoundVerdict { bound_name: name, m, t, observed, limit, tight: observed == limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: the smallest n >= 0 with (n + 1)^2 >= 4m.
    fn ceil_oracle(m: u64) -> u64 {
        use num_integer::Roots;
        let r = (4 * m).sqrt();
        if r * r == 4 * m {
            r - 1
        } else {
            r
        }
    }

    #[test]
    fn doubleroot_examples() {
        assert_eq!(doubleroot(16).unwrap(), 7);
        assert_eq!(16 - doubleroot(16).unwrap(), 9);
        assert_eq!(doubleroot(1).unwrap(), 1);
        assert_eq!(doubleroot(12).unwrap(), 6);
        assert!(doubleroot(0).is_err());
    }

    #[test]
    fn doubleroot_matches_oracle_small() {
        for m in 1..=20_000 {
            assert_eq!(doubleroot(m).unwrap(), ceil_oracle(m), "m = {m}");
        }
    }

    #[test]
    fn doubleroot_steps_at_k2_plus_1_and_k2_plus_k_plus_1() {
        for m in 2..=5000u64 {
            let step = doubleroot(m).unwrap() - doubleroot(m - 1).unwrap();
            let k = isqrt(m - 1);
            let expected = u64::from(m == k * k + 1 || m == k * k + k + 1);
            assert_eq!(step, expected, "m = {m}");
        }
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), (1 << 32) - 1);
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_k1k2_sides(2, 2, 0).unwrap(), (1, 1));
        assert_eq!(lemma_k1k2_sides(2, 3, 0).unwrap(), (2, 2));
        let (l, r) = lemma_k1k2_sides(5, 7, 3).unwrap();
        // m = 32 lies in (30, 36], so doubleroot is 2*5 + 1; equality holds
        assert_eq!((l, r), (21, 32 - 11));
        assert!(lemma_k1k2_holds(5, 7, 3).unwrap());
        assert!(lemma_k1k2_holds(1, 1, 1).is_err());
    }

    #[test]
    fn census_small() {
        let cake = Rect::ints(0, 0, 2, 1);
        let c = four_vertex_census(&cake, &[Rect::ints(0, 0, 1, 1), Rect::ints(1, 0, 2, 1)]).unwrap();
        assert_eq!(c, Census { three_vertices: 0, four_vertices: 0 });
        let grid: Vec<Rect> = (0..4).flat_map(|i| (0..4).map(move |j| Rect::ints(i, j, i + 1, j + 1))).collect();
        let c = four_vertex_census(&Rect::ints(0, 0, 4, 4), &grid).unwrap();
        assert_eq!(c.four_vertices, 9);
        assert!(four_vertex_census(&cake, &[Rect::ints(0, 0, 1, 1)]).is_err());
    }

    #[test]
    fn check_bound_examples() {
        let v = check_bound(BoundName::Thm3, 4, 0, 1).unwrap();
        assert_eq!((v.limit, v.tight), (1, true));
        let v = check_bound(BoundName::Thm2, 6, 0, 7).unwrap();
        assert_eq!((v.limit, v.tight), (7, true));
        let v = check_bound(BoundName::Thm8, 16, 4, 13).unwrap();
        assert_eq!((v.limit, v.tight), (13, true));
        assert!(check_bound(BoundName::Thm3prime, 2, 0, 0).is_err());
    }
}
