use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::bound::{ceil, floor, Frac};
use crate::error::{Error, Result};

/// Integer vector `(p, q)`; orbit vectors have `q >= 1` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub p: i64,
    pub q: i64,
}

impl Vec2 {
    pub const fn new(p: i64, q: i64) -> Self {
        Vec2 { p, q }
    }

    pub fn is_primitive(&self) -> bool {
        self.q >= 1 && self.p.gcd(&self.q) == 1
    }

    pub fn slope(&self) -> Frac {
        Frac::new(self.p, self.q)
    }

    /// Compares slopes of two vectors with positive `q`.
    pub fn cmp_slope(&self, other: &Vec2) -> Ordering {
        (self.p * other.q).cmp(&(other.p * self.q))
    }

    pub fn det(&self, other: &Vec2) -> i64 {
        self.p * other.q - other.p * self.q
    }

    pub fn scale(&self, k: i64) -> Vec2 {
        Vec2::new(self.p * k, self.q * k)
    }

    /// Splits a vector with `q >= 1` into `(primitive, multiplicity)`.
    pub fn primitive_part(&self) -> (Vec2, u32) {
        let g = self.p.gcd(&self.q);
        (Vec2::new(self.p / g, self.q / g), g as u32)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.p + o.p, self.q + o.q)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.p - o.p, self.q - o.q)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A convex lattice path from the origin: primitive edges with
/// multiplicities, slopes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConvexPath {
    edges: Vec<(Vec2, u32)>,
}

impl ConvexPath {
    /// Sorts by decreasing slope and merges equal slopes.
    pub fn from_edges<I: IntoIterator<Item = (Vec2, u32)>>(edges: I) -> Result<Self> {
        let mut v: Vec<(Vec2, u32)> = Vec::new();
        for (e, m) in edges {
            if !e.is_primitive() {
                return Err(Error::NonPrimitiveVector(e.p, e.q));
            }
            if m > 0 {
                v.push((e, m));
            }
        }
        v.sort_by(|a, b| b.0.cmp_slope(&a.0));
        let mut merged: Vec<(Vec2, u32)> = Vec::with_capacity(v.len());
        for (e, m) in v {
            match merged.last_mut() {
                Some(last) if last.0 == e => last.1 += m,
                _ => merged.push((e, m)),
            }
        }
        Ok(ConvexPath { edges: merged })
    }

    pub fn edges(&self) -> &[(Vec2, u32)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self) -> Vec2 {
        self.edges
            .iter()
            .fold(Vec2::new(0, 0), |acc, (e, m)| acc + e.scale(*m as i64))
    }

    /// Corner points, starting at the origin.
    pub fn vertices(&self) -> Vec<Vec2> {
        let mut out = vec![Vec2::new(0, 0)];
        let mut cur = Vec2::new(0, 0);
        for (e, m) in &self.edges {
            cur = cur + e.scale(*m as i64);
            out.push(cur);
        }
        out
    }

    /// Every lattice point on the path, endpoints included.
    pub fn lattice_points(&self) -> Vec<Vec2> {
        let mut out = vec![Vec2::new(0, 0)];
        let mut cur = Vec2::new(0, 0);
        for (e, m) in &self.edges {
            for _ in 0..*m {
                cur = cur + *e;
                out.push(cur);
            }
        }
        out
    }

    /// `∫ p dq` along the path: sum of `b (p0 + a/2)` over edges `(a, b)`.
    pub fn area_pdq(&self) -> Frac {
        let mut total = Frac::from_integer(0);
        let mut p0 = 0i64;
        for (e, m) in &self.edges {
            let a = e.p * *m as i64;
            let b = e.q * *m as i64;
            total += Frac::from_integer(b * p0) + Frac::new(a * b, 2);
            p0 += a;
        }
        total
    }

    /// The `p` coordinate at height `q`, for `0 <= q <= end().q`.
    pub fn p_at(&self, q: i64) -> Frac {
        let mut cur = Vec2::new(0, 0);
        for (e, m) in &self.edges {
            let next = cur + e.scale(*m as i64);
            if q <= next.q {
                return Frac::from_integer(cur.p) + Frac::new(e.p * (q - cur.q), e.q);
            }
            cur = next;
        }
        Frac::from_integer(cur.p)
    }
}

fn same_end(a: &ConvexPath, b: &ConvexPath) -> Result<Vec2> {
    let end = a.end();
    if end != b.end() {
        return Err(Error::EndpointMismatch);
    }
    Ok(end)
}

/// Lattice points in the open region between two paths with common ends.
pub fn lattice_points_strictly_between(left: &ConvexPath, right: &ConvexPath) -> Result<Vec<Vec2>> {
    let end = same_end(left, right)?;
    let mut out = Vec::new();
    for q in 1..end.q {
        let (a, b) = (left.p_at(q), right.p_at(q));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for p in floor(lo) + 1..ceil(hi) {
            out.push(Vec2::new(p, q));
        }
    }
    Ok(out)
}

/// True when `a` is somewhere strictly to the right of `b`.
pub fn crosses_right(a: &ConvexPath, b: &ConvexPath) -> Result<bool> {
    same_end(a, b)?;
    let heights = a.vertices().into_iter().chain(b.vertices()).map(|v| v.q);
    Ok(heights.into_iter().any(|q| a.p_at(q) > b.p_at(q)))
}

/// True when `a` is strictly left of `b` everywhere except the two ends.
pub fn strictly_left_inside(a: &ConvexPath, b: &ConvexPath) -> Result<bool> {
    let end = same_end(a, b)?;
    if end.q < 2 {
        return Ok(false);
    }
    Ok((1..end.q).all(|q| a.p_at(q) < b.p_at(q)))
}
