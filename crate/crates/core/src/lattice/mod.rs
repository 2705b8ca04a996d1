//! Exact lattice geometry: bounds with infinitesimal shifts, Farey slopes,
//! convex paths and their areas, the hull path of a parallelogram, and the
//! unimodular action on slopes.

mod bound;
mod path;

pub use bound::{ceil, floor, frac, parse_frac, Bound, Frac};
pub use path::{
    crosses_right, lattice_points_strictly_between, strictly_left_inside, ConvexPath, Vec2,
};

use crate::error::{Error, Result};

fn check_interval(x1: Bound, x2: Bound) -> Result<()> {
    if x1 >= x2 {
        return Err(Error::EmptyInterval(x1.to_string(), x2.to_string()));
    }
    Ok(())
}

/// Reduced fractions `p/q` with `q <= max_q` and `x1 < p/q < x2`, ascending.
///
/// Walks the Farey sequence of order `max_q` with the next-term recurrence,
/// starting from an integer below the interval.
pub fn farey_in_interval(x1: Bound, x2: Bound, max_q: i64) -> Result<Vec<Frac>> {
    check_interval(x1, x2)?;
    if max_q < 1 {
        return Ok(Vec::new());
    }
    for x in [x1, x2] {
        if x.is_exact() && *x.value.denom() <= max_q {
            return Err(Error::EndpointCollision(x.to_string(), max_q));
        }
    }
    let start = floor(x1.value) - 1;
    let (mut a, mut b) = (start, 1i64);
    let (mut c, mut d) = (start * max_q + 1, max_q);
    let mut out = Vec::new();
    if Bound::int(start) > x1 && Bound::int(start) < x2 {
        out.push(Frac::from_integer(start));
    }
    loop {
        let f = Bound::exact(Frac::new(c, d));
        if f >= x2 {
            break;
        }
        if f > x1 {
            out.push(f.value);
        }
        let k = (max_q + b) / d;
        let (e, g) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = e;
        d = g;
    }
    Ok(out)
}

/// Primitive vectors of the fractions from [`farey_in_interval`], by
/// decreasing slope.
pub fn farey_vectors_desc(x1: Bound, x2: Bound, max_q: i64) -> Result<Vec<Vec2>> {
    let mut v: Vec<Vec2> = farey_in_interval(x1, x2, max_q)?
        .into_iter()
        .map(|f| Vec2::new(*f.numer(), *f.denom()))
        .collect();
    v.reverse();
    Ok(v)
}

/// Right boundary chain of the hull of lattice points in the parallelogram
/// spanned by slopes `x1`, `x2` with far corner `(P, Q)`.
pub fn e_path(x1: Bound, x2: Bound, p_total: i64, q_total: i64) -> Result<ConvexPath> {
    check_interval(x1, x2)?;
    let slope_ok = q_total >= 1 && {
        let s = Bound::exact(Frac::new(p_total, q_total));
        x1 < s && s < x2
    };
    if !slope_ok {
        return Err(Error::SlopeOutsideInterval(
            format!("{p_total}/{q_total}"),
            x1.to_string(),
            x2.to_string(),
        ));
    }
    let pb = Bound::int(p_total);
    let u_max = pb - x1 * q_total;
    let v_max = x2 * q_total - pb;
    // For each height keep only the rightmost member of Z.
    let mut column: Vec<Vec2> = Vec::with_capacity(q_total as usize + 1);
    for q in 0..=q_total {
        let hi = floor(x2.value.max(x1.value) * q).max(p_total) + 1;
        let lo = ceil(x1.value.min(x2.value) * q).min(p_total) - 1;
        let best = (lo..=hi).rev().find(|&p| {
            let u = Bound::int(p) - x1 * q;
            let v = x2 * q - Bound::int(p);
            u.is_nonneg() && u <= u_max && v.is_nonneg() && v <= v_max
        });
        if let Some(p) = best {
            column.push(Vec2::new(p, q));
        }
    }
    // Monotone chain, keeping right turns only (p as a concave function of q).
    let mut hull: Vec<Vec2> = Vec::new();
    for pt in column {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            if (a - o).det(&(pt - o)) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    ConvexPath::from_edges(hull.windows(2).map(|w| (w[1] - w[0]).primitive_part()))
}

/// Integer matrix `[[a, b], [c, d]]` with determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::NotUnimodular([a, b, c, d]));
        }
        Ok(Sl2 { a, b, c, d })
    }

    fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.p + self.b * v.q, self.c * v.p + self.d * v.q)
    }

    pub fn apply_frac(&self, x: Frac) -> Result<Frac> {
        let den = x * self.c + self.d;
        if den <= Frac::from_integer(0) {
            return Err(Error::OutsideDomain(self.entries(), x.to_string()));
        }
        Ok((x * self.a + self.b) / den)
    }

    /// The derivative `1/(cx+d)^2` is positive, so the shift keeps its sign.
    pub fn apply_bound(&self, x: Bound) -> Result<Bound> {
        let value = self
            .apply_frac(x.value)
            .map_err(|_| Error::OutsideDomain(self.entries(), x.to_string()))?;
        Ok(Bound { value, eps: x.shift() })
    }
}
