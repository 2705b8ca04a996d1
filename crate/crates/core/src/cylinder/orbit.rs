use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{parse_frac, ConvexPath, Frac, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Elliptic,
    Hyperbolic,
}

/// All orbits of one slope inside an orbit set: `e^e` and possibly `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub v: Vec2,
    pub e: u32,
    pub h: bool,
}

impl Orbit {
    pub fn count(&self) -> u32 {
        self.e + self.h as u32
    }
}

/// Admissible multiset of orbits, kept sorted by decreasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrbitSet {
    orbits: Vec<Orbit>,
}

fn factor_cmp(a: &(Vec2, Label), b: &(Vec2, Label)) -> Ordering {
    b.0.cmp_slope(&a.0).then(a.1.cmp(&b.1))
}

impl OrbitSet {
    pub fn empty() -> Self {
        OrbitSet::default()
    }

    /// From `(vector, label)` factors in any order.
    pub fn from_factors<I: IntoIterator<Item = (Vec2, Label)>>(factors: I) -> Result<Self> {
        let mut orbits: Vec<Orbit> = Vec::new();
        for (v, label) in factors {
            if !v.is_primitive() {
                return Err(Error::NonPrimitiveVector(v.p, v.q));
            }
            let slot = match orbits.iter_mut().find(|o| o.v == v) {
                Some(o) => o,
                None => {
                    orbits.push(Orbit { v, e: 0, h: false });
                    orbits.last_mut().unwrap()
                }
            };
            match label {
                Label::Elliptic => slot.e += 1,
                Label::Hyperbolic if slot.h => {
                    return Err(Error::RepeatedHyperbolic(show_slope(v)));
                }
                Label::Hyperbolic => slot.h = true,
            }
        }
        orbits.sort_by(|a, b| b.v.cmp_slope(&a.v));
        Ok(OrbitSet { orbits })
    }

    /// From per-slope records; zero records are dropped.
    pub fn from_orbits<I: IntoIterator<Item = Orbit>>(orbits: I) -> Result<Self> {
        let mut factors = Vec::new();
        for o in orbits {
            factors.extend(std::iter::repeat((o.v, Label::Elliptic)).take(o.e as usize));
            if o.h {
                factors.push((o.v, Label::Hyperbolic));
            }
        }
        Self::from_factors(factors)
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Factors with multiplicity, slope descending, elliptic first.
    pub fn factors(&self) -> Vec<(Vec2, Label)> {
        let mut out = Vec::new();
        for o in &self.orbits {
            out.extend(std::iter::repeat((o.v, Label::Elliptic)).take(o.e as usize));
            if o.h {
                out.push((o.v, Label::Hyperbolic));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.orbits.iter().map(|o| o.count() as usize).sum()
    }

    pub fn total(&self) -> Vec2 {
        self.orbits
            .iter()
            .fold(Vec2::new(0, 0), |acc, o| acc + o.v.scale(o.count() as i64))
    }

    pub fn degree(&self) -> i64 {
        self.total().q
    }

    pub fn elliptic_count(&self) -> i64 {
        self.orbits.iter().map(|o| o.e as i64).sum()
    }

    pub fn hyperbolic_count(&self) -> i64 {
        self.orbits.iter().filter(|o| o.h).count() as i64
    }

    /// Number of factors (either label) with vector `v`.
    pub fn exponent(&self, v: Vec2) -> u32 {
        self.orbits.iter().find(|o| o.v == v).map_or(0, Orbit::count)
    }

    pub fn path(&self) -> ConvexPath {
        ConvexPath::from_edges(self.orbits.iter().map(|o| (o.v, o.count())))
            .expect("orbit vectors are primitive")
    }

    pub fn max_slope(&self) -> Option<Vec2> {
        self.orbits.first().map(|o| o.v)
    }

    pub fn min_slope(&self) -> Option<Vec2> {
        self.orbits.last().map(|o| o.v)
    }

    /// `self ⊆ other` as multisets.
    pub fn is_subset(&self, other: &OrbitSet) -> bool {
        self.orbits.iter().all(|o| match other.orbits.iter().find(|x| x.v == o.v) {
            Some(x) => o.e <= x.e && (!o.h || x.h),
            None => false,
        })
    }

    /// Multiset difference, if `other ⊆ self`.
    pub fn minus(&self, other: &OrbitSet) -> Option<OrbitSet> {
        if !other.is_subset(self) {
            return None;
        }
        let orbits = self
            .orbits
            .iter()
            .filter_map(|o| {
                let (e, h) = match other.orbits.iter().find(|x| x.v == o.v) {
                    Some(x) => (o.e - x.e, o.h && !x.h),
                    None => (o.e, o.h),
                };
                (e > 0 || h).then_some(Orbit { v: o.v, e, h })
            })
            .collect();
        Some(OrbitSet { orbits })
    }

    /// Multiset sum, if the result is admissible.
    pub fn union(&self, other: &OrbitSet) -> Option<OrbitSet> {
        let mut f = self.factors();
        f.extend(other.factors());
        OrbitSet::from_factors(f).ok()
    }

    /// Distinct sub-multisets with `k` factors.
    pub fn sub_multisets(&self, k: usize) -> Vec<OrbitSet> {
        fn go(orbits: &[Orbit], k: usize, cur: &mut Vec<Orbit>, out: &mut Vec<OrbitSet>) {
            if k == 0 {
                out.push(OrbitSet { orbits: cur.clone() });
                return;
            }
            let Some((first, rest)) = orbits.split_first() else { return };
            go(rest, k, cur, out);
            for h in [false, true] {
                if h && !first.h {
                    continue;
                }
                for e in 0..=first.e {
                    let n = e as usize + h as usize;
                    if n == 0 || n > k {
                        continue;
                    }
                    cur.push(Orbit { v: first.v, e, h });
                    go(rest, k - n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.orbits, k, &mut Vec::new(), &mut out);
        out
    }

    /// Applies a map to every vector; fails if the result is not admissible.
    pub fn map_vectors<F: Fn(Vec2) -> Vec2>(&self, f: F) -> Result<OrbitSet> {
        OrbitSet::from_factors(self.factors().into_iter().map(|(v, l)| (f(v), l)))
    }
}

impl Ord for OrbitSet {
    /// Lexicographic on [`OrbitSet::factors`].
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.factors(), other.factors());
        for (x, y) in a.iter().zip(&b) {
            match factor_cmp(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for OrbitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn show_slope(v: Vec2) -> String {
    Frac::new(v.p, v.q).to_string()
}

impl fmt::Display for OrbitSet {
    /// `e[4/3] e[1] e[0]^2 e[-1/5]`; the empty set prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbits.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for o in &self.orbits {
            let s = show_slope(o.v);
            if o.e > 0 {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "e[{s}]")?;
                if o.e > 1 {
                    write!(f, "^{}", o.e)?;
                }
            }
            if o.h {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "h[{s}]")?;
            }
        }
        Ok(())
    }
}

/// Parses one `e[p/q]^m` or `h[p/q]` token into `(vector, label, count)`.
pub(crate) fn parse_token(tok: &str) -> Result<(Vec2, Label, u32)> {
    let bad = |why: &str| Error::Parse(tok.to_string(), why.to_string());
    let label = match tok.chars().next() {
        Some('e') => Label::Elliptic,
        Some('h') => Label::Hyperbolic,
        _ => return Err(bad("expected e[..] or h[..]")),
    };
    let rest = &tok[1..];
    let inner_end = rest.find(']').ok_or_else(|| bad("missing ]"))?;
    if !rest.starts_with('[') {
        return Err(bad("missing ["));
    }
    let slope = parse_frac(&rest[1..inner_end]).map_err(|_| bad("bad slope"))?;
    let tail = &rest[inner_end + 1..];
    let count = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')
            .and_then(|m| m.parse::<u32>().ok())
            .filter(|&m| m >= 1)
            .ok_or_else(|| bad("bad exponent"))?
    };
    Ok((Vec2::new(*slope.numer(), *slope.denom()), label, count))
}

impl FromStr for OrbitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(OrbitSet::empty());
        }
        let mut factors = Vec::new();
        for tok in t.split_whitespace() {
            let (v, label, m) = parse_token(tok)?;
            factors.extend(std::iter::repeat((v, label)).take(m as usize));
        }
        OrbitSet::from_factors(factors)
    }
}

/// Every orbit set over `vectors` (any order) with total denominator
/// `q_total`, and total numerator `p_target` when given. Sorted.
pub fn enumerate_orbit_sets(vectors: &[Vec2], q_total: i64, p_target: Option<i64>) -> Vec<OrbitSet> {
    let mut vs = vectors.to_vec();
    vs.sort_by(|a, b| b.cmp_slope(a));
    vs.dedup();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn feasible(vs: &[Vec2], rp: i64, rq: i64) -> bool {
        match (vs.first(), vs.last()) {
            _ if rq == 0 => rp == 0,
            (Some(hi), Some(lo)) => rp * hi.q <= hi.p * rq && lo.p * rq <= rp * lo.q,
            _ => false,
        }
    }
    fn go(vs: &[Vec2], rp: Option<i64>, rq: i64, cur: &mut Vec<Orbit>, out: &mut Vec<OrbitSet>) {
        if rq == 0 {
            if rp.map_or(true, |p| p == 0) {
                out.push(OrbitSet { orbits: cur.clone() });
            }
            return;
        }
        let Some((&v, rest)) = vs.split_first() else { return };
        if let Some(p) = rp {
            if !feasible(vs, p, rq) {
                return;
            }
        }
        go(rest, rp, rq, cur, out);
        let mut m = 1;
        while m * v.q <= rq {
            let np = rp.map(|p| p - m * v.p);
            for h in [false, true] {
                cur.push(Orbit { v, e: (m as u32) - h as u32, h });
                go(rest, np, rq - m * v.q, cur, out);
                cur.pop();
            }
            m += 1;
        }
    }
    go(&vs, p_target, q_total, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(s: &str) -> OrbitSet {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["e[4/3] e[1] e[0]^2 e[-1/5]", "e[1] h[1] h[2]", "1", "e[1/2]^3 h[1/2]"] {
            let o = os(s);
            assert_eq!(os(&o.to_string()), o);
        }
        assert_eq!(os("e[0]^2 e[-1/5] e[1] e[4/3]").to_string(), "e[4/3] e[1] e[0]^2 e[-1/5]");
        assert_eq!(os("e[1] h[2]").to_string(), "h[2] e[1]");
        assert!(matches!("h[1] h[1]".parse::<OrbitSet>(), Err(Error::RepeatedHyperbolic(_))));
        assert!("h[1]^2".parse::<OrbitSet>().is_err());
        assert!("x[1]".parse::<OrbitSet>().is_err());
        assert!("e[1".parse::<OrbitSet>().is_err());
    }

    #[test]
    fn multiset_operations() {
        let a = os("e[1]^2 h[1] e[0]");
        let b = os("e[1] h[1]");
        assert!(b.is_subset(&a));
        assert_eq!(a.minus(&b).unwrap(), os("e[1] e[0]"));
        assert_eq!(a.minus(&os("h[0]")), None);
        assert_eq!(b.union(&os("h[1]")), None);
        assert_eq!(a.total(), Vec2::new(3, 4));
        assert_eq!(a.elliptic_count(), 3);
        assert_eq!(a.hyperbolic_count(), 1);
        let subs = a.sub_multisets(2);
        let texts: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        assert_eq!(subs.len(), 4, "{texts:?}");
        for s in ["e[1]^2", "e[1] h[1]", "e[1] e[0]", "h[1] e[0]"] {
            assert!(subs.contains(&os(s)), "{s}");
        }
    }

    #[test]
    fn canonical_order() {
        let mut v = [os("e[1] e[2]"), os("h[3/2]"), os("e[3/2]"), os("h[1] h[2]")];
        v.sort();
        let t: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(t, vec!["e[2] e[1]", "h[2] h[1]", "e[3/2]", "h[3/2]"]);
    }

    #[test]
    fn enumerate_small() {
        let vs = [Vec2::new(2, 1), Vec2::new(3, 2), Vec2::new(1, 1)];
        let g = enumerate_orbit_sets(&vs, 2, Some(3));
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|x| x.total() == Vec2::new(3, 2)));
        let free = enumerate_orbit_sets(&[Vec2::new(0, 1), Vec2::new(1, 1)], 1, None);
        assert_eq!(free.len(), 4);
    }
}
