use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::Error;

/// Reduced rational with positive denominator.
pub type Frac = Ratio<i64>;

pub fn frac(p: i64, q: i64) -> Frac {
    Frac::new(p, q)
}

/// A rational plus an integer multiple of a positive infinitesimal.
///
/// Interval endpoints like `3/2-eps` live here, and so does every linear
/// expression built from them. Ordering compares the real part first and
/// the infinitesimal coefficient second, which is exact for anything linear
/// in the infinitesimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Frac,
    pub eps: i64,
}

impl Bound {
    pub fn exact(value: Frac) -> Self {
        Bound { value, eps: 0 }
    }

    pub fn int(n: i64) -> Self {
        Bound::exact(Frac::from_integer(n))
    }

    pub fn plus_eps(value: Frac) -> Self {
        Bound { value, eps: 1 }
    }

    pub fn minus_eps(value: Frac) -> Self {
        Bound { value, eps: -1 }
    }

    /// The sign of the infinitesimal part.
    pub fn shift(&self) -> i64 {
        self.eps.signum()
    }

    pub fn is_exact(&self) -> bool {
        self.eps == 0
    }

    pub fn is_nonneg(&self) -> bool {
        *self >= Bound::int(0)
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.eps.cmp(&other.eps))
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Frac> for Bound {
    fn from(v: Frac) -> Self {
        Bound::exact(v)
    }
}

impl From<i64> for Bound {
    fn from(n: i64) -> Self {
        Bound::int(n)
    }
}

impl Add for Bound {
    type Output = Bound;
    fn add(self, o: Bound) -> Bound {
        Bound { value: self.value + o.value, eps: self.eps + o.eps }
    }
}

impl Sub for Bound {
    type Output = Bound;
    fn sub(self, o: Bound) -> Bound {
        Bound { value: self.value - o.value, eps: self.eps - o.eps }
    }
}

impl Neg for Bound {
    type Output = Bound;
    fn neg(self) -> Bound {
        Bound { value: -self.value, eps: -self.eps }
    }
}

impl Mul<i64> for Bound {
    type Output = Bound;
    fn mul(self, k: i64) -> Bound {
        Bound { value: self.value * k, eps: self.eps * k }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        match self.eps.cmp(&0) {
            Ordering::Greater if self.eps == 1 => write!(f, "+eps"),
            Ordering::Greater => write!(f, "+{}eps", self.eps),
            Ordering::Less if self.eps == -1 => write!(f, "-eps"),
            Ordering::Less => write!(f, "{}eps", self.eps),
            Ordering::Equal => Ok(()),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    /// `<int>[/<int>][+eps|-eps]`
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(s.to_string(), why.to_string());
        let t = s.trim();
        let (body, eps) = if let Some(b) = t.strip_suffix("+eps") {
            (b, 1)
        } else if let Some(b) = t.strip_suffix("-eps") {
            (b, -1)
        } else {
            (t, 0)
        };
        let value = parse_frac(body).map_err(|_| bad("expected <int>[/<int>][+eps|-eps]"))?;
        Ok(Bound { value, eps })
    }
}

pub fn parse_frac(s: &str) -> Result<Frac, Error> {
    let bad = || Error::Parse(s.to_string(), "expected <int>[/<int>]".to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q <= 0 {
        return Err(bad());
    }
    Ok(Frac::new(p, q))
}

/// Floor of a rational.
pub fn floor(x: Frac) -> i64 {
    x.numer().div_floor(x.denom())
}

/// Ceiling of a rational.
pub fn ceil(x: Frac) -> i64 {
    -floor(-x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["3/2-eps", "0+eps", "2", "-1/4-eps", "7/5"] {
            let b: Bound = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        assert_eq!("4/2".parse::<Bound>().unwrap(), Bound::int(2));
        assert!("1/0".parse::<Bound>().is_err());
        assert!("eps".parse::<Bound>().is_err());
        assert!("1+e".parse::<Bound>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = Bound::minus_eps(frac(1, 2));
        let b = Bound::exact(frac(1, 2));
        let c = Bound::plus_eps(frac(1, 2));
        assert!(a < b && b < c);
        assert!(c < Bound::exact(frac(501, 1000)));
    }

    #[test]
    fn linear_arithmetic() {
        let x = Bound::plus_eps(frac(1, 3));
        let y = Bound::int(2) - x * 3;
        assert_eq!(y, Bound { value: frac(1, 1), eps: -3 });
        assert_eq!(floor(frac(-1, 2)), -1);
        assert_eq!(ceil(frac(-1, 2)), 0);
        assert_eq!(ceil(frac(4, 2)), 2);
    }
}
