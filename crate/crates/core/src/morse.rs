//! Morse complexes on the cut surface and their symmetric products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2homology::{assert_d_squared_zero, ChainComplexF2, GradeMode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub name: String,
    pub index: u8,
    pub numerator: i64,
    pub component: i64,
}

impl CriticalPoint {
    pub fn new(name: &str, index: u8, numerator: i64, component: i64) -> Self {
        CriticalPoint { name: name.to_string(), index, numerator, component }
    }

    /// Index-one points are hyperbolic.
    pub fn is_hyperbolic(&self) -> bool {
        self.index == 1
    }
}

/// Critical points and the mod 2 Morse boundary as `(from, to)` names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseData {
    pub points: Vec<CriticalPoint>,
    pub boundary: Vec<(String, String)>,
}

impl MorseData {
    pub fn position(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    /// Boundary as index lists; assumes [`validate_morse`] passed.
    pub fn boundary_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.points.len()];
        for (a, b) in &self.boundary {
            if let (Some(i), Some(j)) = (self.position(a), self.position(b)) {
                out[i].push(j);
            }
        }
        out
    }

    /// A disc: minimum `e`, saddle `h`, maximum `m` with `∂m = h`.
    pub fn disc() -> Self {
        MorseData {
            points: vec![CriticalPoint::new("e", 0, 0, 0), CriticalPoint::new("h", 1, 0, 0), CriticalPoint::new("m", 2, 0, 0)],
            boundary: vec![("m".into(), "h".into())],
        }
    }
}

/// Every broken invariant, or `Ok` when there are none.
pub fn validate_morse(data: &MorseData) -> std::result::Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let mut seen = BTreeSet::new();
    for p in &data.points {
        if !seen.insert(p.name.as_str()) {
            errs.push(format!("point {} listed twice", p.name));
        }
        if p.index > 2 {
            errs.push(format!("point {} has index {}", p.name, p.index));
        }
    }
    let mut edges = BTreeSet::new();
    for (a, b) in &data.boundary {
        let (Some(i), Some(j)) = (data.position(a), data.position(b)) else {
            errs.push(format!("boundary {a} -> {b} names an unknown point"));
            continue;
        };
        if !edges.insert((i, j)) {
            errs.push(format!("boundary {a} -> {b} listed twice"));
        }
        let (p, q) = (&data.points[i], &data.points[j]);
        if p.index != q.index + 1 {
            errs.push(format!("boundary {a} -> {b} goes from index {} to {}", p.index, q.index));
        }
        if p.numerator != q.numerator {
            errs.push(format!("boundary {a} -> {b} changes numerator {} to {}", p.numerator, q.numerator));
        }
    }
    if errs.is_empty() {
        let lists = data.boundary_lists();
        for (i, out) in lists.iter().enumerate() {
            let mut twice: BTreeMap<usize, usize> = BTreeMap::new();
            for &j in out {
                for &k in &lists[j] {
                    *twice.entry(k).or_insert(0) += 1;
                }
            }
            for (k, c) in twice {
                if c % 2 == 1 {
                    errs.push(format!("boundary squared is nonzero from {} to {}", data.points[i].name, data.points[k].name));
                }
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// A multiset of critical points, as counts in point order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductGenerator(pub Vec<u32>);

impl ProductGenerator {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn text(&self, data: &MorseData) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(&data.points)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, p)| if c == 1 { p.name.clone() } else { format!("{}^{c}", p.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn hyperbolic_count(&self, data: &MorseData) -> u32 {
        self.0.iter().zip(&data.points).filter(|(_, p)| p.is_hyperbolic()).map(|(&c, _)| c).sum()
    }

    pub fn numerator(&self, data: &MorseData) -> i64 {
        self.0.iter().zip(&data.points).map(|(&c, p)| c as i64 * p.numerator).sum()
    }
}

/// All admissible multisets of the given size over `hyperbolic.len()` points.
pub fn admissible_multisets(hyperbolic: &[bool], degree: u32) -> Vec<ProductGenerator> {
    fn go(h: &[bool], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ProductGenerator>) {
        if i == h.len() {
            if left == 0 {
                out.push(ProductGenerator(cur.clone()));
            }
            return;
        }
        let top = if h[i] { left.min(1) } else { left };
        for c in 0..=top {
            cur.push(c);
            go(h, i + 1, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(hyperbolic, 0, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Replaces one `from` by one `to`; `None` if that repeats a hyperbolic point.
pub(crate) fn replace_one(g: &ProductGenerator, from: usize, to: usize, hyperbolic: &[bool]) -> Option<ProductGenerator> {
    let mut c = g.0.clone();
    if c[from] == 0 {
        return None;
    }
    c[from] -= 1;
    c[to] += 1;
    if hyperbolic[to] && c[to] > 1 {
        return None;
    }
    Some(ProductGenerator(c))
}

/// The degree-`d` product complex with its generators.
#[derive(Clone, Debug)]
pub struct MorseProduct {
    pub generators: Vec<ProductGenerator>,
    pub complex: ChainComplexF2,
}

/// Generators are admissible degree-`d` multisets; the differential moves
/// one factor along one Morse boundary arrow, whatever its multiplicity,
/// and drops inadmissible results. Graded by hyperbolic count mod 2.
pub fn product_complex(data: &MorseData, d: u32) -> Result<MorseProduct> {
    validate_morse(data).map_err(|e| Error::InvalidParameters(e.join("; ")))?;
    let hyperbolic: Vec<bool> = data.points.iter().map(CriticalPoint::is_hyperbolic).collect();
    let generators = admissible_multisets(&hyperbolic, d);
    let index: HashMap<&ProductGenerator, usize> = generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let lists = data.boundary_lists();
    let mut edges = Vec::new();
    for (s, g) in generators.iter().enumerate() {
        for (p, targets) in lists.iter().enumerate() {
            for &q in targets {
                if let Some(t) = replace_one(g, p, q, &hyperbolic) {
                    edges.push((s, index[&t]));
                }
            }
        }
    }
    let labels = generators.iter().map(|g| g.text(data)).collect();
    let grades = generators.iter().map(|g| (g.hyperbolic_count(data) % 2) as i64).collect();
    let complex = ChainComplexF2::from_edges(labels, grades, GradeMode::Parity, &edges)?;
    if let Some((s, t)) = assert_d_squared_zero(&complex) {
        return Err(Error::DifferentialNotSquareZero(complex.labels()[s].clone(), complex.labels()[t].clone()));
    }
    Ok(MorseProduct { generators, complex })
}

impl fmt::Display for MorseData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.points.iter().map(|p| p.name.as_str()).collect();
        write!(f, "{{{}", names.join(","))?;
        for (a, b) in &self.boundary {
            write!(f, " | d{a}={b}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2homology::betti;
    use proptest::prelude::*;

    fn total(c: &ChainComplexF2) -> usize {
        betti(c).unwrap().values().sum()
    }

    #[test]
    fn disc_products() {
        let disc = MorseData::disc();
        assert!(validate_morse(&disc).is_ok());
        let one = product_complex(&disc, 1).unwrap();
        assert_eq!(one.complex.len(), 3);
        assert_eq!(one.complex.edges().len(), 1);
        assert_eq!(total(&one.complex), 1);
        let two = product_complex(&disc, 2).unwrap();
        let text: Vec<String> = two.generators.iter().map(|g| g.text(&disc)).collect();
        assert_eq!(text.len(), 5);
        let at = |s: &str| text.iter().position(|t| t == s).unwrap();
        assert_eq!(two.complex.boundary_of(at("m^2")), &[at("h m")]);
        assert_eq!(two.complex.boundary_of(at("e m")), &[at("e h")]);
        assert!(two.complex.boundary_of(at("h m")).is_empty());
        assert_eq!(total(&two.complex), 1);
        let zero = product_complex(&disc, 0).unwrap();
        assert_eq!(zero.generators, vec![ProductGenerator(vec![0, 0, 0])]);
        assert_eq!(total(&zero.complex), 1);
    }

    #[test]
    fn invalid_data() {
        let mut bad = MorseData::disc();
        bad.boundary.push(("e".into(), "h".into()));
        let errs = validate_morse(&bad).unwrap_err();
        assert!(errs.iter().any(|e| e.contains("index 0 to 1")), "{errs:?}");
        let mut unknown = MorseData::disc();
        unknown.boundary.push(("m".into(), "z".into()));
        assert!(validate_morse(&unknown).is_err());
        let mut tagged = MorseData::disc();
        tagged.points[1].numerator = 1;
        assert!(validate_morse(&tagged).is_err());
        // Two index-2 points into two saddles into one minimum, unbalanced.
        let square = MorseData {
            points: vec![
                CriticalPoint::new("e", 0, 0, 0),
                CriticalPoint::new("a", 1, 0, 0),
                CriticalPoint::new("b", 1, 0, 0),
                CriticalPoint::new("m", 2, 0, 0),
            ],
            boundary: vec![
                ("m".into(), "a".into()),
                ("a".into(), "e".into()),
                ("b".into(), "e".into()),
            ],
        };
        assert!(validate_morse(&square).unwrap_err()[0].contains("squared"));
        assert!(product_complex(&square, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let disc = MorseData::disc();
        let text = serde_json::to_string(&disc).unwrap();
        assert!(text.contains(r#""boundary":[["m","h"]]"#), "{text}");
        let back: MorseData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, disc);
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    // Random valid data: points by index, arrows kept only when they leave
    // the boundary square-zero.
    fn random_data() -> impl Strategy<Value = MorseData> {
        (1usize..3, 0usize..3, 0usize..3, prop::collection::vec(any::<bool>(), 16)).prop_map(|(n0, n1, n2, bits)| {
            let mut points = Vec::new();
            for (k, n) in [n0, n1, n2].into_iter().enumerate() {
                for i in 0..n {
                    points.push(CriticalPoint::new(&format!("c{k}{i}"), k as u8, 0, 0));
                }
            }
            let mut data = MorseData { points, boundary: Vec::new() };
            let mut bit = bits.into_iter().cycle();
            let pts = data.points.clone();
            for p in &pts {
                for q in &pts {
                    if p.index == q.index + 1 && bit.next().unwrap() {
                        data.boundary.push((p.name.clone(), q.name.clone()));
                        if validate_morse(&data).is_err() {
                            data.boundary.pop();
                        }
                    }
                }
            }
            data
        })
    }

    proptest! {
        #[test]
        fn products_square_to_zero(data in random_data(), d in 0u32..4) {
            let prod = product_complex(&data, d).unwrap();
            for (s, t) in prod.complex.edges() {
                prop_assert_eq!(prod.generators[s].numerator(&data), prod.generators[t].numerator(&data));
                prop_assert_eq!(prod.generators[s].degree(), d);
            }
        }

        #[test]
        fn no_boundary_means_all_survive(n0 in 0usize..3, n1 in 0usize..3, n2 in 0usize..3, d in 0u32..4) {
            let mut points = Vec::new();
            for (k, n) in [n0, n1, n2].into_iter().enumerate() {
                for i in 0..n {
                    points.push(CriticalPoint::new(&format!("c{k}{i}"), k as u8, 0, 0));
                }
            }
            let data = MorseData { points, boundary: Vec::new() };
            let prod = product_complex(&data, d).unwrap();
            prop_assert_eq!(total(&prod.complex), prod.generators.len());
            // Elliptic points repeat freely, hyperbolic ones at most once.
            let e = (n0 + n2) as u64;
            let want: u64 = (0..=d as u64)
                .map(|k| binom(n1 as u64, k) * if e == 0 { u64::from(k == d as u64) } else { binom(e + d as u64 - k - 1, d as u64 - k) })
                .sum();
            prop_assert_eq!(prod.generators.len() as u64, want);
        }
    }
}
