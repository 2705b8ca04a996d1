//! The `n`-fold twist on a torus, handled through lifts to the cylinder
//! over `(0 - eps, n + eps)`.
//!
//! Torus orbit sets are stored as cylinder [`OrbitSet`]s whose fixed
//! orbits sit at slope 0 (vector `(0, 1)`) and whose other slopes lie in
//! `(0, n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::checks::Check;
use crate::cylinder::{differential, relative_index, rounding_sources, CylinderProblem, Label, Orbit, OrbitSet};
use crate::error::{Error, Result};
use crate::f2homology::{
    assert_d_squared_zero, betti, spectral_pages, ChainComplexF2, FilteredComplexF2, GradeMode, Reducer,
    SpectralPages,
};
use crate::lattice::{frac, Bound, Vec2};

const FIXED: Vec2 = Vec2::new(0, 1);

/// Degree `d` and numerator class mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusSector {
    pub n: i64,
    pub d: i64,
    pub class: i64,
}

impl TorusSector {
    pub fn new(n: i64, d: i64, class: i64) -> Result<Self> {
        if n < 1 || d < 1 || !(0..n).contains(&class) {
            return Err(Error::InvalidParameters(format!("need n >= 1, d >= 1, 0 <= class < n; got n={n}, d={d}, class={class}")));
        }
        Ok(TorusSector { n, d, class })
    }
}

impl fmt::Display for TorusSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} [P]={}", self.n, self.d, self.class)
    }
}

/// Torus notation: the fixed orbits print as bare `e`, `h`.
pub struct TorusText<'a>(pub &'a OrbitSet);

impl fmt::Display for TorusText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut interior = Vec::new();
        for o in self.0.orbits() {
            if o.v == FIXED {
                match o.e {
                    0 => {}
                    1 => parts.push("e".to_string()),
                    m => parts.push(format!("e^{m}")),
                }
                if o.h {
                    parts.push("h".to_string());
                }
            } else {
                interior.push(*o);
            }
        }
        if !interior.is_empty() {
            parts.push(OrbitSet::from_orbits(interior).expect("sub-multiset").to_string());
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses torus notation: `e`, `e^k`, `h` and cylinder tokens.
pub fn parse_torus(s: &str) -> Result<OrbitSet> {
    let mut rest = Vec::new();
    let mut fixed = Vec::new();
    for tok in s.split_whitespace() {
        match tok {
            "e" => fixed.push((FIXED, Label::Elliptic)),
            "h" => fixed.push((FIXED, Label::Hyperbolic)),
            _ if tok.starts_with("e^") => {
                let m: usize = tok[2..].parse().map_err(|_| Error::Parse(tok.into(), "bad exponent".into()))?;
                fixed.extend(std::iter::repeat((FIXED, Label::Elliptic)).take(m));
            }
            _ => rest.push(tok),
        }
    }
    let interior: OrbitSet = rest.join(" ").parse()?;
    interior
        .union(&OrbitSet::from_factors(fixed)?)
        .ok_or_else(|| Error::RepeatedHyperbolic(s.to_string()))
}

fn fixed_count(a: &OrbitSet) -> i64 {
    a.exponent(FIXED) as i64
}

fn interior_numerator(a: &OrbitSet) -> i64 {
    a.total().p
}

/// Every torus generator in the sector, sorted.
pub fn enumerate_torus(sector: &TorusSector) -> Vec<OrbitSet> {
    let n = sector.n;
    let mut vectors = vec![FIXED];
    for q in 1..=sector.d {
        for p in 1..n * q {
            let v = Vec2::new(p, q);
            if v.is_primitive() {
                vectors.push(v);
            }
        }
    }
    crate::cylinder::enumerate_orbit_sets(&vectors, sector.d, None)
        .into_iter()
        .filter(|a| interior_numerator(a).rem_euclid(n) == sector.class)
        .collect()
}

/// The wrapping correction: a floor sum over factors with multiplicity.
pub fn eta_tilde(a: &OrbitSet, n: i64) -> i64 {
    a.orbits()
        .iter()
        .map(|o| {
            let (p, q) = (o.v.p, o.v.q);
            let f = p.div_euclid(n * q);
            let per = -f * p + n * q * f * (f + 1) / 2;
            per * o.count() as i64
        })
        .sum()
}

/// Sends every slope into `[0, n)`, the fixed orbits to slope 0.
pub fn project(a: &OrbitSet, n: i64) -> Result<OrbitSet> {
    a.map_vectors(|v| Vec2::new(v.p - n * v.q * v.p.div_euclid(n * v.q), v.q))
}

/// All ways of moving the fixed orbits of `a` to slopes `n * s`, `s` in `shifts`.
pub fn lifts(a: &OrbitSet, n: i64, shifts: &[i64]) -> Vec<OrbitSet> {
    let fixed = a.orbits().iter().find(|o| o.v == FIXED).copied();
    let interior: Vec<Orbit> = a.orbits().iter().filter(|o| o.v != FIXED).copied().collect();
    let Some(fixed) = fixed else { return vec![a.clone()] };
    let mut out = Vec::new();
    // Distribute the elliptic count over the shifts, then place h.
    fn spread(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for take in 0..=left {
            cur.push(take);
            spread(k - 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut spreads = Vec::new();
    spread(shifts.len(), fixed.e, &mut Vec::new(), &mut spreads);
    let h_spots: Vec<Option<usize>> = if fixed.h { (0..shifts.len()).map(Some).collect() } else { vec![None] };
    for es in &spreads {
        for &hs in &h_spots {
            let mut orbits = interior.clone();
            for (i, &s) in shifts.iter().enumerate() {
                let h = hs == Some(i);
                if es[i] > 0 || h {
                    orbits.push(Orbit { v: Vec2::new(n * s, 1), e: es[i], h });
                }
            }
            out.push(OrbitSet::from_orbits(orbits).expect("distinct shifts"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every value of the lifted index formula over lift pairs with equal totals.
pub fn i0_values(a: &OrbitSet, b: &OrbitSet, n: i64, shifts: &[i64]) -> Vec<i64> {
    let d = a.total().q;
    let lb = lifts(b, n, shifts);
    let mut out = Vec::new();
    for x in lifts(a, n, shifts) {
        for y in lb.iter().filter(|y| y.total() == x.total()) {
            let i = relative_index(&x, y).expect("equal totals");
            out.push(i - 2 * d * (eta_tilde(&x, n) - eta_tilde(y, n)));
        }
    }
    out
}

fn narrow_i0(a: &OrbitSet, b: &OrbitSet, n: i64) -> Option<i64> {
    let v = i0_values(a, b, n, &[0, 1]);
    let first = *v.first()?;
    assert!(v.iter().all(|&x| x == first), "lift-dependent index between {a} and {b}: {v:?}");
    Some(first)
}

/// `I0(a, b)` from lifts to `[0, n]`. When no pair of such lifts has equal
/// totals, goes through [`hub`], which lifts against everything in its
/// sector.
pub fn i0_grading(a: &OrbitSet, b: &OrbitSet, n: i64) -> Result<i64> {
    let mismatch = || Error::NoCommonLiftTotal(TorusText(a).to_string(), TorusText(b).to_string());
    if let Some(i) = narrow_i0(a, b, n) {
        return Ok(i);
    }
    let (ta, tb) = (a.total(), b.total());
    if ta.q != tb.q || (ta.p - tb.p).rem_euclid(n) != 0 {
        return Err(mismatch());
    }
    let h = hub(&TorusSector { n, d: ta.q, class: ta.p.rem_euclid(n) });
    match (narrow_i0(a, &h, n), narrow_i0(b, &h, n)) {
        (Some(x), Some(y)) => Ok(x - y),
        _ => Err(mismatch()),
    }
}

/// A generator every other one in the sector lifts against: `e^(d-1) e_c`,
/// or `e^d` for class 0.
pub fn hub(sector: &TorusSector) -> OrbitSet {
    let mut f = vec![(FIXED, Label::Elliptic); (sector.d - 1) as usize];
    f.push((Vec2::new(sector.class, 1), Label::Elliptic));
    OrbitSet::from_factors(f).expect("elliptic only")
}

/// Corner lifts of `beta`: every `alpha` with how many lifted roundings
/// reach it (not reduced mod 2).
pub fn delta0_sources(beta: &OrbitSet, n: i64) -> BTreeMap<OrbitSet, usize> {
    let mut out = BTreeMap::new();
    for b_loc in beta.sub_multisets(2) {
        let gamma = beta.minus(&b_loc).expect("sub-multiset");
        for lifted in lifts(&b_loc, n, &[0, 1]) {
            let (Some(hi), Some(lo)) = (lifted.max_slope(), lifted.min_slope()) else { continue };
            let blocked = gamma
                .orbits()
                .iter()
                .any(|o| o.v != FIXED && o.v.cmp_slope(&hi).is_lt() && o.v.cmp_slope(&lo).is_gt());
            if blocked {
                continue;
            }
            for (a_loc, _) in rounding_sources(&lifted) {
                let Ok(down) = project(&a_loc, n) else { continue };
                if let Some(alpha) = gamma.union(&down) {
                    *out.entry(alpha).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// The wrapping-zero complex of one sector, graded by `I0`.
#[derive(Clone, Debug)]
pub struct TorusComplex {
    pub sector: TorusSector,
    pub generators: Vec<OrbitSet>,
    pub complex: ChainComplexF2,
    pub base: Option<usize>,
    index: HashMap<OrbitSet, usize>,
}

impl TorusComplex {
    pub fn index_of(&self, a: &OrbitSet) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn label(&self, i: usize) -> String {
        TorusText(&self.generators[i]).to_string()
    }

    /// Indices of the generators with a fixed orbit, i.e. the first
    /// proper step `F_{d-1}` of the e/h filtration.
    pub fn with_fixed(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| fixed_count(&self.generators[i]) > 0).collect()
    }
}

pub fn delta0(sector: &TorusSector) -> Result<TorusComplex> {
    let n = sector.n;
    let generators = enumerate_torus(sector);
    let index: HashMap<OrbitSet, usize> = generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let edges: Vec<(usize, usize)> = generators
        .par_iter()
        .enumerate()
        .flat_map_iter(|(j, b)| {
            let index = &index;
            delta0_sources(b, n)
                .into_iter()
                .filter(|&(_, c)| c % 2 == 1)
                .map(move |(a, _)| (*index.get(&a).expect("sources stay in the sector"), j))
        })
        .collect();
    let base = if generators.is_empty() {
        None
    } else if sector.class == 0 {
        index.get(&hub(sector)).copied()
    } else {
        Some(0)
    };
    let grades: Vec<i64> = match base {
        Some(b) => {
            let h = hub(sector);
            let shift = i0_grading(&generators[b], &h, n)?;
            generators.iter().map(|g| Ok(i0_grading(g, &h, n)? - shift)).collect::<Result<_>>()?
        }
        None => Vec::new(),
    };
    let labels = generators.iter().map(|g| TorusText(g).to_string()).collect();
    let complex = ChainComplexF2::from_edges(labels, grades, GradeMode::Integer, &edges)?;
    if let Some((s, t)) = assert_d_squared_zero(&complex) {
        return Err(Error::DifferentialNotSquareZero(complex.labels()[s].clone(), complex.labels()[t].clone()));
    }
    Ok(TorusComplex { sector: *sector, generators, complex, base, index })
}

/// Homology of the wrapping-zero complex: one class in each grade
/// `0 .. 2d-1` for class 0.
pub fn verify_lemma_eta0(sector: &TorusSector) -> Result<Vec<Check>> {
    let t = delta0(sector)?;
    let b = betti(&t.complex)?;
    let nonzero: BTreeMap<i64, usize> = b.into_iter().filter(|&(_, d)| d > 0).collect();
    if sector.class != 0 {
        return Ok(vec![Check::new(format!("homology {sector}"), true, format!("{nonzero:?} (no expectation)"))]);
    }
    let want: BTreeMap<i64, usize> = (0..2 * sector.d).map(|k| (k, 1)).collect();
    Ok(vec![Check::equal(format!("homology {sector}"), nonzero, want)])
}

/// Filtration by `d` minus the total exponent of `e` and `h`.
pub fn eh_filtration(sector: &TorusSector) -> Result<(TorusComplex, FilteredComplexF2)> {
    let t = delta0(sector)?;
    let levels = t.generators.iter().map(|g| sector.d - fixed_count(g)).collect();
    let f = FilteredComplexF2::new(t.complex.clone(), levels)?;
    Ok((t, f))
}

pub fn eh_filtration_pages(sector: &TorusSector) -> Result<SpectralPages> {
    let (_, f) = eh_filtration(sector)?;
    spectral_pages(&f, None)
}

/// Torus orbit set with `h` at slope `top` and `e` at slope `bottom`,
/// slopes given mod `n`.
fn corner_term(h_at: (i64, i64), e_at: (i64, i64), n: i64) -> Result<OrbitSet> {
    let down = |(p, q): (i64, i64)| {
        let x = frac(p, q);
        let v = Vec2::new(*x.numer(), *x.denom());
        Vec2::new(v.p - n * v.q * v.p.div_euclid(n * v.q), v.q)
    };
    OrbitSet::from_factors([(down(h_at), Label::Hyperbolic), (down(e_at), Label::Elliptic)])
}

/// Outcome of the wrapping-one step for `e^d`.
#[derive(Clone, Debug)]
pub struct WrappingReport {
    /// Cylinder targets of `e0^d` with wrapping `-1`, and their projections.
    pub lifted_terms: Vec<(OrbitSet, OrbitSet)>,
    /// The projected sum, reduced mod 2.
    pub known_part: Vec<OrbitSet>,
    pub checks: Vec<Check>,
}

/// Checks the known part of the wrapping-one differential of `e^d`: it
/// matches the corner sum over `k`, it is homologous into the first proper
/// filtration step, and that step has no homology in grade `2d - 1`.
pub fn wrapping_check(sector: &TorusSector) -> Result<WrappingReport> {
    if sector.class != 0 {
        return Err(Error::InvalidParameters("the wrapping check needs class 0".into()));
    }
    let (n, d) = (sector.n, sector.d);
    let top = OrbitSet::from_factors(vec![(FIXED, Label::Elliptic); d as usize])?;
    let prob = CylinderProblem::new(Bound::minus_eps(frac(-1, 1)), Bound::plus_eps(frac(1, 1)), 0, d)?;
    let cyl = differential(&prob)?;
    let t = delta0(sector)?;
    let mut checks = Vec::new();

    let mut lifted_terms = Vec::new();
    let mut off_index = Vec::new();
    let mut touching = 0;
    for b in cyl.delta(&top).expect("e0^d is a generator") {
        if eta_tilde(&b, n) != -1 {
            continue;
        }
        let Ok(down) = project(&b, n) else { continue };
        // Terms that land on a fixed orbit (only for n = 1) are the
        // degenerate corners; their index is reported, not required.
        if fixed_count(&down) > 0 {
            touching += 1;
        } else {
            let i = i0_grading(&top, &down, n)?;
            if i != 1 - 2 * d {
                off_index.push(format!("{} at {i}", TorusText(&down)));
            }
        }
        lifted_terms.push((b, down));
    }
    let mut sum: BTreeMap<OrbitSet, usize> = BTreeMap::new();
    for (_, down) in &lifted_terms {
        *sum.entry(down.clone()).or_insert(0) += 1;
    }
    let known_part: Vec<OrbitSet> = sum.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(a, _)| a).collect();

    let mut formula: BTreeMap<OrbitSet, usize> = BTreeMap::new();
    for k in 1..d {
        for (h_at, e_at) in [((1, d - k), (n * k - 1, k)), ((n * k - 1, k), (1, d - k))] {
            if let Ok(term) = corner_term(h_at, e_at, n) {
                *formula.entry(term).or_insert(0) += 1;
            }
        }
    }
    let formula: Vec<OrbitSet> = formula.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(a, _)| a).collect();
    let show = |v: &[OrbitSet]| v.iter().map(|a| TorusText(a).to_string()).collect::<Vec<_>>().join(" + ");
    checks.push(Check::new(
        format!("wrapping terms match corner sum {sector}"),
        known_part == formula,
        format!("computed [{}], formula [{}]", show(&known_part), show(&formula)),
    ));
    checks.push(Check::new(
        format!("wrapping terms have index 1-2d {sector}"),
        off_index.is_empty() && (d == 1 || !lifted_terms.is_empty()),
        format!("{} lifted terms, {touching} on fixed orbits, off index: {off_index:?}", lifted_terms.len()),
    ));

    // Homologous into F_{d-1}: modulo generators with a fixed orbit, the
    // sum is a boundary.
    let keep = t.with_fixed();
    let quotient = |col: &[usize]| col.iter().copied().filter(|i| !keep.contains(i)).collect::<Vec<usize>>();
    let mut image = Reducer::new();
    for j in 0..t.generators.len() {
        image.insert(quotient(t.complex.boundary_of(j)));
    }
    let mut x: Vec<usize> = known_part.iter().map(|a| t.index_of(a).expect("projected terms are generators")).collect();
    x.sort_unstable();
    let in_filtration = image.contains(quotient(&x));
    let cycle = t.complex.apply(&x).is_empty();
    checks.push(Check::new(
        format!("wrapping class lies in F_(d-1) {sector}"),
        in_filtration,
        format!("{} terms, cycle: {cycle}", x.len()),
    ));

    let sub = t.complex.subcomplex(&keep)?;
    let dim = betti(&sub)?.get(&(2 * d - 1)).copied().unwrap_or(0);
    // For d = 1 the sum is empty and F_0 is everything, so nothing is needed.
    let needed = d > 1;
    checks.push(Check::new(
        format!("H_(2d-1)(F_(d-1)) = 0 {sector}"),
        dim == 0 || !needed,
        if needed { format!("dim {dim}") } else { format!("dim {dim}, not needed for an empty sum") },
    ));
    Ok(WrappingReport { lifted_terms, known_part, checks })
}

#[cfg(test)]
mod tests;
