//! The chain complex of a twist on a cylinder with rotation numbers in
//! `(x1, x2)`: generators, the rounding differential, gradings, the
//! top-slope filtration and the unimodular symmetry.

mod orbit;
mod rounding;

pub use orbit::{enumerate_orbit_sets, Label, Orbit, OrbitSet};
pub use rounding::{
    is_double_rounding, is_rounding, q_tau_crosscheck, relative_index, rounding_sources, Witness,
};

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::checks::Check;
use crate::error::{Error, Result};
use crate::f2homology::{
    assert_d_squared_zero, betti, homology, is_boundary, spectral_pages, ChainComplexF2, FilteredComplexF2, GradeMode,
    SpectralPages,
};
use crate::lattice::{e_path, farey_vectors_desc, Bound, Frac, Sl2, Vec2};

/// Rotation window `(x1, x2)` and total class `(P, Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CylinderProblem {
    pub x1: Bound,
    pub x2: Bound,
    pub p: i64,
    pub q: i64,
}

impl CylinderProblem {
    pub fn new(x1: Bound, x2: Bound, p: i64, q: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidParameters(format!("Q = {q} must be positive")));
        }
        farey_vectors_desc(x1, x2, q)?;
        Ok(CylinderProblem { x1, x2, p, q })
    }

    /// Orbit vectors available in the window, steepest first.
    pub fn vectors(&self) -> Vec<Vec2> {
        farey_vectors_desc(self.x1, self.x2, self.q).expect("validated in new")
    }

    pub fn contains(&self, x: Frac) -> bool {
        let b = Bound::exact(x);
        self.x1 < b && b < self.x2
    }

    pub fn total_inside(&self) -> bool {
        self.contains(Frac::new(self.p, self.q))
    }
}

impl fmt::Display for CylinderProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.x1, self.x2, self.p, self.q)
    }
}

/// Every admissible orbit set in the window with total `(P, Q)`, sorted.
pub fn enumerate_generators(prob: &CylinderProblem) -> Vec<OrbitSet> {
    enumerate_orbit_sets(&prob.vectors(), prob.q, Some(prob.p))
}

/// The all-elliptic generator on the hull path.
pub fn e_generator(prob: &CylinderProblem) -> Result<OrbitSet> {
    let path = e_path(prob.x1, prob.x2, prob.p, prob.q)?;
    OrbitSet::from_orbits(path.edges().iter().map(|&(v, m)| Orbit { v, e: m, h: false }))
}

/// One generator per edge of the hull path, with that edge made hyperbolic.
pub fn h_sum(prob: &CylinderProblem) -> Result<Vec<OrbitSet>> {
    let path = e_path(prob.x1, prob.x2, prob.p, prob.q)?;
    let edges = path.edges();
    (0..edges.len())
        .map(|i| {
            OrbitSet::from_orbits(edges.iter().enumerate().map(|(j, &(v, m))| {
                let h = i == j;
                Orbit { v, e: m - h as u32, h }
            }))
        })
        .collect()
}

/// A built complex together with the orbit sets behind its generators.
#[derive(Clone, Debug)]
pub struct CylinderComplex {
    pub problem: CylinderProblem,
    pub generators: Vec<OrbitSet>,
    pub complex: ChainComplexF2,
    /// Grade-zero generator: `E` when `P/Q` is inside, else the least one.
    pub base: Option<usize>,
    /// Pairs reached through more than one corner.
    pub multi_witness: Vec<(usize, usize)>,
    index: HashMap<OrbitSet, usize>,
}

impl CylinderComplex {
    pub fn index_of(&self, a: &OrbitSet) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Support of a sum of generators, cancelling repeats.
    pub fn chain(&self, sets: &[OrbitSet]) -> Option<Vec<usize>> {
        let mut v: Vec<usize> = Vec::new();
        for s in sets {
            let i = self.index_of(s)?;
            match v.iter().position(|&x| x == i) {
                Some(k) => {
                    v.remove(k);
                }
                None => v.push(i),
            }
        }
        v.sort_unstable();
        Some(v)
    }

    pub fn sets(&self, chain: &[usize]) -> Vec<OrbitSet> {
        chain.iter().map(|&i| self.generators[i].clone()).collect()
    }

    /// `δ a` as a list of orbit sets.
    pub fn delta(&self, a: &OrbitSet) -> Option<Vec<OrbitSet>> {
        let i = self.index_of(a)?;
        Some(self.sets(self.complex.boundary_of(i)))
    }

    /// `δ* b`: everything whose differential contains `b`.
    pub fn delta_star(&self, b: &OrbitSet) -> Option<Vec<OrbitSet>> {
        let j = self.index_of(b)?;
        let src: Vec<usize> = self.complex.edges().into_iter().filter(|&(_, t)| t == j).map(|(s, _)| s).collect();
        Some(self.sets(&src))
    }

    pub fn grade(&self, a: &OrbitSet) -> Option<i64> {
        self.index_of(a).map(|i| self.complex.grades()[i])
    }
}

fn assemble(
    prob: &CylinderProblem,
    generators: Vec<OrbitSet>,
    edges: Vec<(usize, usize)>,
    multi_witness: Vec<(usize, usize)>,
) -> Result<CylinderComplex> {
    let index: HashMap<OrbitSet, usize> = generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let base = if generators.is_empty() {
        None
    } else if prob.total_inside() {
        Some(index[&e_generator(prob)?])
    } else {
        Some(0)
    };
    let grades: Vec<i64> = match base {
        Some(b) => generators
            .iter()
            .map(|g| relative_index(g, &generators[b]))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let labels = generators.iter().map(|g| g.to_string()).collect();
    let complex = ChainComplexF2::from_edges(labels, grades, GradeMode::Integer, &edges)?;
    if let Some((s, t)) = assert_d_squared_zero(&complex) {
        return Err(Error::DifferentialNotSquareZero(generators[s].to_string(), generators[t].to_string()));
    }
    Ok(CylinderComplex { problem: *prob, generators, complex, base, multi_witness, index })
}

/// The rounding differential, built corner by corner from each target.
///
/// Double roundings get coefficient zero. Fails if the grading or the
/// square-zero check breaks.
pub fn differential(prob: &CylinderProblem) -> Result<CylinderComplex> {
    let generators = enumerate_generators(prob);
    let index: HashMap<&OrbitSet, usize> = generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let per_target: Vec<Vec<(usize, usize)>> = generators
        .par_iter()
        .map(|b| {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for (a, _) in rounding_sources(b) {
                let i = *index.get(&a).expect("a rounding stays inside the window");
                match counts.iter_mut().find(|c| c.0 == i) {
                    Some(c) => c.1 += 1,
                    None => counts.push((i, 1)),
                }
            }
            counts.sort_unstable();
            counts
        })
        .collect();
    let mut edges = Vec::new();
    let mut multi = Vec::new();
    for (j, counts) in per_target.into_iter().enumerate() {
        for (i, n) in counts {
            edges.push((i, j));
            if n > 1 {
                multi.push((i, j));
            }
        }
    }
    assemble(prob, generators, edges, multi)
}

/// The same differential from the definition, testing every pair. Quadratic;
/// meant for cross-checking [`differential`] on small windows.
pub fn differential_by_predicate(prob: &CylinderProblem) -> Result<CylinderComplex> {
    let generators = enumerate_generators(prob);
    let edges: Vec<(usize, usize)> = (0..generators.len())
        .into_par_iter()
        .flat_map_iter(|j| {
            let gens = &generators;
            (0..gens.len()).filter_map(move |i| match is_rounding(&gens[i], &gens[j]) {
                Ok(Some(_)) => Some((i, j)),
                _ => None,
            })
        })
        .collect();
    assemble(prob, generators, edges, Vec::new())
}

/// Transposed differential with negated grading.
pub fn dual_differential(prob: &CylinderProblem) -> Result<CylinderComplex> {
    let mut c = differential(prob)?;
    c.complex = c.complex.dual();
    Ok(c)
}

/// The homology statement: rank one in grades 0 and 1 when `P/Q` is in
/// the window, nothing otherwise; `E` closed and essential, the `H` terms
/// homologous to each other and essential.
pub fn verify_theorem_cylinder(prob: &CylinderProblem) -> Result<Vec<Check>> {
    let c = differential(prob)?;
    let mut checks = vec![Check::new("square zero", true, format!("{} generators", c.generators.len()))];
    if !prob.total_inside() {
        checks.push(Check::new(
            "no generators outside",
            c.generators.is_empty(),
            format!("{} generators", c.generators.len()),
        ));
        return Ok(checks);
    }
    let b = betti(&c.complex)?;
    let nonzero: Vec<(i64, usize)> = b.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect();
    checks.push(Check::equal("betti", nonzero, vec![(0, 1), (1, 1)]));

    let e = e_generator(prob)?;
    let ei = c.index_of(&e).expect("E is a generator");
    let e_closed = c.complex.boundary_of(ei).is_empty();
    checks.push(Check::new("E closed", e_closed, format!("d({e}) has {} terms", c.complex.boundary_of(ei).len())));
    checks.push(Check::new("E essential", !is_boundary(&c.complex, &[ei]), e.to_string()));

    let hs = h_sum(prob)?;
    let hi: Vec<usize> = hs.iter().map(|h| c.index_of(h).expect("H terms are generators")).collect();
    let closed = hi.iter().all(|&i| c.complex.boundary_of(i).is_empty());
    let essential = !is_boundary(&c.complex, &hi[..1]);
    let homologous = hi.windows(2).all(|w| is_boundary(&c.complex, &{
        let mut v = w.to_vec();
        v.sort_unstable();
        v
    }));
    let names: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
    checks.push(Check::new(
        "H terms closed, homologous, essential",
        closed && essential && homologous,
        format!("{names:?}: closed {closed}, homologous {homologous}, essential {essential}"),
    ));
    let grades: Vec<i64> = hi.iter().map(|&i| c.complex.grades()[i]).collect();
    checks.push(Check::new(
        "H terms in grade 1",
        grades.iter().all(|&g| g == 1),
        format!("{grades:?}"),
    ));
    if !c.multi_witness.is_empty() {
        checks.push(Check::new(
            "single corner per pair",
            true,
            format!("{} pairs reached through several corners (coefficient kept at 1)", c.multi_witness.len()),
        ));
    }
    Ok(checks)
}

/// Filtration by minus the exponent of the steepest slope of `E`.
pub fn cd_filtration(prob: &CylinderProblem) -> Result<(CylinderComplex, FilteredComplexF2)> {
    let top = e_generator(prob)?.max_slope().expect("E is nonempty");
    let c = differential(prob)?;
    let levels = c.generators.iter().map(|g| -(g.exponent(top) as i64)).collect();
    let f = FilteredComplexF2::new(c.complex.clone(), levels)?;
    Ok((c, f))
}

pub fn cd_filtration_pages(prob: &CylinderProblem) -> Result<SpectralPages> {
    let (_, f) = cd_filtration(prob)?;
    spectral_pages(&f, None)
}

/// The problem after applying `A` to the window and the total.
pub fn psi_image(prob: &CylinderProblem, a: Sl2) -> Result<CylinderProblem> {
    let x1 = a.apply_bound(prob.x1)?;
    let x2 = a.apply_bound(prob.x2)?;
    let t = a.apply_vec(Vec2::new(prob.p, prob.q));
    CylinderProblem::new(x1, x2, t.p, t.q)
}

/// Checks that `A` maps generators bijectively and preserves the rounding
/// relation, the relative index and the differential.
pub fn psi_equivariance_check(prob: &CylinderProblem, a: Sl2) -> Result<Vec<Check>> {
    let target = psi_image(prob, a)?;
    let src = differential(prob)?;
    let dst = differential(&target)?;
    let image: Vec<OrbitSet> = src
        .generators
        .iter()
        .map(|g| g.map_vectors(|v| a.apply_vec(v)))
        .collect::<Result<_>>()?;
    let mapped: Vec<Option<usize>> = image.iter().map(|g| dst.index_of(g)).collect();
    let bijective = mapped.iter().all(Option::is_some) && src.generators.len() == dst.generators.len();
    let mut checks = vec![Check::new(
        "generators correspond",
        bijective,
        format!("{} -> {}: {} vs {} generators", prob, target, src.generators.len(), dst.generators.len()),
    )];
    if !bijective {
        return Ok(checks);
    }
    let m: Vec<usize> = mapped.into_iter().map(Option::unwrap).collect();
    let mut e1: Vec<(usize, usize)> = src.complex.edges().into_iter().map(|(s, t)| (m[s], m[t])).collect();
    let mut e2 = dst.complex.edges();
    e1.sort_unstable();
    e2.sort_unstable();
    checks.push(Check::new("differential commutes", e1 == e2, format!("{} edges", e2.len())));
    let n = src.generators.len();
    let mut index_bad = 0;
    let mut rounding_bad = 0;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (&src.generators[i], &src.generators[j]);
            let (fx, fy) = (&image[i], &image[j]);
            if relative_index(x, y)? != relative_index(fx, fy)? {
                index_bad += 1;
            }
            if is_rounding(x, y)?.is_some() != is_rounding(fx, fy)?.is_some() {
                rounding_bad += 1;
            }
        }
    }
    checks.push(Check::new("index invariant", index_bad == 0, format!("{index_bad} of {} pairs differ", n * n)));
    checks.push(Check::new("rounding invariant", rounding_bad == 0, format!("{rounding_bad} of {} pairs differ", n * n)));
    Ok(checks)
}

/// Homology with representatives, keyed by grade.
pub fn cylinder_homology(c: &CylinderComplex) -> Result<std::collections::BTreeMap<i64, crate::f2homology::HomologyGroup>> {
    homology(&c.complex)
}
