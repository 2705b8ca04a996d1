use std::collections::BTreeMap;

use super::matrix::{rank_and_kernel, xor_into, F2Matrix, Reducer};
use crate::error::{Error, Result};

/// Integer grading, or a mod-2 grading when only parity is defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradeMode {
    Integer,
    Parity,
}

impl GradeMode {
    pub fn below(self, k: i64) -> i64 {
        match self {
            GradeMode::Integer => k - 1,
            GradeMode::Parity => (k + 1).rem_euclid(2),
        }
    }

    pub fn above(self, k: i64) -> i64 {
        match self {
            GradeMode::Integer => k + 1,
            GradeMode::Parity => (k + 1).rem_euclid(2),
        }
    }
}

/// Graded generators with a differential over F2. Column `j` of the
/// boundary holds the targets of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexF2 {
    labels: Vec<String>,
    grades: Vec<i64>,
    mode: GradeMode,
    boundary: F2Matrix,
}

/// Homology in one grade.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub dim: usize,
    /// Cycles whose classes form a basis.
    pub representatives: Vec<Vec<usize>>,
}

impl ChainComplexF2 {
    /// Checks that every entry lowers the grade by one. Does not check
    /// that the boundary squares to zero; see [`assert_d_squared_zero`].
    pub fn new(labels: Vec<String>, grades: Vec<i64>, mode: GradeMode, boundary: F2Matrix) -> Result<Self> {
        let n = labels.len();
        if grades.len() != n || boundary.rows() != n || boundary.cols() != n {
            return Err(Error::InvalidParameters(format!(
                "{} labels, {} grades, {}x{} boundary",
                n,
                grades.len(),
                boundary.rows(),
                boundary.cols()
            )));
        }
        let grades = match mode {
            GradeMode::Integer => grades,
            GradeMode::Parity => grades.into_iter().map(|g| g.rem_euclid(2)).collect(),
        };
        for (r, c) in boundary.entries() {
            if grades[r] != mode.below(grades[c]) {
                return Err(Error::GradingViolated(labels[c].clone(), labels[r].clone()));
            }
        }
        Ok(ChainComplexF2 { labels, grades, mode, boundary })
    }

    /// Builds from `(source, target)` edges.
    pub fn from_edges(labels: Vec<String>, grades: Vec<i64>, mode: GradeMode, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let entries: Vec<(usize, usize)> = edges.iter().map(|&(s, t)| (t, s)).collect();
        let boundary = F2Matrix::from_entries(n, n, &entries)?;
        Self::new(labels, grades, mode, boundary)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    pub fn mode(&self) -> GradeMode {
        self.mode
    }

    pub fn boundary(&self) -> &F2Matrix {
        &self.boundary
    }

    /// `(source, target)` pairs with coefficient one, by source.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.boundary.entries().map(|(r, c)| (c, r)).collect()
    }

    pub fn boundary_of(&self, j: usize) -> &[usize] {
        self.boundary.column(j)
    }

    pub fn apply(&self, chain: &[usize]) -> Vec<usize> {
        self.boundary.apply(chain)
    }

    /// Generators of each grade, in index order.
    pub fn by_grade(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &g) in self.grades.iter().enumerate() {
            m.entry(g).or_default().push(i);
        }
        m
    }

    /// The complex with boundary transposed and grades negated.
    pub fn dual(&self) -> ChainComplexF2 {
        let grades = match self.mode {
            GradeMode::Integer => self.grades.iter().map(|g| -g).collect(),
            GradeMode::Parity => self.grades.clone(),
        };
        ChainComplexF2 {
            labels: self.labels.clone(),
            grades,
            mode: self.mode,
            boundary: self.boundary.transpose(),
        }
    }

    /// Restriction to a subset closed under the boundary.
    pub fn subcomplex(&self, keep: &[usize]) -> Result<ChainComplexF2> {
        let mut index = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let mut cols = Vec::with_capacity(keep.len());
        for &old in keep {
            let mut col = Vec::with_capacity(self.boundary.column(old).len());
            for &r in self.boundary.column(old) {
                if index[r] == usize::MAX {
                    return Err(Error::InvalidParameters(format!(
                        "{} -> {} leaves the subcomplex",
                        self.labels[old], self.labels[r]
                    )));
                }
                col.push(index[r]);
            }
            col.sort_unstable();
            cols.push(col);
        }
        let boundary = F2Matrix::from_columns(keep.len(), cols)?;
        ChainComplexF2::new(
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
            keep.iter().map(|&i| self.grades[i]).collect(),
            self.mode,
            boundary,
        )
    }
}

/// The first `(source, target)` with a nonzero coefficient in the boundary
/// squared, if any.
pub fn assert_d_squared_zero(c: &ChainComplexF2) -> Option<(usize, usize)> {
    (0..c.len()).find_map(|j| {
        let twice = c.boundary.column(j).iter().fold(Vec::new(), |acc, &r| {
            xor_into(&acc, c.boundary.column(r))
        });
        twice.first().map(|&t| (j, t))
    })
}

fn check_square_zero(c: &ChainComplexF2) -> Result<()> {
    match assert_d_squared_zero(c) {
        Some((s, t)) => Err(Error::DifferentialNotSquareZero(c.labels[s].clone(), c.labels[t].clone())),
        None => Ok(()),
    }
}

/// Homology in every grade that carries generators.
pub fn homology(c: &ChainComplexF2) -> Result<BTreeMap<i64, HomologyGroup>> {
    check_square_zero(c)?;
    let groups = c.by_grade();
    let mut out = BTreeMap::new();
    for (&k, gens) in &groups {
        let sub = F2Matrix::from_columns(c.len(), gens.iter().map(|&j| c.boundary.column(j).to_vec()).collect())?;
        let (_, kernel) = rank_and_kernel(&sub);
        let mut reducer = Reducer::new();
        if let Some(above) = groups.get(&c.mode.above(k)) {
            for &j in above {
                reducer.insert(c.boundary.column(j).to_vec());
            }
        }
        let boundaries = reducer.rank();
        let mut reps = Vec::new();
        for v in kernel {
            let cycle: Vec<usize> = {
                let mut s: Vec<usize> = v.iter().map(|&i| gens[i]).collect();
                s.sort_unstable();
                s
            };
            if reducer.insert(cycle.clone()) {
                reps.push(cycle);
            }
        }
        debug_assert_eq!(reducer.rank(), boundaries + reps.len());
        out.insert(k, HomologyGroup { dim: reps.len(), representatives: reps });
    }
    Ok(out)
}

/// `grade -> dim H`, keeping zero entries.
pub fn betti(c: &ChainComplexF2) -> Result<BTreeMap<i64, usize>> {
    Ok(homology(c)?.into_iter().map(|(k, h)| (k, h.dim)).collect())
}

/// Whether a chain is a boundary.
pub fn is_boundary(c: &ChainComplexF2, chain: &[usize]) -> bool {
    let mut reducer = Reducer::new();
    for j in 0..c.len() {
        reducer.insert(c.boundary.column(j).to_vec());
    }
    let mut v = chain.to_vec();
    v.sort_unstable();
    reducer.contains(v)
}
