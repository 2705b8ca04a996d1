use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use super::complex::ChainComplexF2;
use super::matrix::rank_of_columns;
use crate::error::{Error, Result};

/// A complex with an increasing filtration `F_p = span{level <= p}`.
#[derive(Clone, Debug)]
pub struct FilteredComplexF2 {
    complex: ChainComplexF2,
    levels: Vec<i64>,
}

impl FilteredComplexF2 {
    pub fn new(complex: ChainComplexF2, levels: Vec<i64>) -> Result<Self> {
        if levels.len() != complex.len() {
            return Err(Error::InvalidParameters(format!(
                "{} levels for {} generators",
                levels.len(),
                complex.len()
            )));
        }
        for (s, t) in complex.edges() {
            if levels[t] > levels[s] {
                return Err(Error::FiltrationViolated(
                    complex.labels()[s].clone(),
                    complex.labels()[t].clone(),
                ));
            }
        }
        Ok(FilteredComplexF2 { complex, levels })
    }

    pub fn complex(&self) -> &ChainComplexF2 {
        &self.complex
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    /// `max level - min level`, or 0 when empty.
    pub fn length(&self) -> usize {
        match (self.levels.iter().min(), self.levels.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo) as usize,
            _ => 0,
        }
    }

    /// The associated graded piece at one level, as a complex.
    pub fn graded_piece(&self, level: i64) -> Result<ChainComplexF2> {
        let keep: Vec<usize> = (0..self.complex.len()).filter(|&i| self.levels[i] == level).collect();
        let mut index = vec![usize::MAX; self.complex.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let edges: Vec<(usize, usize)> = self
            .complex
            .edges()
            .into_iter()
            .filter(|&(s, t)| index[s] != usize::MAX && index[t] != usize::MAX)
            .map(|(s, t)| (index[s], index[t]))
            .collect();
        ChainComplexF2::from_edges(
            keep.iter().map(|&i| self.complex.labels()[i].clone()).collect(),
            keep.iter().map(|&i| self.complex.grades()[i]).collect(),
            self.complex.mode(),
            &edges,
        )
    }
}

/// Dimensions of `E^r_{p,k}` for `r = 1, 2, ...`; `pages[0]` is `E^1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpectralPages {
    pub pages: Vec<BTreeMap<(i64, i64), usize>>,
}

impl SpectralPages {
    /// Page `r` (1-based).
    pub fn page(&self, r: usize) -> &BTreeMap<(i64, i64), usize> {
        &self.pages[r - 1]
    }

    /// Total dimension per filtration level on page `r`.
    pub fn level_totals(&self, r: usize) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for (&(p, _), &d) in self.page(r) {
            *m.entry(p).or_insert(0) += d;
        }
        m
    }

    /// Dimensions of one filtration level, by grade.
    pub fn column(&self, r: usize, level: i64) -> BTreeMap<i64, usize> {
        self.page(r)
            .iter()
            .filter(|(&(p, _), _)| p == level)
            .map(|(&(_, k), &d)| (k, d))
            .collect()
    }

    /// Total dimension per grade on the last page.
    pub fn limit_by_grade(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        if let Some(last) = self.pages.last() {
            for (&(_, k), &d) in last {
                *m.entry(k).or_insert(0) += d;
            }
        }
        m
    }
}

struct Ranks<'a> {
    f: &'a FilteredComplexF2,
    by_grade: BTreeMap<i64, Vec<usize>>,
    cache: RefCell<HashMap<(i64, i64, i64), usize>>,
}

impl Ranks<'_> {
    /// Rank of the boundary on grade-`k` columns with level <= `col_max`,
    /// keeping only rows with level > `row_min`.
    fn rank(&self, k: i64, col_max: i64, row_min: i64) -> usize {
        let key = (k, col_max, row_min);
        if let Some(&r) = self.cache.borrow().get(&key) {
            return r;
        }
        let levels = self.f.levels();
        let cols = self.by_grade.get(&k).into_iter().flatten().filter(|&&j| levels[j] <= col_max).map(|&j| {
            self.f
                .complex()
                .boundary_of(j)
                .iter()
                .copied()
                .filter(|&r| levels[r] > row_min)
                .collect::<Vec<usize>>()
        });
        let r = rank_of_columns(cols);
        self.cache.borrow_mut().insert(key, r);
        r
    }

    fn count(&self, k: i64, level_max: i64) -> usize {
        let levels = self.f.levels();
        self.by_grade.get(&k).map_or(0, |g| g.iter().filter(|&&j| levels[j] <= level_max).count())
    }

    /// dim Z^r_p in grade k: chains in F_p with boundary in F_{p-r}.
    fn z(&self, r: i64, p: i64, k: i64) -> usize {
        self.count(k, p) - self.rank(k, p, p - r)
    }

    /// dim (F_a ∩ ∂F_b) in grade k.
    fn b(&self, a: i64, b: i64, k: i64) -> usize {
        let up = self.f.complex().mode().above(k);
        self.rank(up, b, i64::MIN) - self.rank(up, b, a)
    }

    fn e(&self, r: i64, p: i64, k: i64) -> usize {
        let plus = self.z(r, p, k) + self.b(p - 1, p + r - 1, k);
        let minus = self.z(r - 1, p - 1, k) + self.b(p, p + r - 1, k);
        plus - minus
    }
}

/// Pages `E^1 .. E^max_page` of the spectral sequence of the filtration.
///
/// Uses `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + ∂Z^{r-1}_{p+r-1})` with every
/// term's dimension read off from ranks of level-restricted blocks of the
/// boundary. `max_page` defaults to the filtration length plus one, after
/// which every differential vanishes.
pub fn spectral_pages(f: &FilteredComplexF2, max_page: Option<usize>) -> Result<SpectralPages> {
    if let Some((s, t)) = super::assert_d_squared_zero(f.complex()) {
        let labels = f.complex().labels();
        return Err(Error::DifferentialNotSquareZero(labels[s].clone(), labels[t].clone()));
    }
    let max_page = max_page.unwrap_or(f.length() + 1).max(1);
    let ranks = Ranks { f, by_grade: f.complex().by_grade(), cache: RefCell::new(HashMap::new()) };
    let mut cells: Vec<(i64, i64)> = (0..f.complex().len())
        .map(|i| (f.levels()[i], f.complex().grades()[i]))
        .collect();
    cells.sort_unstable();
    cells.dedup();
    let pages = (1..=max_page as i64)
        .map(|r| cells.iter().map(|&(p, k)| ((p, k), ranks.e(r, p, k))).collect())
        .collect();
    Ok(SpectralPages { pages })
}
