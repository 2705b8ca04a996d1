use std::collections::HashMap;

use crate::error::{Error, Result};

/// Sparse matrix over F2 stored as sorted column supports.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct F2Matrix {
    rows: usize,
    cols: Vec<Vec<usize>>,
}

/// XOR of two sorted supports.
pub(crate) fn xor_into(acc: &[usize], other: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    out
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col)` positions of the ones.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut m = F2Matrix::zeros(rows, cols);
        for &(r, c) in entries {
            if r >= rows || c >= cols {
                return Err(Error::BadEntry(r, c));
            }
            m.cols[c].push(r);
        }
        for (c, col) in m.cols.iter_mut().enumerate() {
            col.sort_unstable();
            if let Some(w) = col.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::BadEntry(w[0], c));
            }
        }
        Ok(m)
    }

    /// Builds from column supports; each support must be sorted and distinct.
    pub fn from_columns(rows: usize, cols: Vec<Vec<usize>>) -> Result<Self> {
        for (c, col) in cols.iter().enumerate() {
            if let Some(&r) = col.iter().find(|&&r| r >= rows) {
                return Err(Error::BadEntry(r, c));
            }
            if let Some(w) = col.windows(2).find(|w| w[0] >= w[1]) {
                return Err(Error::BadEntry(w[1], c));
            }
        }
        Ok(F2Matrix { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[usize] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].binary_search(&r).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&r| (r, c)))
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = vec![Vec::new(); self.rows];
        for (r, c) in self.entries() {
            t[r].push(c);
        }
        F2Matrix { rows: self.cols.len(), cols: t }
    }

    /// Image of a vector given by its support.
    pub fn apply(&self, support: &[usize]) -> Vec<usize> {
        support
            .iter()
            .fold(Vec::new(), |acc, &c| xor_into(&acc, &self.cols[c]))
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_columns(self.cols.iter().cloned())
    }
}

/// Rank of a family of sorted supports.
pub fn rank_of_columns<I: IntoIterator<Item = Vec<usize>>>(cols: I) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for mut col in cols {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = xor_into(&col, p),
                None => {
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Column reduction `R = M V` with pivot = lowest nonzero row.
///
/// Returns the rank and a kernel basis given as supports over the columns.
pub fn rank_and_kernel(m: &F2Matrix) -> (usize, Vec<Vec<usize>>) {
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(m.cols());
    let mut combo: Vec<Vec<usize>> = Vec::with_capacity(m.cols());
    let mut kernel = Vec::new();
    for c in 0..m.cols() {
        let mut col = m.cols[c].clone();
        let mut v = vec![c];
        while let Some(&low) = col.last() {
            match pivot_of.get(&low) {
                Some(&j) => {
                    col = xor_into(&col, &reduced[j]);
                    v = xor_into(&v, &combo[j]);
                }
                None => break,
            }
        }
        match col.last() {
            Some(&low) => {
                pivot_of.insert(low, c);
            }
            None => kernel.push(v.clone()),
        }
        reduced.push(col);
        combo.push(v);
    }
    (pivot_of.len(), kernel)
}

/// Incremental reducer: feed vectors, learn whether each was independent of
/// those before it.
#[derive(Default)]
pub struct Reducer {
    pivots: HashMap<usize, Vec<usize>>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v` against the stored basis; stores and returns true if
    /// something nonzero remains.
    pub fn insert(&mut self, mut v: Vec<usize>) -> bool {
        while let Some(&low) = v.last() {
            match self.pivots.get(&low) {
                Some(p) => v = xor_into(&v, p),
                None => {
                    self.pivots.insert(low, v);
                    return true;
                }
            }
        }
        false
    }

    /// Whether `v` lies in the span, without storing it.
    pub fn contains(&self, mut v: Vec<usize>) -> bool {
        while let Some(&low) = v.last() {
            match self.pivots.get(&low) {
                Some(p) => v = xor_into(&v, p),
                None => return false,
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let id = F2Matrix::from_entries(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(rank_and_kernel(&id), (2, vec![]));
        let row = F2Matrix::from_entries(1, 2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(rank_and_kernel(&row), (1, vec![vec![0, 1]]));
        assert_eq!(rank_and_kernel(&F2Matrix::zeros(0, 0)), (0, vec![]));
        assert_eq!(F2Matrix::from_entries(1, 1, &[(0, 0), (0, 0)]), Err(Error::BadEntry(0, 0)));
        assert_eq!(F2Matrix::from_entries(1, 1, &[(1, 0)]), Err(Error::BadEntry(1, 0)));
    }

    // Dense Gaussian elimination as an independent rank oracle.
    fn dense_rank(rows: usize, cols: usize, bits: &[bool]) -> usize {
        let mut m: Vec<Vec<bool>> = (0..rows).map(|r| (0..cols).map(|c| bits[r * cols + c]).collect()).collect();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..rows).find(|&r| m[r][c]) {
                m.swap(rank, p);
                for r in 0..rows {
                    if r != rank && m[r][c] {
                        let pivot = m[rank].clone();
                        for (x, y) in m[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..9, cols in 0usize..9, bits in prop::collection::vec(any::<bool>(), 81)) {
            let entries: Vec<(usize, usize)> = (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| bits[r * cols + c])
                .collect();
            let m = F2Matrix::from_entries(rows, cols, &entries).unwrap();
            let (rank, kernel) = rank_and_kernel(&m);
            prop_assert_eq!(rank + kernel.len(), cols);
            prop_assert_eq!(rank, dense_rank(rows, cols, &bits));
            prop_assert_eq!(rank, m.rank());
            prop_assert_eq!(rank, m.transpose().rank());
            for v in &kernel {
                prop_assert!(m.apply(v).is_empty());
            }
            prop_assert_eq!(rank_of_columns(kernel.iter().cloned()), kernel.len());
        }
    }
}
