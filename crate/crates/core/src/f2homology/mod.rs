//! Linear algebra over the two-element field: ranks, kernels, graded
//! homology and the pages of a finitely filtered complex.

mod complex;
mod matrix;
mod spectral;

pub use complex::{assert_d_squared_zero, betti, homology, is_boundary, ChainComplexF2, GradeMode, HomologyGroup};
pub use matrix::{rank_and_kernel, rank_of_columns, F2Matrix, Reducer};
pub use spectral::{spectral_pages, FilteredComplexF2, SpectralPages};
