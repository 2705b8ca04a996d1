//! Benchmark inputs shared by the bench targets.

use pfh_core::lattice::frac;
use pfh_core::{Bound, CylinderProblem};

/// The largest cylinder window of the acceptance grid.
pub fn hull_window() -> CylinderProblem {
    CylinderProblem::new(Bound::minus_eps(frac(-2, 9)), Bound::plus_eps(frac(7, 5)), 4, 11).expect("valid window")
}

/// A window of total `(p, q)` between slopes 0 and `p`.
pub fn wide_window(p: i64, q: i64) -> CylinderProblem {
    CylinderProblem::new(Bound::plus_eps(frac(0, 1)), Bound::minus_eps(frac(p, 1)), p, q).expect("valid window")
}
