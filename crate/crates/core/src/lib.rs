pub mod checks;
pub mod cylinder;
pub mod error;
pub mod f2homology;
pub mod lattice;
pub mod morse;
pub mod suite;
pub mod surface;
pub mod torus;

pub use checks::Check;
pub use cylinder::{CylinderComplex, CylinderProblem, Label, Orbit, OrbitSet};
pub use error::{Error, Result};
pub use f2homology::{ChainComplexF2, FilteredComplexF2, GradeMode, SpectralPages};
pub use lattice::{Bound, Frac, Sl2, Vec2};
pub use morse::{CriticalPoint, MorseData};
pub use surface::{SurfaceConfig, SurfaceKind};
pub use torus::TorusSector;
