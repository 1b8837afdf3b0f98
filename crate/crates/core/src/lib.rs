//! Exact cycle calculus on Jacobians carrying a group action.

pub mod bigraded;
pub mod exact;
pub mod exterior;
pub mod gonal;
pub mod lattice;
pub mod report;
pub mod tautological;

pub use bigraded::{Bidegree, BigradedClass, BigradedError, Generator, Presentation};
pub use exact::{IntMatrix, QMatrix, Rational, SparseVec, SubspaceBasis};
pub use exterior::{ExtClass, ExteriorError};
pub use gonal::{build_gonal, GonalError, GonalModelParams, GonalRing};
pub use lattice::{LatticeError, PolarizedLattice, SymplecticEndo};
pub use report::{Check, CheckStatus};
