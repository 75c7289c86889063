//! Exact cohomology and deformation computations for finite-dimensional
//! Hom-associative and Hom-Lie algebras given by structure constants.

pub mod algebra;
pub mod bracket;
pub mod cochain;
pub mod cohomology;
pub mod compare;
pub mod deformation;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod format;
pub mod multilinear;
pub mod random;
pub mod report;
pub mod rep;
pub mod suite;

pub use error::Error;
pub use exact::Rational;
