//! Exact computation of the loop homology spectral sequence of a closed,
//! oriented, simply connected manifold as a spectral sequence of algebras.
//!
//! The pipeline is:
//!
//! 1. [`model`] builds the `E^2` presentation `H^*(M) ⊗ H_*(ΩM)` in the
//!    second-quadrant grading (columns `-d..=0`) together with the
//!    generator-level differentials;
//! 2. [`spectral`] turns pages by integer homology, keeping explicit cycle
//!    representatives so products survive every page turn;
//! 3. [`model::match_presentation`] compares the stable page with a candidate
//!    ring presentation as associated graded rings;
//! 4. [`report`] renders pages as JSON or charts and drives the `loopss` CLI.
//!
//! All arithmetic is over arbitrary-precision integers.

pub mod algebra;
pub mod linalg;
pub mod model;
pub mod report;
pub mod spectral;

pub use algebra::{
    AlgebraPresentation, Combination, GeneratorDecl, GeneratorKind, Monomial, Relation,
};
pub use linalg::{FGAbelianGroup, IntMatrix};
pub use model::{ManifoldModel, PresentationCandidate};
pub use spectral::{DifferentialSpec, Page};
