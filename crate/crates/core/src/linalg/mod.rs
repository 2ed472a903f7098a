//! Exact integer linear algebra: Smith normal form, kernels, and homology of
//! integer chain complexes.

mod group;
mod homology;
mod matrix;
mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::FGAbelianGroup;
pub use homology::{
    column_span_basis, homology_of_pair, kernel_basis, kernel_modulo, ClassMap, Subquotient,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix of shape {rows}x{cols} needs {} entries, got {got}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("d_out * d_in is nonzero; the differentials do not form a complex")]
    NotAComplex,
    #[error("cycle basis does not have full column rank")]
    RankDeficientBasis,
    #[error("boundary generator {0} does not lie in the cycle lattice")]
    BoundaryNotInCycles(usize),
    #[error("torsion coefficients {0:?} are not in invariant-factor form")]
    NonCanonicalTorsion(Vec<BigInt>),
}
