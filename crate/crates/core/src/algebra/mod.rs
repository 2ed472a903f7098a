//! Finitely presented bigraded-commutative algebras over the integers.
//!
//! Generators carry a bidegree `(column, row)` and a kind. Relations are
//! monomial-torsion only: `k·m = 0` for `k >= 2`, or `m = 0` (truncation).
//! Signs follow the Koszul rule on total degree `column + row`.

mod combination;
mod monomial;
mod presentation;

use std::fmt;

use thiserror::Error;

pub use combination::Combination;
pub use monomial::{Monomial, Sign};
pub use presentation::{AlgebraPresentation, GeneratorDecl, GeneratorKind, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Generator(usize, String),
    Relation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Location::Generator(i, name) => write!(f, "generator {i} (`{name}`): {}", self.message),
            Location::Relation(i) => write!(f, "relation {i}: {}", self.message),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid presentation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed monomial `{0}`")]
    BadMonomial(String),
    #[error("unknown generator kind `{0}` (expected exterior, polynomial or laurent)")]
    UnknownKind(String),
    #[error("presentations with laurent generators have infinite bases")]
    LaurentBasis,
    #[error("generator `{0}` sits at bidegree (0,0); bases would be infinite")]
    DegreeZeroGenerator(String),
}
