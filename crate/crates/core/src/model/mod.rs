//! Spectral-sequence inputs for concrete manifolds, and comparison of the
//! stable page with candidate ring presentations.

mod candidate;
mod circle;
mod grammar;
mod manifold;
mod ziller;

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::spectral::EngineError;

pub use candidate::{
    builtin_candidate, match_presentation, pages_isomorphic, parse_candidate, Mismatch,
    PresentationCandidate, Verdict, BUILTIN_CANDIDATES,
};
pub use circle::{circle_loop_homology, laurent_piece, AdditivePiece};
pub use grammar::instantiate_template;
pub use manifold::{cpn_model, custom_model_parse, sphere_model, ManifoldModel, ModelName};
pub use ziller::{assemble_total_degree, ziller_reference};

/// A problem tied to one line of a model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDiagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn join_lines(d: &[LineDiagnostic]) -> String {
    d.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{}", join_lines(.0))]
    Invalid(Vec<LineDiagnostic>),
    #[error("cannot evaluate template placeholder `{{{0}}}`")]
    Template(String),
    #[error("sphere:{0} is not simply connected or not a sphere; use `circle` for n = 1")]
    SphereDimension(i64),
    #[error("cpn:{0} needs n >= 1")]
    CpnDimension(i64),
    #[error("unknown model selector `{0}` (expected sphere:N, cpn:N, circle or custom:PATH)")]
    UnknownModel(String),
    #[error("no built-in presentation named `{0}`")]
    UnknownCandidate(String),
    #[error("presentation `{name}` does not apply to {model}")]
    CandidateNotApplicable { name: String, model: String },
    #[error("candidate generator `{0}` has no cyclic stable class at its bidegree")]
    BidegreeIncompatible(String),
    #[error("candidate files cannot contain differentials (line {0})")]
    CandidateDifferential(usize),
    #[error("total degree {requested} exceeds the reliable bound {bound}; increase t_max")]
    Unreliable { requested: i64, bound: i64 },
    #[error("pages have different dimensions ({0} and {1})")]
    DimensionMismatch(i64, i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
