//! Pages, derivation differentials, page turns, products and extension reports.
//!
//! Bidegrees use the second-quadrant grading: columns `s ∈ [-d, 0]`, rows
//! `t >= 0`, and `d_r : E^r_{s,t} → E^r_{s-r, t+r-1}`.

mod differential;
mod extension;
mod page;
mod product;
mod turn;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

pub use differential::{leibniz_extend, leibniz_extend_combination, DifferentialSpec};
pub use extension::{extension_report, ExtensionReport, FiltrationPiece};
pub use page::{build_initial_page, Cell, ClassId, Element, Page, Window};
pub use product::{product_table, ProductTable};
pub use turn::{differential_matrix, run_pages, run_to_infinity, turn_page};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("laurent generators cannot enter the spectral sequence")]
    LaurentModel,
    #[error("invalid window d = {d}, t_max = {t_max}")]
    BadWindow { d: i64, t_max: i64 },
    #[error("page index {0} is below 2")]
    BadPageIndex(i64),
    #[error("differential for page {spec} applied to page {page}")]
    PageMismatch { page: i64, spec: i64 },
    #[error("differential refers to unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("laurent generator `{0}` must have zero differential")]
    LaurentDifferential(String),
    #[error("d({generator}) has a term at {found:?}; expected bidegree {expected:?}")]
    SpecBidegree {
        generator: String,
        expected: (i64, i64),
        found: (i64, i64),
    },
    #[error("differential specs must be sorted by page with at most one per page")]
    SpecOrder,
    #[error("d_{r} is nonzero but every d_r with r > {d} leaves the column range")]
    NonzeroBeyondDimension { r: i64, d: i64 },
    #[error("differential from {from:?} is nonzero left of the window")]
    ImageOutsideWindow { from: (i64, i64) },
    #[error("image of {from:?} does not lie in the span of cell {to:?}")]
    ImageNotInSpan { from: (i64, i64), to: (i64, i64) },
    #[error("image of a cycle at {from:?} is not a cycle of cell {to:?}")]
    ImageNotACycle { from: (i64, i64), to: (i64, i64) },
    #[error("differential from {from:?} does not send boundaries to boundaries in {to:?}")]
    NotWellDefined { from: (i64, i64), to: (i64, i64) },
    #[error("d∘d is nonzero on cell {from:?}; inconsistent differential specification")]
    DSquaredNonzero { from: (i64, i64) },
    #[error("nonzero product lands left of the window at {at:?}")]
    ProductOutsideWindow { at: (i64, i64) },
    #[error("product of representatives at {at:?} is not a cycle")]
    ProductNotACycle { at: (i64, i64) },
    #[error("cell ({s},{t}) is outside the window")]
    CellOutsideWindow { s: i64, t: i64 },
}
