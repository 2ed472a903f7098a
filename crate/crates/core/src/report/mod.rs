//! Rendering of pages (JSON, text and SVG charts, summaries) and the `loopss`
//! command-line driver.

mod chart;
pub mod cli;
mod json;
mod summary;

pub use chart::{arrows, render_chart, render_svg, Arrow};
pub use json::{
    emit_json, emit_json_pages, page_json, CellJson, DifferentialJson, Int, PageJson, WindowJson,
};
pub use summary::render_summary;
