use std::fmt::Write as _;

use crate::spectral::Page;

/// One line per nonzero reliable cell, with its representatives, followed by
/// the reliable total-degree bound.
pub fn render_summary(page: &Page) -> String {
    let p = page.presentation();
    let mut out = String::new();
    let stable = if page.is_stable() { " (stable)" } else { "" };
    writeln!(out, "E_{}{stable}", page.r()).unwrap();
    let mut cells: Vec<_> = page.nonzero_cells().filter(|c| c.reliable).collect();
    cells.sort_by_key(|c| (c.total_degree(), -c.s));
    for c in cells {
        let reps: Vec<String> = c.basis_reps.iter().map(|r| r.format(p)).collect();
        writeln!(
            out,
            "  deg {:>3}  ({},{})  {}  [{}]",
            c.total_degree(),
            c.s,
            c.t,
            c.group,
            reps.join(", ")
        )
        .unwrap();
    }
    writeln!(
        out,
        "  reliable through total degree {}",
        page.reliable_degree_bound()
    )
    .unwrap();
    out
}
