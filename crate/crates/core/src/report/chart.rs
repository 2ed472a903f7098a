use std::fmt::Write as _;

use crate::linalg::IntMatrix;
use crate::spectral::{differential_matrix, DifferentialSpec, Page};

/// One `d_r` between two nonzero reliable cells of a page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub r: i64,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub matrix: IntMatrix,
}

impl Arrow {
    /// `×k` for a map between cyclic cells, `×[[..]]` otherwise.
    pub fn multiplicity(&self) -> String {
        if self.matrix.rows() == 1 && self.matrix.cols() == 1 {
            format!("×{}", self.matrix.get(0, 0))
        } else {
            format!("×{}", self.matrix)
        }
    }
}

/// Every arrow of `d_r` whose source and target are nonzero reliable cells,
/// zero maps included, in source order (column `0` first, then rows upward).
pub fn arrows(page: &Page, spec: &DifferentialSpec) -> Vec<Arrow> {
    if spec.r() != page.r() {
        return Vec::new();
    }
    let r = page.r();
    let mut out: Vec<Arrow> = page
        .nonzero_cells()
        .filter(|c| c.reliable)
        .filter_map(|c| {
            let to = (c.s - r, c.t + r - 1);
            let target = page.cell(to.0, to.1)?;
            if !target.reliable || target.is_zero() {
                return None;
            }
            let matrix = differential_matrix(page, spec, c.s, c.t).ok()?;
            Some(Arrow {
                r,
                from: (c.s, c.t),
                to,
                matrix,
            })
        })
        .collect();
    out.sort_by_key(|a| (-a.from.0, a.from.1));
    out
}

fn label(page: &Page, s: i64, t: i64) -> String {
    match page.cell(s, t) {
        Some(c) if !c.reliable => "?".into(),
        Some(c) if c.is_zero() => ".".into(),
        Some(c) => c.group.to_string(),
        None => ".".into(),
    }
}

fn title(page: &Page) -> String {
    let w = page.window();
    let stable = if page.is_stable() { " = E_inf" } else { "" };
    format!("E_{}{stable}   d = {}, t_max = {}", page.r(), w.d, w.t_max)
}

/// Text chart of one page: columns `s = -d..0` left to right, rows from
/// `t_max` down to `0`. `.` is a zero cell, `?` a cell outside the reliable
/// window. With a nonzero `spec`, the arrows of `d_r` follow the grid.
pub fn render_chart(page: &Page, spec: Option<&DifferentialSpec>) -> String {
    let w = page.window();
    let labels: Vec<Vec<String>> = (0..=w.t_max)
        .rev()
        .map(|t| (-w.d..=0).map(|s| label(page, s, t)).collect())
        .collect();
    let width = labels
        .iter()
        .flatten()
        .map(|l| l.chars().count())
        .chain((-w.d..=0).map(|s| s.to_string().len()))
        .max()
        .unwrap_or(1)
        + 2;
    let tw = w.t_max.to_string().len().max(1) + 1;

    let mut out = String::new();
    writeln!(out, "{}", title(page)).unwrap();
    write!(out, "{:>tw$} |", "t").unwrap();
    for s in -w.d..=0 {
        write!(out, "{:>width$}", s).unwrap();
    }
    out.push('\n');
    writeln!(
        out,
        "{}-+{}",
        "-".repeat(tw),
        "-".repeat(width * (w.d as usize + 1))
    )
    .unwrap();
    for (row, t) in labels.iter().zip((0..=w.t_max).rev()) {
        write!(out, "{:>tw$} |", t).unwrap();
        for l in row {
            write!(out, "{:>width$}", l).unwrap();
        }
        out.push('\n');
    }
    if let Some(spec) = spec.filter(|s| !s.is_zero()) {
        let list = arrows(page, spec);
        writeln!(out, "d_{}:", page.r()).unwrap();
        for a in &list {
            writeln!(
                out,
                "  ({},{}) -> ({},{})  {}",
                a.from.0,
                a.from.1,
                a.to.0,
                a.to.1,
                a.multiplicity()
            )
            .unwrap();
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// The same chart as a standalone SVG document.
pub fn render_svg(page: &Page, spec: Option<&DifferentialSpec>) -> String {
    const CW: i64 = 64;
    const CH: i64 = 28;
    const MARGIN: i64 = 48;
    let w = page.window();
    let cols = w.d + 1;
    let rows = w.t_max + 1;
    let width = MARGIN * 2 + cols * CW;
    let height = MARGIN * 2 + rows * CH;
    let x = |s: i64| MARGIN + (s + w.d) * CW + CW / 2;
    let y = |t: i64| MARGIN + (w.t_max - t) * CH + CH / 2;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#,
        width / 2,
        escape(&title(page))
    )
    .unwrap();
    for s in -w.d..=0 {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" fill="gray">{s}</text>"#,
            x(s),
            height - MARGIN / 2
        )
        .unwrap();
    }
    for t in 0..=w.t_max {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end" fill="gray">{t}</text>"#,
            MARGIN - 8,
            y(t) + 4
        )
        .unwrap();
        for s in -w.d..=0 {
            let l = label(page, s, t);
            if l == "." {
                continue;
            }
            writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                x(s),
                y(t) + 4,
                escape(&l)
            )
            .unwrap();
        }
    }
    if let Some(spec) = spec.filter(|s| !s.is_zero()) {
        for a in arrows(page, spec) {
            let (x1, y1, x2, y2) = (x(a.from.0) - 12, y(a.from.1), x(a.to.0) + 12, y(a.to.1));
            writeln!(
                out,
                r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="middle" fill="blue">{}</text>"#,
                (x1 + x2) / 2,
                (y1 + y2) / 2 - 3,
                escape(&a.multiplicity())
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
