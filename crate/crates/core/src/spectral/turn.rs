//! Page turning.
//!
//! A cell of `E^r` is stored as `Z_r / B_r` inside the free group on its `E^2`
//! monomials. Turning the page with `d_r`:
//!
//! * `Z_{r+1}` is the preimage of `B_r(target)` under `d_r` restricted to `Z_r`;
//! * `B_{r+1}` adds the images of `Z_r(source)`.
//!
//! `d_r` is evaluated on lifts through the Leibniz extension of the
//! generator-level spec, so the new representatives stay `E^2` combinations.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::Combination;
use crate::linalg::{column_span_basis, kernel_modulo, IntMatrix, Subquotient};

use super::{leibniz_extend_combination, Cell, DifferentialSpec, EngineError, Page};

enum Outgoing {
    Zero,
    /// Lands above `t_max`; cannot be evaluated.
    Escapes,
    /// Images of the cycle basis as `E^2` vectors in the target cell.
    Into((i64, i64), Vec<Vec<BigInt>>),
}

impl Outgoing {
    fn is_zero(&self) -> bool {
        matches!(self, Outgoing::Zero)
    }
}

fn target_of(r: i64, s: i64, t: i64) -> (i64, i64) {
    (s - r, t + r - 1)
}

fn source_of(r: i64, s: i64, t: i64) -> (i64, i64) {
    (s + r, t - r + 1)
}

fn outgoing(page: &Page, spec: &DifferentialSpec, cell: &Cell) -> Result<Outgoing, EngineError> {
    let p = page.presentation();
    let images: Vec<Combination> = cell
        .cycle_basis()
        .iter()
        .map(|z| leibniz_extend_combination(spec, z, p))
        .collect();
    if images.iter().all(Combination::is_zero) {
        return Ok(Outgoing::Zero);
    }
    let (ts, tt) = target_of(page.r, cell.s, cell.t);
    if ts < -page.window.d {
        return Err(EngineError::ImageOutsideWindow {
            from: (cell.s, cell.t),
        });
    }
    if tt > page.window.t_max {
        return Ok(Outgoing::Escapes);
    }
    let target = page.cell(ts, tt).expect("target inside window");
    let vectors = images
        .iter()
        .map(|img| target.vector_of(img))
        .collect::<Option<Vec<_>>>()
        .ok_or(EngineError::ImageNotInSpan {
            from: (cell.s, cell.t),
            to: (ts, tt),
        })?;
    Ok(Outgoing::Into((ts, tt), vectors))
}

/// Matrix of `d_r` on class coordinates, from the cell at `(s, t)` to the cell
/// at `(s - r, t + r - 1)`. Columns follow the source classes; torsion rows are
/// reduced modulo their order. A target left of the window yields zero rows.
pub fn differential_matrix(
    page: &Page,
    spec: &DifferentialSpec,
    s: i64,
    t: i64,
) -> Result<IntMatrix, EngineError> {
    if spec.r() != page.r {
        return Err(EngineError::PageMismatch {
            page: page.r,
            spec: spec.r(),
        });
    }
    let p = page.presentation();
    let source = page
        .cell(s, t)
        .ok_or(EngineError::CellOutsideWindow { s, t })?;
    let images: Vec<Combination> = source
        .basis_reps
        .iter()
        .map(|z| leibniz_extend_combination(spec, z, p))
        .collect();
    let (ts, tt) = target_of(page.r, s, t);
    let Some(target) = page.cell(ts, tt) else {
        if images.iter().all(Combination::is_zero) {
            return Ok(IntMatrix::zeros(0, images.len()));
        }
        return Err(EngineError::ImageOutsideWindow { from: (s, t) });
    };
    let mut columns = Vec::with_capacity(images.len());
    for img in &images {
        let coords = target.class_of(img).ok_or(EngineError::ImageNotInSpan {
            from: (s, t),
            to: (ts, tt),
        })?;
        columns.push(coords);
    }
    Ok(IntMatrix::from_columns(
        target.group.generator_count(),
        &columns,
    ))
}

/// `E^{r+1}` from `E^r` and the generator-level `d_r`.
///
/// Checks that `d_r` is well defined on `E^r` (cycles map to cycles,
/// boundaries to boundaries) and that `d_r ∘ d_r = 0` wherever both steps stay
/// inside the window. Cells whose differentials leave the top of the window
/// become unreliable and keep their previous data.
pub fn turn_page(page: &Page, spec: &DifferentialSpec) -> Result<Page, EngineError> {
    if spec.r() != page.r {
        return Err(EngineError::PageMismatch {
            page: page.r,
            spec: spec.r(),
        });
    }
    let p = page.presentation();
    spec.validate(p)?;
    let r = page.r;
    let window = page.window;

    if spec.is_zero() {
        let mut next = page.clone();
        next.r += 1;
        next.stable = false;
        return Ok(next);
    }

    let mut out: BTreeMap<(i64, i64), Outgoing> = BTreeMap::new();
    for (&key, cell) in &page.cells {
        out.insert(key, outgoing(page, spec, cell)?);
    }

    let mut unreliable = BTreeMap::new();
    for (&(s, t), cell) in &page.cells {
        let outgoing_blocked = match &out[&(s, t)] {
            Outgoing::Zero => false,
            Outgoing::Escapes => true,
            Outgoing::Into(tgt, _) => !page.cells[tgt].reliable,
        };
        let incoming_blocked = page
            .cell(source_of(r, s, t).0, source_of(r, s, t).1)
            .is_some_and(|src| !src.reliable && !out[&(src.s, src.t)].is_zero());
        unreliable.insert(
            (s, t),
            !cell.reliable || outgoing_blocked || incoming_blocked,
        );
    }

    for (&(s, t), cell) in &page.cells {
        if unreliable[&(s, t)] {
            continue;
        }
        let Outgoing::Into(tgt, images) = &out[&(s, t)] else {
            continue;
        };
        let target = &page.cells[tgt];
        for v in images {
            if target.lattice().class_map().cycle_coordinates(v).is_none() {
                return Err(EngineError::ImageNotACycle {
                    from: (s, t),
                    to: *tgt,
                });
            }
        }
        for b in cell.boundary_generators() {
            let img = leibniz_extend_combination(spec, &b, p);
            if !img.is_zero()
                && !target
                    .vector_of(&img)
                    .is_some_and(|v| target.lattice().is_boundary(&v))
            {
                return Err(EngineError::NotWellDefined {
                    from: (s, t),
                    to: *tgt,
                });
            }
        }
        let (ss, st) = target_of(r, tgt.0, tgt.1);
        for v in images {
            let dd = leibniz_extend_combination(spec, &target.combination_of(v), p);
            if dd.is_zero() {
                continue;
            }
            if ss < -window.d {
                return Err(EngineError::DSquaredNonzero { from: (s, t) });
            }
            let Some(second) = page.cell(ss, st).filter(|c| c.reliable) else {
                continue;
            };
            if !second
                .vector_of(&dd)
                .is_some_and(|w| second.lattice().is_boundary(&w))
            {
                return Err(EngineError::DSquaredNonzero { from: (s, t) });
            }
        }
    }

    let mut cells = BTreeMap::new();
    for (&(s, t), cell) in &page.cells {
        if unreliable[&(s, t)] {
            let mut stale = cell.clone();
            stale.reliable = false;
            cells.insert((s, t), stale);
            continue;
        }
        let lattice = cell.lattice();
        let mut changed = false;

        let cycles = match &out[&(s, t)] {
            Outgoing::Into(tgt, images) => {
                changed = true;
                let target = &page.cells[tgt];
                let w = IntMatrix::from_columns(target.monomials().len(), images);
                let basis = kernel_modulo(&w, target.lattice().boundaries());
                lattice.cycles() * &basis
            }
            _ => lattice.cycles().clone(),
        };

        let (ss, st) = source_of(r, s, t);
        let boundaries = match page.cell(ss, st).map(|src| &out[&(src.s, src.t)]) {
            Some(Outgoing::Into(_, images)) => {
                changed = true;
                let incoming = IntMatrix::from_columns(cell.monomials().len(), images);
                column_span_basis(&lattice.boundaries().hstack(&incoming))
            }
            _ => lattice.boundaries().clone(),
        };

        if !changed {
            cells.insert((s, t), cell.clone());
            continue;
        }
        let lattice = Subquotient::new(cycles, boundaries)?;
        cells.insert(
            (s, t),
            Cell::from_lattice(s, t, cell.monomials().to_vec(), lattice),
        );
    }

    Ok(Page {
        r: r + 1,
        window,
        presentation: page.presentation.clone(),
        cells,
        stable: false,
    })
}

/// Every page from `page` through the stable one. Pages without a supplied
/// spec turn with `d_r = 0`. Once `r > d` every differential leaves the
/// column range `[-d, 0]`, so `E^{d+1}` is `E^∞`.
pub fn run_pages(page: &Page, specs: &[DifferentialSpec]) -> Result<Vec<Page>, EngineError> {
    let d = page.window.d;
    if specs.windows(2).any(|w| w[0].r() >= w[1].r()) {
        return Err(EngineError::SpecOrder);
    }
    for spec in specs {
        if spec.r() < page.r && !spec.is_zero() {
            return Err(EngineError::PageMismatch {
                page: page.r,
                spec: spec.r(),
            });
        }
        if spec.r() > d && !spec.is_zero() {
            return Err(EngineError::NonzeroBeyondDimension { r: spec.r(), d });
        }
    }
    let mut pages = vec![page.clone()];
    for r in page.r..=d {
        let spec = specs
            .iter()
            .find(|s| s.r() == r)
            .cloned()
            .unwrap_or_else(|| DifferentialSpec::zero(r));
        let next = turn_page(pages.last().expect("nonempty"), &spec)?;
        pages.push(next);
    }
    pages.last_mut().expect("nonempty").stable = true;
    Ok(pages)
}

/// The stable page `E^{d+1} = E^∞` over the reliable part of the window.
pub fn run_to_infinity(page: &Page, specs: &[DifferentialSpec]) -> Result<Page, EngineError> {
    Ok(run_pages(page, specs)?.pop().expect("nonempty"))
}
