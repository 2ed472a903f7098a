use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{AlgebraPresentation, Combination, Monomial};
use crate::linalg::{FGAbelianGroup, IntMatrix, Subquotient};

use super::EngineError;

/// Columns `s ∈ [-d, 0]` and rows `t ∈ [0, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub d: i64,
    pub t_max: i64,
}

impl Window {
    pub fn contains(&self, s: i64, t: i64) -> bool {
        (-self.d..=0).contains(&s) && (0..=self.t_max).contains(&t)
    }
}

/// The `index`-th class of the cell at `(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub s: i64,
    pub t: i64,
    pub index: usize,
}

/// An element of a cell given by class coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub s: i64,
    pub t: i64,
    pub coords: Vec<BigInt>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn total_degree(&self) -> i64 {
        self.s + self.t
    }
}

/// One bidegree of a page.
///
/// Internally the cell is a subquotient `Z_r / B_r` of the free group on the
/// `E^2` monomials of its bidegree; `basis_reps` holds one cycle per class.
#[derive(Clone, Debug)]
pub struct Cell {
    pub s: i64,
    pub t: i64,
    pub group: FGAbelianGroup,
    pub basis_reps: Vec<Combination>,
    /// False when a differential touching this cell could not be evaluated
    /// inside the window; the stored data is then stale.
    pub reliable: bool,
    monomials: Vec<Monomial>,
    lattice: Subquotient,
}

impl Cell {
    pub(crate) fn from_lattice(
        s: i64,
        t: i64,
        monomials: Vec<Monomial>,
        mut lattice: Subquotient,
    ) -> Self {
        lattice.prefer_basis_vectors();
        let basis_reps = lattice
            .representatives()
            .iter()
            .map(|v| combination_of(&monomials, v))
            .collect();
        Self {
            s,
            t,
            group: lattice.group().clone(),
            basis_reps,
            reliable: true,
            monomials,
            lattice,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn lattice(&self) -> &Subquotient {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn total_degree(&self) -> i64 {
        self.s + self.t
    }

    /// Coordinates of `c` on the `E^2` monomial basis, or `None` if some term
    /// lies outside this bidegree's basis.
    pub fn vector_of(&self, c: &Combination) -> Option<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.monomials.len()];
        for (m, k) in c.terms() {
            let i = self.monomials.binary_search(m).ok()?;
            v[i] += k;
        }
        Some(v)
    }

    pub fn combination_of(&self, v: &[BigInt]) -> Combination {
        combination_of(&self.monomials, v)
    }

    /// Class coordinates of an `E^2` combination, or `None` when it is not a
    /// cycle for the earlier differentials.
    pub fn class_of(&self, c: &Combination) -> Option<Vec<BigInt>> {
        self.lattice.class_of(&self.vector_of(c)?)
    }

    /// A representative cycle for the given class coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Combination {
        self.combination_of(&self.lattice.lift_class(coords))
    }

    pub fn cycle_basis(&self) -> Vec<Combination> {
        self.lattice
            .cycles()
            .columns()
            .iter()
            .map(|v| self.combination_of(v))
            .collect()
    }

    pub fn boundary_generators(&self) -> Vec<Combination> {
        self.lattice
            .boundaries()
            .columns()
            .iter()
            .map(|v| self.combination_of(v))
            .collect()
    }
}

pub(crate) fn combination_of(monomials: &[Monomial], v: &[BigInt]) -> Combination {
    monomials
        .iter()
        .zip(v)
        .filter(|(_, k)| !k.is_zero())
        .map(|(m, k)| (k.clone(), m.clone()))
        .collect()
}

/// The bigraded page `E^r` over a finite window.
#[derive(Clone, Debug)]
pub struct Page {
    pub(crate) r: i64,
    pub(crate) window: Window,
    pub(crate) presentation: Arc<AlgebraPresentation>,
    pub(crate) cells: BTreeMap<(i64, i64), Cell>,
    pub(crate) stable: bool,
}

impl Page {
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    /// True for the page produced by running past the last possible differential.
    pub fn is_stable(&self) -> bool {
        self.stable
    }

    pub fn cell(&self, s: i64, t: i64) -> Option<&Cell> {
        self.cells.get(&(s, t))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values()
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values().filter(|c| !c.is_zero())
    }

    /// Every class of every reliable cell.
    pub fn classes(&self) -> Vec<ClassId> {
        self.cells
            .values()
            .filter(|c| c.reliable)
            .flat_map(|c| {
                (0..c.group.generator_count()).map(move |index| ClassId {
                    s: c.s,
                    t: c.t,
                    index,
                })
            })
            .collect()
    }

    pub fn representative(&self, id: ClassId) -> Option<&Combination> {
        self.cell(id.s, id.t)?.basis_reps.get(id.index)
    }

    /// Unit coordinate vector for a class.
    pub fn element(&self, id: ClassId) -> Option<Element> {
        let cell = self.cell(id.s, id.t)?;
        let n = cell.group.generator_count();
        (id.index < n).then(|| {
            let mut coords = vec![BigInt::zero(); n];
            coords[id.index] = BigInt::from(1);
            Element {
                s: id.s,
                t: id.t,
                coords,
            }
        })
    }

    /// Largest total degree `J` such that every cell with `s + t <= J` lies
    /// inside the window and is reliable.
    pub fn reliable_degree_bound(&self) -> i64 {
        let edge = self.window.t_max - self.window.d;
        self.cells
            .values()
            .filter(|c| !c.reliable)
            .map(|c| c.total_degree() - 1)
            .fold(edge, i64::min)
    }

    pub fn all_reliable(&self) -> bool {
        self.cells.values().all(|c| c.reliable)
    }
}

/// `E^2` over the window `s ∈ [-d, 0]`, `0 <= t <= t_max`: each cell is free
/// on its normal-form monomials, with `Z/g` in place of `Z` for monomials
/// carrying torsion relations.
pub fn build_initial_page(
    p: &AlgebraPresentation,
    d: i64,
    t_max: i64,
) -> Result<Page, EngineError> {
    if d < 1 || t_max < 0 {
        return Err(EngineError::BadWindow { d, t_max });
    }
    p.validate(Some(d))?;
    if p.has_laurent() {
        return Err(EngineError::LaurentModel);
    }
    let mut cells = BTreeMap::new();
    for s in -d..=0 {
        for t in 0..=t_max {
            let monomials = p.enumerate_basis(s, t)?;
            let n = monomials.len();
            let torsion: Vec<Vec<BigInt>> = monomials
                .iter()
                .enumerate()
                .filter_map(|(j, m)| {
                    p.torsion_modulus(m).map(|g| {
                        let mut v = vec![BigInt::zero(); n];
                        v[j] = g;
                        v
                    })
                })
                .collect();
            let lattice =
                Subquotient::new(IntMatrix::identity(n), IntMatrix::from_columns(n, &torsion))?;
            cells.insert((s, t), Cell::from_lattice(s, t, monomials, lattice));
        }
    }
    Ok(Page {
        r: 2,
        window: Window { d, t_max },
        presentation: Arc::new(p.clone()),
        cells,
        stable: false,
    })
}
