use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, FGAbelianGroup, IntMatrix, LinalgError};

/// Basis of `{v : a·v = 0}` read off from the columns of `V` that face the
/// zero diagonal entries of the Smith form.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// A basis (as matrix columns) of the subgroup of `Z^rows` spanned by the columns of `a`.
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let cols: Vec<Vec<BigInt>> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            snf.u_inverse()
                .column(i)
                .into_iter()
                .map(|x| x * d)
                .collect()
        })
        .collect();
    IntMatrix::from_columns(a.rows(), &cols)
}

/// Basis (as columns of an `a.cols() × k` matrix) of `{x : a·x ∈ span(modulo)}`.
pub fn kernel_modulo(a: &IntMatrix, modulo: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), modulo.rows(), "kernel_modulo row mismatch");
    let m = a.cols();
    let stacked = a.hstack(modulo);
    let kernel = kernel_basis(&stacked);
    let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..m].to_vec()).collect();
    column_span_basis(&IntMatrix::from_columns(m, &projected))
}

/// Coordinates on a subquotient `Z / B` of `Z^ambient`.
///
/// A vector of the cycle lattice `Z` is sent to its class coordinates: free
/// coordinates first, then torsion coordinates reduced into `[0, t_i)`. The
/// cycle lattice need not be saturated, so the map is `U` followed by an exact
/// division step and then an integer projection.
#[derive(Clone, Debug)]
pub struct ClassMap {
    lift: IntMatrix,
    divisors: Vec<BigInt>,
    basis_change: IntMatrix,
    project: IntMatrix,
    moduli: Vec<Option<BigInt>>,
}

impl ClassMap {
    pub fn ambient_dim(&self) -> usize {
        self.lift.cols()
    }

    pub fn class_count(&self) -> usize {
        self.project.rows()
    }

    pub fn moduli(&self) -> &[Option<BigInt>] {
        &self.moduli
    }

    /// Coordinates of `v` in the cycle basis, or `None` when `v` is not in the cycle lattice.
    pub fn cycle_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        let w = self.lift.mul_vec(v);
        let m = self.divisors.len();
        if w[m..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut scaled = Vec::with_capacity(m);
        for (x, d) in w[..m].iter().zip(&self.divisors) {
            let (q, r) = x.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            scaled.push(q);
        }
        Some(self.basis_change.mul_vec(&scaled))
    }

    /// Class coordinates of a cycle, or `None` when `v` is not a cycle.
    pub fn apply(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let alpha = self.cycle_coordinates(v)?;
        Some(self.reduce(self.project.mul_vec(&alpha)))
    }

    pub fn reduce(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        for (x, m) in coords.iter_mut().zip(&self.moduli) {
            if let Some(m) = m {
                *x = x.mod_floor(m);
            }
        }
        coords
    }

    /// The map as a single integer matrix on ambient coordinates. Available
    /// when the cycle lattice is saturated (always true for kernels of
    /// integer matrices).
    pub fn as_matrix(&self) -> Option<IntMatrix> {
        if !self.divisors.iter().all(One::is_one) {
            return None;
        }
        let m = self.divisors.len();
        let rows: Vec<usize> = (0..m).collect();
        let top = self.lift.select_rows(&rows);
        Some(&(&self.project * &self.basis_change) * &top)
    }

    fn scale_row(&mut self, i: usize, k: &BigInt) {
        let modulus = self.moduli[i].clone();
        for j in 0..self.project.cols() {
            let mut x = self.project.get(i, j) * k;
            if let Some(m) = &modulus {
                x = x.mod_floor(m);
            }
            self.project.set(i, j, x);
        }
    }
}

/// The subquotient `Z / B` of `Z^ambient` for a cycle lattice `Z` (given by a
/// basis) and a boundary lattice `B ⊆ Z` (given by generators).
#[derive(Clone, Debug)]
pub struct Subquotient {
    cycles: IntMatrix,
    boundaries: IntMatrix,
    group: FGAbelianGroup,
    class_map: ClassMap,
    representatives: Vec<Vec<BigInt>>,
}

impl Subquotient {
    pub fn new(cycles: IntMatrix, boundaries: IntMatrix) -> Result<Self, LinalgError> {
        let n = cycles.rows();
        if boundaries.rows() != n {
            return Err(LinalgError::DimensionMismatch {
                op: "subquotient",
                left: (n, cycles.cols()),
                right: (boundaries.rows(), boundaries.cols()),
            });
        }
        let m = cycles.cols();
        let snf_c = smith_normal_form(&cycles);
        if snf_c.rank() != m {
            return Err(LinalgError::RankDeficientBasis);
        }
        let partial = ClassMap {
            lift: snf_c.u.clone(),
            divisors: snf_c.diagonal(),
            basis_change: snf_c.v.clone(),
            project: IntMatrix::zeros(0, m),
            moduli: Vec::new(),
        };

        let mut coords = Vec::with_capacity(boundaries.cols());
        for (j, b) in boundaries.columns().into_iter().enumerate() {
            coords.push(
                partial
                    .cycle_coordinates(&b)
                    .ok_or(LinalgError::BoundaryNotInCycles(j))?,
            );
        }
        let relations = IntMatrix::from_columns(m, &coords);
        let snf_x = smith_normal_form(&relations);
        let diag = snf_x.diagonal();
        let factor = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);

        let free: Vec<usize> = (0..m).filter(|&i| factor(i).is_zero()).collect();
        let torsion: Vec<usize> = (0..m)
            .filter(|&i| {
                let f = factor(i);
                !f.is_zero() && !f.is_one()
            })
            .collect();
        let order: Vec<usize> = free.iter().chain(&torsion).copied().collect();

        let mut moduli: Vec<Option<BigInt>> = vec![None; free.len()];
        moduli.extend(torsion.iter().map(|&i| Some(factor(i))));
        let representatives = order
            .iter()
            .map(|&i| cycles.mul_vec(&snf_x.u_inverse().column(i)))
            .collect();
        let group = FGAbelianGroup::new(free.len(), torsion.iter().map(|&i| factor(i)).collect())?;

        let mut class_map = ClassMap {
            project: snf_x.u.select_rows(&order),
            moduli,
            ..partial
        };
        for i in free.len()..order.len() {
            class_map.scale_row(i, &BigInt::one());
        }

        Ok(Self {
            cycles,
            boundaries,
            group,
            class_map,
            representatives,
        })
    }

    /// `Z^n` modulo nothing: every vector is a cycle and its own class.
    pub fn free(n: usize) -> Self {
        Self::new(IntMatrix::identity(n), IntMatrix::zeros(n, 0))
            .expect("identity lattice is a valid subquotient")
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn class_map(&self) -> &ClassMap {
        &self.class_map
    }

    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.representatives
    }

    pub fn cycles(&self) -> &IntMatrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &IntMatrix {
        &self.boundaries
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.rows()
    }

    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.class_map.apply(v)
    }

    /// True when `v` is a cycle with zero class.
    pub fn is_boundary(&self, v: &[BigInt]) -> bool {
        self.class_of(v)
            .is_some_and(|c| c.iter().all(Zero::is_zero))
    }

    /// Reassembles a cycle from class coordinates using the stored representatives.
    pub fn lift_class(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_dim()];
        for (c, rep) in coords.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(rep) {
                *o += c * x;
            }
        }
        out
    }

    /// Replaces representatives by standard basis vectors wherever some basis
    /// vector represents a unit multiple of a single class, rescaling that
    /// class coordinate so the basis vector maps to exactly `e_i`.
    pub fn prefer_basis_vectors(&mut self) {
        let n = self.ambient_dim();
        for i in 0..self.group.generator_count() {
            for j in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                let Some(c) = self.class_map.apply(&e) else {
                    continue;
                };
                if c.iter().enumerate().any(|(k, x)| k != i && !x.is_zero()) {
                    continue;
                }
                let unit = &c[i];
                let inverse = match self.group.modulus(i) {
                    None if unit.abs().is_one() => unit.clone(),
                    None => continue,
                    Some(t) => {
                        let eg = unit.extended_gcd(t);
                        if !eg.gcd.abs().is_one() {
                            continue;
                        }
                        (eg.x * eg.gcd).mod_floor(t)
                    }
                };
                if !inverse.is_one() {
                    self.class_map.scale_row(i, &inverse);
                }
                self.representatives[i] = e;
                break;
            }
        }
    }
}

/// `ker(d_out) / im(d_in)` for a pair of composable integer matrices.
pub fn homology_of_pair(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<Subquotient, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "homology_of_pair",
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    if !(d_out * d_in).is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    let middle = d_in.rows();
    let cycles = IntMatrix::from_columns(middle, &kernel_basis(d_out));
    Subquotient::new(cycles, d_in.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::from_rows(&[vec![2]])).is_empty());
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 3)).len(), 3);
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, -1]) || k[0] == big(&[-1, 1]));
    }

    #[test]
    fn homology_examples() {
        let z3 = IntMatrix::zeros(3, 3);
        let h = homology_of_pair(&z3, &z3).unwrap();
        assert_eq!(h.group(), &FGAbelianGroup::free(3));

        let h =
            homology_of_pair(&IntMatrix::from_rows(&[vec![2]]), &IntMatrix::zeros(1, 1)).unwrap();
        assert_eq!(h.group().torsion(), big(&[2]).as_slice());
        assert_eq!(h.group().rank(), 0);

        let h =
            homology_of_pair(&IntMatrix::from_rows(&[vec![3]]), &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.group().torsion(), big(&[3]).as_slice());

        let h =
            homology_of_pair(&IntMatrix::zeros(1, 1), &IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(h.group().is_trivial());
    }

    #[test]
    fn rejects_non_complex() {
        let d_in = IntMatrix::from_rows(&[vec![1]]);
        let d_out = IntMatrix::from_rows(&[vec![1]]);
        assert!(matches!(
            homology_of_pair(&d_in, &d_out),
            Err(LinalgError::NotAComplex)
        ));
        assert!(homology_of_pair(&IntMatrix::zeros(2, 1), &IntMatrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn class_map_matrix_for_saturated_kernel() {
        // ker [1 1] / 0
        let h = homology_of_pair(
            &IntMatrix::zeros(2, 0),
            &IntMatrix::from_rows(&[vec![1, 1]]),
        )
        .unwrap();
        let m = h.class_map().as_matrix().unwrap();
        let v = big(&[5, -5]);
        assert_eq!(m.mul_vec(&v), h.class_of(&v).unwrap());
        assert!(h.class_of(&big(&[1, 0])).is_none());
    }

    #[test]
    fn non_saturated_cycles() {
        // Z = 2Z inside Z, B = 6Z: quotient Z/3 and 1 is not a cycle.
        let sq = Subquotient::new(
            IntMatrix::from_rows(&[vec![2]]),
            IntMatrix::from_rows(&[vec![6]]),
        )
        .unwrap();
        assert_eq!(sq.group().torsion(), big(&[3]).as_slice());
        assert!(sq.class_of(&big(&[1])).is_none());
        assert!(sq.is_boundary(&big(&[12])));
        assert!(sq.class_map().as_matrix().is_none());
    }

    #[test]
    fn prefers_unit_vectors() {
        // Z^2 / <(1, 1)>: e_0 and e_1 both represent the generator.
        let mut sq = Subquotient::new(
            IntMatrix::identity(2),
            IntMatrix::from_rows(&[vec![1], vec![1]]),
        )
        .unwrap();
        sq.prefer_basis_vectors();
        assert_eq!(sq.group(), &FGAbelianGroup::free(1));
        assert_eq!(sq.representatives()[0], big(&[1, 0]));
        assert_eq!(sq.class_of(&big(&[1, 0])).unwrap(), big(&[1]));
        assert_eq!(sq.class_of(&big(&[0, 1])).unwrap(), big(&[-1]));
    }

    #[test]
    fn kernel_modulo_basic() {
        // {x : 2x ∈ 4Z} = 2Z
        let k = kernel_modulo(
            &IntMatrix::from_rows(&[vec![2]]),
            &IntMatrix::from_rows(&[vec![4]]),
        );
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0).abs(), BigInt::from(2));
    }
}
