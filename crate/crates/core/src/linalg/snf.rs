//! Smith normal form over the integers.
//!
//! The reduction repeatedly moves the entry of smallest absolute value in the
//! unreduced block to the pivot position (ties go to the lowest `(row, col)`),
//! clears its row and column by Euclidean division, and restores the
//! divisibility chain by folding offending rows into the pivot row. The output
//! is a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfResult {
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// The `min(rows, cols)` diagonal entries of `d`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries of `d`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reduction {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[target] += k * row[source]`
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        self.d.add_row_multiple(target, source, k);
        self.u.add_row_multiple(target, source, k);
        self.u_inv.add_col_multiple(source, target, &-k);
    }

    /// `col[target] += k * col[source]`
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        self.d.add_col_multiple(target, source, k);
        self.v.add_col_multiple(target, source, k);
        self.v_inv.add_row_multiple(source, target, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d.get(bi, bj).abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let (m, n) = (self.d.rows(), self.d.cols());
        for k in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pivot(k) else {
                    return;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let p = self.d.get(k, k).clone();

                for i in k + 1..m {
                    let q = self.d.get(i, k).div_floor(&p);
                    self.add_row(i, k, &-q);
                }
                for j in k + 1..n {
                    let q = self.d.get(k, j).div_floor(&p);
                    self.add_col(j, k, &-q);
                }
                let dirty = (k + 1..m).any(|i| !self.d.get(i, k).is_zero())
                    || (k + 1..n).any(|j| !self.d.get(k, j).is_zero());
                if dirty {
                    continue;
                }

                let offender = (k + 1..m)
                    .find(|&i| (k + 1..n).any(|j| !self.d.get(i, j).mod_floor(&p).is_zero()));
                if let Some(i) = offender {
                    self.add_row(k, i, &BigInt::one());
                    continue;
                }
                if p.is_negative() {
                    self.negate_row(k);
                }
                break;
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut red = Reduction {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    red.run();
    SnfResult {
        u: red.u,
        d: red.d,
        v: red.v,
        u_inv: red.u_inv,
        v_inv: red.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(r: &SnfResult) -> Vec<i64> {
        r.diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn check(a: &IntMatrix, r: &SnfResult) {
        assert_eq!(&(&r.u * a) * &r.v, r.d);
        assert_eq!(&r.u * r.u_inverse(), IntMatrix::identity(a.rows()));
        assert_eq!(&r.v * r.v_inverse(), IntMatrix::identity(a.cols()));
    }

    #[test]
    fn coprime_diagonal() {
        let a = IntMatrix::diagonal(&[2, 3]);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert_eq!(diag(&r), vec![1, 6]);
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let r = smith_normal_form(&a);
        assert_eq!(r.d, a);
        assert_eq!(r.u, a);
        assert_eq!(r.v, a);
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert_eq!(diag(&r), vec![2, 4]);
    }

    #[test]
    fn empty_and_zero_shapes() {
        for (m, n) in [(0, 0), (0, 3), (3, 0), (2, 2)] {
            let a = IntMatrix::zeros(m, n);
            let r = smith_normal_form(&a);
            check(&a, &r);
            assert_eq!(r.rank(), 0);
        }
    }

    #[test]
    fn negative_pivot_is_normalized() {
        let a = IntMatrix::from_rows(&[vec![-4, 0], vec![0, -6]]);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert_eq!(diag(&r), vec![2, 12]);
    }
}
