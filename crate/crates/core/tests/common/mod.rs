//! Oracles shared by the integration tests. Nothing here calls the library's
//! linear algebra.

#![allow(dead_code)]

use loopss::algebra::{AlgebraPresentation, GeneratorKind, Monomial};
use loopss::model::{cpn_model, sphere_model, ManifoldModel};
use rand::Rng;

/// Built-in spectral-sequence models exercised by the property suites.
pub fn builtin_models() -> Vec<ManifoldModel> {
    let mut v: Vec<ManifoldModel> = (2..=7).map(|n| sphere_model(n).unwrap()).collect();
    v.extend((1..=3).map(|n| cpn_model(n).unwrap()));
    v
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut total = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][j] * laplace_det(&minor);
            }
            total
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `g_k` = gcd of all `k×k` minors, for `k = 1..=min(rows, cols)`. The
/// invariant factors satisfy `d_1 ⋯ d_k = g_k`.
pub fn gcd_of_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    g = gcd(g, laplace_det(&sub));
                }
            }
            g
        })
        .collect()
}

/// A random small matrix, sometimes built as a product to force low rank and
/// nontrivial invariant factors.
pub fn random_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let entry = |rng: &mut R| -> i64 {
        if rng.gen_bool(0.3) {
            0
        } else {
            rng.gen_range(-9..=9)
        }
    };
    if rng.gen_bool(0.3) {
        let inner = rng.gen_range(1..=3);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..inner).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let b: Vec<Vec<i64>> = (0..inner)
            .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    } else {
        (0..rows)
            .map(|_| (0..cols).map(|_| entry(rng)).collect())
            .collect()
    }
}

/// A random normal-form exponent vector with small exponents.
pub fn random_monomial<R: Rng>(p: &AlgebraPresentation, rng: &mut R) -> Monomial {
    let e = p
        .generators()
        .iter()
        .map(|g| match g.kind {
            GeneratorKind::Exterior => rng.gen_range(0..=1),
            GeneratorKind::Polynomial => rng.gen_range(0..=4),
            GeneratorKind::Laurent => rng.gen_range(-3..=3),
        })
        .collect();
    Monomial::from_exponents(e)
}

/// Total degree computed from the declarations directly.
pub fn degree(p: &AlgebraPresentation, m: &Monomial) -> i64 {
    m.exponents()
        .iter()
        .zip(p.generators())
        .map(|(&e, g)| e * (g.column + g.row))
        .sum()
}

/// Sign of `x·y = ± y·x` for monomials under the Koszul rule on generators:
/// `|x||y|` plus, for each odd generator, the product of its two exponents
/// (reordering copies of one generator introduces no sign).
pub fn swap_sign_parity(p: &AlgebraPresentation, x: &Monomial, y: &Monomial) -> i64 {
    let correction: i64 = x
        .exponents()
        .iter()
        .zip(y.exponents())
        .zip(p.generators())
        .filter(|(_, g)| (g.column + g.row) % 2 != 0)
        .map(|((&a, &b), _)| a * b)
        .sum();
    (degree(p, x) * degree(p, y) + correction).rem_euclid(2)
}
