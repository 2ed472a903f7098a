use std::fmt;

use crate::algebra::{AlgebraPresentation, GeneratorDecl, GeneratorKind, Monomial};

/// `Λ[a] ⊗ Z[t, t^-1]` with `a` at `(-1, 0)` and `t` laurent at `(0, 0)`.
/// The circle is not simply connected; its loop homology comes from
/// `LS^1 ≃ S^1 × Z` directly, with no spectral sequence.
pub fn circle_loop_homology() -> AlgebraPresentation {
    AlgebraPresentation::new(
        vec![
            GeneratorDecl::new("a", -1, 0, GeneratorKind::Exterior),
            GeneratorDecl::new("t", 0, 0, GeneratorKind::Laurent),
        ],
        Vec::new(),
    )
}

/// One total degree of a presentation with laurent generators. Each family
/// `m·t^k` (`k ∈ Z`) contributes a countable free basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePiece {
    pub total_degree: i64,
    /// Non-laurent part `m` of each family, formatted.
    pub families: Vec<String>,
    laurent: Vec<String>,
}

impl AdditivePiece {
    pub fn is_zero(&self) -> bool {
        self.families.is_empty()
    }

    /// Basis family strings such as `a*t^k`.
    pub fn basis_families(&self) -> Vec<String> {
        let suffix = self
            .laurent
            .iter()
            .map(|g| format!("{g}^k"))
            .collect::<Vec<_>>()
            .join("*");
        self.families
            .iter()
            .map(|m| match (m.as_str(), suffix.is_empty()) {
                (_, true) => m.clone(),
                ("1", false) => suffix.clone(),
                (_, false) => format!("{m}*{suffix}"),
            })
            .collect()
    }
}

impl fmt::Display for AdditivePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(
            f,
            "free, countable basis indexed by k: {{{}}}",
            self.basis_families().join(", ")
        )
    }
}

/// Additive piece in total degree `j` of a presentation whose only
/// degree-zero generators are laurent and which carries no relations on them.
pub fn laurent_piece(p: &AlgebraPresentation, d: i64, j: i64) -> AdditivePiece {
    let keep: Vec<usize> = (0..p.generator_count())
        .filter(|&i| p.generators()[i].kind != GeneratorKind::Laurent)
        .collect();
    let reduced = AlgebraPresentation::new(
        keep.iter().map(|&i| p.generators()[i].clone()).collect(),
        p.relations()
            .iter()
            .map(|r| {
                crate::algebra::Relation::torsion(
                    r.coefficient.clone(),
                    Monomial::from_exponents(
                        keep.iter().map(|&i| r.monomial.exponents()[i]).collect(),
                    ),
                )
            })
            .collect(),
    );
    let mut families = Vec::new();
    for s in (-d..=0).rev() {
        let t = j - s;
        if t < 0 {
            continue;
        }
        for m in reduced
            .enumerate_basis(s, t)
            .expect("laurent generators removed")
        {
            families.push(reduced.format_monomial(&m));
        }
    }
    AdditivePiece {
        total_degree: j,
        families,
        laurent: p
            .generators()
            .iter()
            .filter(|g| g.kind == GeneratorKind::Laurent)
            .map(|g| g.name.clone())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_pieces() {
        let p = circle_loop_homology();
        p.validate(Some(1)).unwrap();
        assert_eq!(laurent_piece(&p, 1, 0).basis_families(), vec!["t^k"]);
        assert_eq!(laurent_piece(&p, 1, -1).basis_families(), vec!["a*t^k"]);
        assert!(laurent_piece(&p, 1, 1).is_zero());
        assert!(laurent_piece(&p, 1, -2).is_zero());
        assert_eq!(
            laurent_piece(&p, 1, 0).to_string(),
            "free, countable basis indexed by k: {t^k}"
        );
    }
}
