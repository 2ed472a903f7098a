use std::collections::BTreeMap;

use crate::algebra::{AlgebraPresentation, Combination, GeneratorKind, Monomial};

use super::EngineError;

/// Generator-level data for `d_r`: each listed generator is sent to a
/// combination of monomials; unlisted generators are cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSpec {
    r: i64,
    assignments: BTreeMap<usize, Combination>,
}

impl DifferentialSpec {
    pub fn zero(r: i64) -> Self {
        Self {
            r,
            assignments: BTreeMap::new(),
        }
    }

    pub fn with(mut self, generator: usize, target: Combination) -> Self {
        self.assignments.insert(generator, target);
        self
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn assignments(&self) -> &BTreeMap<usize, Combination> {
        &self.assignments
    }

    pub fn target(&self, generator: usize) -> Option<&Combination> {
        self.assignments.get(&generator)
    }

    pub fn is_zero(&self) -> bool {
        self.assignments.values().all(Combination::is_zero)
    }

    /// Every target term must sit at `(s - r, t + r - 1)` relative to its generator.
    pub fn validate(&self, p: &AlgebraPresentation) -> Result<(), EngineError> {
        if self.r < 2 {
            return Err(EngineError::BadPageIndex(self.r));
        }
        for (&g, target) in &self.assignments {
            let decl = p
                .generators()
                .get(g)
                .ok_or(EngineError::UnknownGenerator(g))?;
            if decl.kind == GeneratorKind::Laurent {
                if target.is_zero() {
                    continue;
                }
                return Err(EngineError::LaurentDifferential(decl.name.clone()));
            }
            let expected = (decl.column - self.r, decl.row + self.r - 1);
            for (m, _) in target.terms() {
                if m.len() != p.generator_count() {
                    return Err(EngineError::UnknownGenerator(m.len()));
                }
                let found = p.bidegree_of(m);
                if found != expected {
                    return Err(EngineError::SpecBidegree {
                        generator: decl.name.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Extends `spec` from generators to the monomial `m` by the graded Leibniz
/// rule `d(xy) = d(x)y + (-1)^|x| x d(y)`, reduced to normal form.
pub fn leibniz_extend(
    spec: &DifferentialSpec,
    m: &Monomial,
    p: &AlgebraPresentation,
) -> Combination {
    let e = m.exponents();
    let mut out = Combination::zero();
    for (i, decl) in p.generators().iter().enumerate() {
        if decl.kind == GeneratorKind::Laurent || e[i] <= 0 {
            continue;
        }
        let Some(dg) = spec.target(i).filter(|c| !c.is_zero()) else {
            continue;
        };
        // m = prefix · g · suffix, with `copies` copies of g already in the prefix.
        for copies in 0..e[i] {
            let mut prefix = vec![0; e.len()];
            prefix[..i].copy_from_slice(&e[..i]);
            prefix[i] = copies;
            let mut suffix = vec![0; e.len()];
            suffix[i] = e[i] - copies - 1;
            suffix[i + 1..].copy_from_slice(&e[i + 1..]);
            let prefix = Monomial::from_exponents(prefix);
            let suffix = Combination::monomial(Monomial::from_exponents(suffix));

            let mut term = Combination::monomial(prefix.clone()).mul(&dg.mul(&suffix, p), p);
            if p.is_odd(&prefix) {
                term = term.scale(&(-1).into());
            }
            out = out.add(&term);
        }
    }
    out.reduce(p)
}

pub fn leibniz_extend_combination(
    spec: &DifferentialSpec,
    c: &Combination,
    p: &AlgebraPresentation,
) -> Combination {
    let mut out = Combination::zero();
    for (m, k) in c.terms() {
        out = out.add(&leibniz_extend(spec, m, p).scale(k));
    }
    out.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorDecl, Relation};

    fn even_sphere(n: i64) -> (AlgebraPresentation, DifferentialSpec) {
        let mut p = AlgebraPresentation::new(
            vec![
                GeneratorDecl::new("a", -n, 0, GeneratorKind::Exterior),
                GeneratorDecl::new("u", 0, n - 1, GeneratorKind::Polynomial),
            ],
            vec![],
        );
        let a2 = p.monomial(&[("a", 2)]).unwrap();
        p = AlgebraPresentation::new(p.generators().to_vec(), vec![Relation::truncation(a2)]);
        let target = Combination::parse("2 a*u^2", &p).unwrap();
        (p, DifferentialSpec::zero(n).with(1, target))
    }

    fn cpn(n: i64) -> (AlgebraPresentation, DifferentialSpec) {
        let gens = vec![
            GeneratorDecl::new("c", -2, 0, GeneratorKind::Polynomial),
            GeneratorDecl::new("y", 0, 1, GeneratorKind::Exterior),
            GeneratorDecl::new("u", 0, 2 * n, GeneratorKind::Polynomial),
        ];
        let mut p = AlgebraPresentation::new(gens, vec![]);
        let top = p.monomial(&[("c", n + 1)]).unwrap();
        p = AlgebraPresentation::new(p.generators().to_vec(), vec![Relation::truncation(top)]);
        let target = Combination::parse(&format!("{} c^{n}*u", n + 1), &p).unwrap();
        (p, DifferentialSpec::zero(2 * n).with(1, target))
    }

    #[test]
    fn odd_powers_hit_twice() {
        for n in [2, 4] {
            let (p, spec) = even_sphere(n);
            let u3 = p.parse_monomial("u^3").unwrap();
            assert_eq!(
                leibniz_extend(&spec, &u3, &p),
                Combination::parse("2 a*u^4", &p).unwrap()
            );
            let u2 = p.parse_monomial("u^2").unwrap();
            assert!(leibniz_extend(&spec, &u2, &p).is_zero());
            assert!(leibniz_extend(&spec, &p.unit(), &p).is_zero());
        }
    }

    #[test]
    fn cpn_transgression_extends() {
        for n in [1, 2, 3] {
            let (p, spec) = cpn(n);
            let yu2 = p.parse_monomial("y*u^2").unwrap();
            let expected = Combination::parse(&format!("{} c^{n}*u^3", n + 1), &p).unwrap();
            assert_eq!(leibniz_extend(&spec, &yu2, &p), expected);
        }
    }

    #[test]
    fn spec_bidegree_checked() {
        let (p, _) = cpn(2);
        let wrong = DifferentialSpec::zero(4).with(1, Combination::parse("c*u", &p).unwrap());
        assert!(matches!(
            wrong.validate(&p),
            Err(EngineError::SpecBidegree { .. })
        ));
        let (_, good) = cpn(2);
        assert!(good.validate(&p).is_ok());
        assert!(DifferentialSpec::zero(1).validate(&p).is_err());
    }
}
