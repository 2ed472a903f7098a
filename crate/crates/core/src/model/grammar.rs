//! Line-oriented model files.
//!
//! ```text
//! # comments run to end of line
//! dim 4
//! base c (-2,0) polynomial
//! fiber y (0,1) exterior
//! fiber u (0,4) polynomial
//! rel 0 c^3
//! diff r=4 d(y) = 3 c^2*u
//! ```
//!
//! `rel` coefficient 0 is a truncation (`m = 0`), `k >= 2` a torsion relation
//! (`k·m = 0`). Monomials are read as normal-form exponent vectors, so factor
//! order in the text does not matter. A `diff` right-hand side may be a
//! `+`-separated list of `[coef] monomial` terms.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use regex::Regex;

use crate::algebra::{
    AlgebraError, AlgebraPresentation, Combination, GeneratorDecl, GeneratorKind, Location,
    Relation,
};
use crate::spectral::DifferentialSpec;

use super::{LineDiagnostic, ModelError};

struct Patterns {
    dim: Regex,
    generator: Regex,
    rel: Regex,
    diff: Regex,
    placeholder: Regex,
    linear: Regex,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| Patterns {
        dim: Regex::new(r"^dim\s+(-?\d+)$").unwrap(),
        generator: Regex::new(
            r"^(base|fiber)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*([A-Za-z]+)$",
        )
        .unwrap(),
        rel: Regex::new(r"^rel\s+(-?\d+)\s+(.+)$").unwrap(),
        diff: Regex::new(r"^diff\s+r\s*=\s*(\d+)\s+d\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*(.+)$").unwrap(),
        placeholder: Regex::new(r"\{([^}]*)\}").unwrap(),
        linear: Regex::new(r"^(-?)(\d*)n([+-]\d+)?$").unwrap(),
    })
}

/// A parsed but not yet interpreted model file.
#[derive(Clone, Debug, Default)]
pub(crate) struct ModelFile {
    pub dim: Option<i64>,
    pub base: Vec<(GeneratorDecl, usize)>,
    pub fiber: Vec<(GeneratorDecl, usize)>,
    pub relations: Vec<(BigInt, String, usize)>,
    pub diffs: Vec<(i64, String, String, usize)>,
}

fn diag(line: usize, message: impl Into<String>) -> LineDiagnostic {
    LineDiagnostic {
        line,
        message: message.into(),
    }
}

pub(crate) fn parse_file(text: &str) -> Result<ModelFile, ModelError> {
    let pat = patterns();
    let mut file = ModelFile::default();
    let mut errors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(c) = pat.dim.captures(content) {
            if file.dim.is_some() {
                errors.push(diag(line, "duplicate `dim`"));
            }
            file.dim = Some(c[1].parse().expect("regex guarantees an integer"));
        } else if let Some(c) = pat.generator.captures(content) {
            let kind = match c[5].parse::<GeneratorKind>() {
                Ok(k) => k,
                Err(e) => {
                    errors.push(diag(line, e.to_string()));
                    continue;
                }
            };
            let (Ok(s), Ok(t)) = (c[3].parse::<i64>(), c[4].parse::<i64>()) else {
                errors.push(diag(line, "bidegree out of range"));
                continue;
            };
            let decl = GeneratorDecl::new(&c[2], s, t, kind);
            if &c[1] == "base" {
                file.base.push((decl, line));
            } else {
                file.fiber.push((decl, line));
            }
        } else if let Some(c) = pat.rel.captures(content) {
            file.relations.push((
                c[1].parse().expect("integer"),
                c[2].trim().to_string(),
                line,
            ));
        } else if let Some(c) = pat.diff.captures(content) {
            let Ok(r) = c[1].parse::<i64>() else {
                errors.push(diag(line, "page index out of range"));
                continue;
            };
            file.diffs
                .push((r, c[2].to_string(), c[3].trim().to_string(), line));
        } else {
            errors.push(diag(line, format!("unrecognized line `{content}`")));
        }
    }
    if errors.is_empty() {
        Ok(file)
    } else {
        Err(ModelError::Invalid(errors))
    }
}

/// Interpreted contents: the combined presentation (base generators first,
/// then fiber generators) plus the differentials.
pub(crate) struct Interpreted {
    pub dim: i64,
    pub base_ring: AlgebraPresentation,
    pub fiber_ring: AlgebraPresentation,
    pub presentation: AlgebraPresentation,
    pub differentials: Vec<DifferentialSpec>,
}

impl ModelFile {
    pub fn interpret(&self) -> Result<Interpreted, ModelError> {
        let mut errors = Vec::new();
        let dim = match self.dim {
            Some(d) if d >= 1 => d,
            Some(d) => {
                errors.push(diag(1, format!("dimension {d} must be positive")));
                1
            }
            None => {
                errors.push(diag(1, "missing `dim` line"));
                1
            }
        };

        let decl_lines: Vec<usize> = self
            .base
            .iter()
            .chain(&self.fiber)
            .map(|(_, l)| *l)
            .collect();
        let generators: Vec<GeneratorDecl> = self
            .base
            .iter()
            .chain(&self.fiber)
            .map(|(g, _)| g.clone())
            .collect();
        let bare = AlgebraPresentation::new(generators.clone(), Vec::new());

        let mut relations = Vec::new();
        let mut relation_lines = Vec::new();
        for (coef, mono, line) in &self.relations {
            match bare.parse_monomial(mono) {
                Ok(m) => {
                    relations.push(Relation::torsion(coef.clone(), m));
                    relation_lines.push(*line);
                }
                Err(e) => errors.push(diag(*line, e.to_string())),
            }
        }
        let presentation = AlgebraPresentation::new(generators, relations);
        if let Err(AlgebraError::Invalid(diags)) = presentation.validate(Some(dim)) {
            for d in diags {
                let line = match d.location {
                    Location::Generator(i, _) => decl_lines[i],
                    Location::Relation(i) => relation_lines[i],
                };
                errors.push(diag(line, d.to_string()));
            }
        }

        let mut by_page: BTreeMap<i64, DifferentialSpec> = BTreeMap::new();
        let mut seen = BTreeMap::new();
        for (r, gen, rhs, line) in &self.diffs {
            let Some(g) = presentation.index_of(gen) else {
                errors.push(diag(*line, format!("unknown generator `{gen}`")));
                continue;
            };
            if let Some(prev) = seen.insert((*r, g), *line) {
                errors.push(diag(
                    *line,
                    format!("d_{r}({gen}) already given on line {prev}"),
                ));
                continue;
            }
            let target = match Combination::parse(rhs, &presentation) {
                Ok(c) => c,
                Err(e) => {
                    errors.push(diag(*line, e.to_string()));
                    continue;
                }
            };
            let single = DifferentialSpec::zero(*r).with(g, target.clone());
            if let Err(e) = single.validate(&presentation) {
                errors.push(diag(*line, e.to_string()));
                continue;
            }
            let spec = by_page
                .remove(r)
                .unwrap_or_else(|| DifferentialSpec::zero(*r));
            by_page.insert(*r, spec.with(g, target));
        }

        if !errors.is_empty() {
            errors.sort_by_key(|d| d.line);
            return Err(ModelError::Invalid(errors));
        }

        let split = |decls: &[(GeneratorDecl, usize)], offset: usize, count: usize| {
            let gens: Vec<GeneratorDecl> = decls.iter().map(|(g, _)| g.clone()).collect();
            let rels = presentation
                .relations()
                .iter()
                .filter(|r| {
                    r.monomial
                        .exponents()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| e == 0 || (offset..offset + count).contains(&i))
                })
                .map(|r| {
                    let e = r.monomial.exponents()[offset..offset + count].to_vec();
                    Relation::torsion(
                        r.coefficient.clone(),
                        crate::algebra::Monomial::from_exponents(e),
                    )
                })
                .collect();
            AlgebraPresentation::new(gens, rels)
        };
        let nb = self.base.len();
        let nf = self.fiber.len();
        Ok(Interpreted {
            dim,
            base_ring: split(&self.base, 0, nb),
            fiber_ring: split(&self.fiber, nb, nf),
            presentation,
            differentials: by_page.into_values().collect(),
        })
    }
}

fn eval_placeholder(expr: &str, n: i64) -> Option<i64> {
    let expr: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(v) = expr.parse::<i64>() {
        return Some(v);
    }
    let c = patterns().linear.captures(&expr)?;
    let sign = if &c[1] == "-" { -1 } else { 1 };
    let coef = if c[2].is_empty() {
        1
    } else {
        c[2].parse::<i64>().ok()?
    };
    let offset = c
        .get(3)
        .map_or(Some(0), |m| m.as_str().parse::<i64>().ok())?;
    Some(sign * coef * n + offset)
}

/// Substitutes `{expr}` placeholders, where `expr` is an integer or a linear
/// form in `n` such as `n`, `-2n`, `2n-2`, `n+1`.
pub fn instantiate_template(template: &str, n: i64) -> Result<String, ModelError> {
    let mut bad = None;
    let out = patterns()
        .placeholder
        .replace_all(template, |c: &regex::Captures<'_>| {
            match eval_placeholder(&c[1], n) {
                Some(v) => v.to_string(),
                None => {
                    bad.get_or_insert_with(|| c[1].to_string());
                    String::new()
                }
            }
        });
    match bad {
        Some(expr) => Err(ModelError::Template(expr)),
        None => Ok(out.into_owned()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placeholders() {
        assert_eq!(eval_placeholder("n", 3), Some(3));
        assert_eq!(eval_placeholder("-2n", 3), Some(-6));
        assert_eq!(eval_placeholder("2n - 2", 3), Some(4));
        assert_eq!(eval_placeholder("n+1", 3), Some(4));
        assert_eq!(eval_placeholder("7", 3), Some(7));
        assert_eq!(eval_placeholder("n*n", 3), None);
        assert_eq!(
            instantiate_template("base a ({-n},0) exterior # {n}", 4).unwrap(),
            "base a (-4,0) exterior # 4"
        );
        assert!(instantiate_template("{m}", 1).is_err());
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        let text = "dim   2\n  base a ( -2 , 0 )  exterior # ι\nfiber u (0, 1) polynomial\nrel 0 a^2\ndiff r = 2 d( u ) =  2 a*u^2\n";
        let f = parse_file(text).unwrap();
        let i = f.interpret().unwrap();
        assert_eq!(i.dim, 2);
        assert_eq!(i.presentation.generator_count(), 2);
        assert_eq!(i.differentials.len(), 1);
        assert_eq!(i.base_ring.relations().len(), 1);
        assert!(i.fiber_ring.relations().is_empty());
    }

    #[test]
    fn errors_are_line_anchored() {
        let text = "dim 2\nbase a (-2,0) exterior\nbogus line\n";
        let Err(ModelError::Invalid(d)) = parse_file(text) else {
            panic!("expected syntax error")
        };
        assert_eq!(d[0].line, 3);

        let text =
            "dim 2\nbase a (-2,0) exterior\nfiber u (0,1) polynomial\ndiff r=2 d(u) = 2 a*u\n";
        let Err(ModelError::Invalid(d)) = parse_file(text).unwrap().interpret() else {
            panic!("expected validation errors")
        };
        // even exterior `a` without `rel 0 a^2`, and a target in the wrong bidegree
        assert_eq!(d.iter().map(|x| x.line).collect::<Vec<_>>(), vec![2, 4]);
    }
}
