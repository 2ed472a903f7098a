use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Diagnostic, Location, Monomial, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Squares to zero. Odd total degree, or even with an explicit `g^2 = 0` relation.
    Exterior,
    Polynomial,
    /// Invertible, total degree zero, never differentiated.
    Laurent,
}

impl FromStr for GeneratorKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exterior" => Ok(Self::Exterior),
            "polynomial" => Ok(Self::Polynomial),
            "laurent" => Ok(Self::Laurent),
            other => Err(AlgebraError::UnknownKind(other.to_string())),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exterior => "exterior",
            Self::Polynomial => "polynomial",
            Self::Laurent => "laurent",
        })
    }
}

/// A generator placed at bidegree `(column, row)`: `column <= 0` is the
/// (negated) cohomological degree on the base, `row >= 0` the fiber degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorDecl {
    pub name: String,
    pub column: i64,
    pub row: i64,
    pub kind: GeneratorKind,
}

impl GeneratorDecl {
    pub fn new(name: impl Into<String>, column: i64, row: i64, kind: GeneratorKind) -> Self {
        Self {
            name: name.into(),
            column,
            row,
            kind,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.column + self.row
    }

    pub fn is_odd(&self) -> bool {
        self.total_degree().rem_euclid(2) == 1
    }
}

/// `coefficient · monomial = 0`. A zero coefficient kills the monomial outright.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub coefficient: BigInt,
    pub monomial: Monomial,
}

impl Relation {
    pub fn truncation(monomial: Monomial) -> Self {
        Self {
            coefficient: BigInt::zero(),
            monomial,
        }
    }

    pub fn torsion(coefficient: impl Into<BigInt>, monomial: Monomial) -> Self {
        Self {
            coefficient: coefficient.into(),
            monomial,
        }
    }

    pub fn is_truncation(&self) -> bool {
        self.coefficient.is_zero()
    }
}

/// A bigraded-commutative algebra over `Z` presented by generators and
/// monomial-torsion relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgebraPresentation {
    generators: Vec<GeneratorDecl>,
    relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn new(generators: Vec<GeneratorDecl>, relations: Vec<Relation>) -> Self {
        Self {
            generators,
            relations,
        }
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn has_laurent(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.kind == GeneratorKind::Laurent)
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.generators.len())
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        Monomial::generator(self.generators.len(), index)
    }

    /// Builds a monomial from `(name, exponent)` pairs.
    pub fn monomial(&self, factors: &[(&str, i64)]) -> Result<Monomial, AlgebraError> {
        let mut e = vec![0; self.generators.len()];
        for (name, exp) in factors {
            let i = self
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
            e[i] += exp;
        }
        Ok(Monomial::from_exponents(e))
    }

    /// Parses `g1^e1*g2^e2` (or `1`). Factor order is irrelevant: the result
    /// is the normal-form exponent vector.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial, AlgebraError> {
        let text = text.trim();
        if text == "1" {
            return Ok(self.unit());
        }
        let mut e = vec![0; self.generators.len()];
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, x)) => {
                    let exp = x
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| AlgebraError::BadMonomial(text.to_string()))?;
                    (n.trim(), exp)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(AlgebraError::BadMonomial(text.to_string()));
            }
            let i = self
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
            e[i] += exp;
        }
        Ok(Monomial::from_exponents(e))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn bidegree_of(&self, m: &Monomial) -> (i64, i64) {
        m.exponents()
            .iter()
            .zip(&self.generators)
            .fold((0, 0), |(s, t), (&e, g)| (s + e * g.column, t + e * g.row))
    }

    pub fn total_degree(&self, m: &Monomial) -> i64 {
        let (s, t) = self.bidegree_of(m);
        s + t
    }

    /// Parity of the total degree.
    pub fn is_odd(&self, m: &Monomial) -> bool {
        self.total_degree(m).rem_euclid(2) == 1
    }

    fn divides(&self, small: &Monomial, big: &Monomial) -> bool {
        small
            .exponents()
            .iter()
            .zip(big.exponents())
            .zip(&self.generators)
            .all(|((a, b), g)| g.kind == GeneratorKind::Laurent || a <= b)
    }

    /// True when `m` is zero in the algebra: an exterior exponent above one or
    /// a truncation monomial dividing it.
    pub fn is_killed(&self, m: &Monomial) -> bool {
        let exterior_overflow = m
            .exponents()
            .iter()
            .zip(&self.generators)
            .any(|(&e, g)| g.kind == GeneratorKind::Exterior && e > 1);
        exterior_overflow
            || self
                .relations
                .iter()
                .any(|r| r.is_truncation() && self.divides(&r.monomial, m))
    }

    /// gcd of the torsion coefficients whose monomials divide `m`, if any apply.
    pub fn torsion_modulus(&self, m: &Monomial) -> Option<BigInt> {
        self.relations
            .iter()
            .filter(|r| !r.is_truncation() && self.divides(&r.monomial, m))
            .map(|r| r.coefficient.abs())
            .reduce(|a, b| a.gcd(&b))
    }

    /// Product of two normal-form monomials with its Koszul sign, or `None`
    /// when the product vanishes.
    ///
    /// The sign counts the odd–odd generator transpositions needed to sort
    /// `m1·m2` into declaration order; equal generators commute without sign.
    pub fn monomial_mul(&self, m1: &Monomial, m2: &Monomial) -> Option<(Sign, Monomial)> {
        let e1 = m1.exponents();
        let e2 = m2.exponents();
        let product: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
        let product = Monomial::from_exponents(product);
        if self.is_killed(&product) {
            return None;
        }
        // For every odd generator j of m2, count odd exponent mass of m1 on
        // generators declared after j.
        let mut odd_suffix = 0i64;
        let mut transpositions = 0i64;
        for j in (0..self.generators.len()).rev() {
            if self.generators[j].is_odd() {
                transpositions += e2[j] * odd_suffix;
                odd_suffix += e1[j];
            }
        }
        Some((
            Sign::from_parity(transpositions.rem_euclid(2) == 1),
            product,
        ))
    }

    /// Reduces `coef · m` modulo the relations: zero when `m` is killed, else
    /// `coef` taken into `[0, g)` for the applicable torsion gcd `g`.
    pub fn normal_form_reduce(&self, coef: &BigInt, m: &Monomial) -> Option<(BigInt, Monomial)> {
        if coef.is_zero() || self.is_killed(m) {
            return None;
        }
        let coef = match self.torsion_modulus(m) {
            Some(g) => coef.mod_floor(&g),
            None => coef.clone(),
        };
        (!coef.is_zero()).then(|| (coef, m.clone()))
    }

    /// Normal-form monomials of bidegree exactly `(s, t)` that are not killed,
    /// in graded-lex order.
    pub fn enumerate_basis(&self, s: i64, t: i64) -> Result<Vec<Monomial>, AlgebraError> {
        if self.has_laurent() {
            return Err(AlgebraError::LaurentBasis);
        }
        if let Some(i) = self
            .generators
            .iter()
            .position(|g| g.column == 0 && g.row == 0)
        {
            return Err(AlgebraError::DegreeZeroGenerator(
                self.generators[i].name.clone(),
            ));
        }
        let mut out = Vec::new();
        let mut current = vec![0; self.generators.len()];
        self.enumerate_into(0, s, t, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate_into(
        &self,
        idx: usize,
        s: i64,
        t: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Monomial>,
    ) {
        if s > 0 || t < 0 {
            return;
        }
        if idx == self.generators.len() {
            if s == 0 && t == 0 {
                let m = Monomial::from_exponents(current.clone());
                if !self.is_killed(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let g = &self.generators[idx];
        let mut max = i64::MAX;
        if g.column < 0 {
            max = max.min(s / g.column);
        }
        if g.row > 0 {
            max = max.min(t / g.row);
        }
        if g.kind == GeneratorKind::Exterior {
            max = max.min(1);
        }
        for e in 0..=max {
            current[idx] = e;
            self.enumerate_into(idx + 1, s - e * g.column, t - e * g.row, current, out);
        }
        current[idx] = 0;
    }

    fn is_square_marker(&self, r: &Relation) -> Option<usize> {
        if !r.is_truncation() {
            return None;
        }
        let e = r.monomial.exponents();
        let nonzero: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
        match nonzero.as_slice() {
            [i] if e[*i] == 2 && self.generators[*i].kind == GeneratorKind::Exterior => Some(*i),
            _ => None,
        }
    }

    /// Checks names, kind/degree compatibility and relation shape. When `d` is
    /// given, generator columns must lie in `[-d, 0]`.
    pub fn validate(&self, d: Option<i64>) -> Result<(), AlgebraError> {
        let mut diags = Vec::new();
        let mut push = |location, message: String| diags.push(Diagnostic { location, message });

        for (i, g) in self.generators.iter().enumerate() {
            let loc = Location::Generator(i, g.name.clone());
            let ident = g
                .name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && g.name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ident {
                push(loc.clone(), "name is not an identifier".into());
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                push(loc.clone(), "duplicate generator name".into());
            }
            if g.column > 0 {
                push(loc.clone(), format!("column {} is positive", g.column));
            }
            if let Some(d) = d {
                if g.column < -d {
                    push(
                        loc.clone(),
                        format!("column {} lies left of -{d}", g.column),
                    );
                }
            }
            if g.row < 0 {
                push(loc.clone(), format!("row {} is negative", g.row));
            }
            match g.kind {
                GeneratorKind::Laurent => {
                    if g.column != 0 || g.row != 0 {
                        push(
                            loc.clone(),
                            "laurent generators must sit at bidegree (0,0)".into(),
                        );
                    }
                }
                _ => {
                    if g.column == 0 && g.row == 0 {
                        push(
                            loc.clone(),
                            "non-laurent generator at bidegree (0,0)".into(),
                        );
                    }
                }
            }
            if g.kind == GeneratorKind::Exterior
                && !g.is_odd()
                && !self
                    .relations
                    .iter()
                    .any(|r| self.is_square_marker(r) == Some(i))
            {
                push(
                    loc.clone(),
                    "exterior generator of even total degree needs a `rel 0 g^2` truncation".into(),
                );
            }
        }

        for (i, r) in self.relations.iter().enumerate() {
            let loc = Location::Relation(i);
            if r.monomial.len() != self.generators.len() {
                push(loc, "monomial length does not match generator count".into());
                continue;
            }
            if r.coefficient.is_negative() || r.coefficient.is_one() {
                push(
                    loc.clone(),
                    format!("coefficient {} must be 0 or at least 2", r.coefficient),
                );
            }
            if r.monomial.is_unit() {
                push(loc.clone(), "relation on the unit monomial".into());
            }
            if self.is_square_marker(r).is_some() {
                continue;
            }
            for (&e, g) in r.monomial.exponents().iter().zip(&self.generators) {
                match g.kind {
                    GeneratorKind::Laurent if e != 0 => push(
                        loc.clone(),
                        format!("laurent generator `{}` in a relation", g.name),
                    ),
                    GeneratorKind::Exterior if !(0..=1).contains(&e) => push(
                        loc.clone(),
                        format!("exterior generator `{}` has exponent {e}", g.name),
                    ),
                    GeneratorKind::Polynomial if e < 0 => {
                        push(loc.clone(), format!("negative exponent on `{}`", g.name))
                    }
                    _ => {}
                }
            }
        }

        if diags.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::Invalid(diags))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: i64) -> AlgebraPresentation {
        let a = GeneratorDecl::new("a", -n, 0, GeneratorKind::Exterior);
        let u = GeneratorDecl::new("u", 0, n - 1, GeneratorKind::Polynomial);
        let mut p = AlgebraPresentation::new(vec![a, u], vec![]);
        let a2 = p.monomial(&[("a", 2)]).unwrap();
        p.relations.push(Relation::truncation(a2));
        p
    }

    fn cpn(n: i64) -> AlgebraPresentation {
        let gens = vec![
            GeneratorDecl::new("c", -2, 0, GeneratorKind::Polynomial),
            GeneratorDecl::new("y", 0, 1, GeneratorKind::Exterior),
            GeneratorDecl::new("u", 0, 2 * n, GeneratorKind::Polynomial),
        ];
        let mut p = AlgebraPresentation::new(gens, vec![]);
        let top = p.monomial(&[("c", n + 1)]).unwrap();
        p.relations.push(Relation::truncation(top));
        p
    }

    #[test]
    fn exterior_square_vanishes() {
        let p = cpn(2);
        let y = p.parse_monomial("y").unwrap();
        assert!(p.monomial_mul(&y, &y).is_none());
    }

    #[test]
    fn koszul_sign_on_odd_pair() {
        let gens = vec![
            GeneratorDecl::new("g", 0, 1, GeneratorKind::Exterior),
            GeneratorDecl::new("h", 0, 3, GeneratorKind::Exterior),
        ];
        let p = AlgebraPresentation::new(gens, vec![]);
        let g = p.parse_monomial("g").unwrap();
        let h = p.parse_monomial("h").unwrap();
        let gh = p.parse_monomial("g*h").unwrap();
        assert_eq!(p.monomial_mul(&h, &g), Some((Sign::Minus, gh.clone())));
        assert_eq!(p.monomial_mul(&g, &h), Some((Sign::Plus, gh)));
    }

    #[test]
    fn truncations_kill_products() {
        let p = cpn(2);
        let c2 = p.parse_monomial("c^2").unwrap();
        let c = p.parse_monomial("c").unwrap();
        assert!(p.monomial_mul(&c2, &c).is_none());
        let s = sphere(2);
        let a = s.parse_monomial("a").unwrap();
        assert!(s.monomial_mul(&a, &a).is_none());
    }

    #[test]
    fn normal_form_examples() {
        let gens = vec![
            GeneratorDecl::new("a", -2, 0, GeneratorKind::Polynomial),
            GeneratorDecl::new("v", 0, 2, GeneratorKind::Polynomial),
        ];
        let mut p = AlgebraPresentation::new(gens, vec![]);
        let av = p.parse_monomial("a*v").unwrap();
        p.relations.push(Relation::torsion(2, av.clone()));
        assert_eq!(p.normal_form_reduce(&BigInt::from(2), &av), None);
        let v3 = p.parse_monomial("v^3").unwrap();
        assert_eq!(
            p.normal_form_reduce(&BigInt::from(5), &v3),
            Some((BigInt::from(5), v3))
        );

        let mut q = cpn(2);
        let c2u = q.parse_monomial("c^2*u").unwrap();
        q.relations.push(Relation::torsion(3, c2u.clone()));
        assert_eq!(
            q.normal_form_reduce(&BigInt::from(4), &c2u),
            Some((BigInt::from(1), c2u))
        );
    }

    #[test]
    fn bidegrees() {
        let n = 4;
        let s = sphere(n);
        assert_eq!(s.bidegree_of(&s.unit()), (0, 0));
        let au2 = s.parse_monomial("a*u^2").unwrap();
        assert_eq!(s.bidegree_of(&au2), (-n, 2 * n - 2));
        let p = cpn(2);
        let yc = p.parse_monomial("y*c").unwrap();
        assert_eq!(p.bidegree_of(&yc), (-2, 1));
        assert_eq!(p.total_degree(&yc), -1);
    }

    #[test]
    fn basis_examples() {
        let s = sphere(3);
        assert_eq!(
            s.enumerate_basis(0, 4).unwrap(),
            vec![s.parse_monomial("u^2").unwrap()]
        );
        assert_eq!(s.enumerate_basis(0, 0).unwrap(), vec![s.unit()]);
        let p = cpn(2);
        assert_eq!(
            p.enumerate_basis(-2, 1).unwrap(),
            vec![p.parse_monomial("c*y").unwrap()]
        );
        assert!(p.enumerate_basis(-6, 0).unwrap().is_empty());
    }

    #[test]
    fn laurent_basis_rejected() {
        let p = AlgebraPresentation::new(
            vec![GeneratorDecl::new("t", 0, 0, GeneratorKind::Laurent)],
            vec![],
        );
        assert!(matches!(
            p.enumerate_basis(0, 0),
            Err(AlgebraError::LaurentBasis)
        ));
    }

    #[test]
    fn validation_catches_problems() {
        assert!(sphere(2).validate(Some(2)).is_ok());
        assert!(cpn(3).validate(Some(6)).is_ok());

        let bad = AlgebraPresentation::new(
            vec![
                GeneratorDecl::new("a", -2, 0, GeneratorKind::Exterior),
                GeneratorDecl::new("a", 1, 0, GeneratorKind::Polynomial),
                GeneratorDecl::new("t", 0, 1, GeneratorKind::Laurent),
            ],
            vec![Relation::torsion(
                1,
                Monomial::from_exponents(vec![1, 0, 0]),
            )],
        );
        let Err(AlgebraError::Invalid(diags)) = bad.validate(Some(1)) else {
            panic!("expected diagnostics");
        };
        let text: Vec<String> = diags.iter().map(ToString::to_string).collect();
        assert!(text.iter().any(|d| d.contains("duplicate")));
        assert!(text.iter().any(|d| d.contains("positive")));
        assert!(text.iter().any(|d| d.contains("left of")));
        assert!(text.iter().any(|d| d.contains("needs a `rel 0 g^2`")));
        assert!(text.iter().any(|d| d.contains("(0,0)")));
        assert!(text
            .iter()
            .any(|d| d.contains("relation 0") && d.contains("coefficient 1")));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let p = cpn(2);
        let m = p.parse_monomial(" u * c^2 ").unwrap();
        assert_eq!(p.format_monomial(&m), "c^2*u");
        assert_eq!(p.format_monomial(&p.unit()), "1");
        assert!(p.parse_monomial("z").is_err());
        assert!(p.parse_monomial("c^x").is_err());
    }
}
