use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::{
    AlgebraPresentation, Combination, GeneratorDecl, GeneratorKind, Monomial, Relation,
};
use crate::spectral::{build_initial_page, run_pages, DifferentialSpec, EngineError, Page};

use super::grammar::parse_file;
use super::ModelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelName {
    Sphere(i64),
    Cpn(i64),
    Circle,
    Custom(PathBuf),
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelName::Sphere(n) => write!(f, "sphere:{n}"),
            ModelName::Cpn(n) => write!(f, "cpn:{n}"),
            ModelName::Circle => write!(f, "circle"),
            ModelName::Custom(p) => write!(f, "custom:{}", p.display()),
        }
    }
}

impl FromStr for ModelName {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::UnknownModel(s.to_string());
        if s == "circle" {
            return Ok(ModelName::Circle);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "sphere" => arg.parse().map(ModelName::Sphere).map_err(|_| bad()),
            "cpn" => arg.parse().map(ModelName::Cpn).map_err(|_| bad()),
            "custom" if !arg.is_empty() => Ok(ModelName::Custom(PathBuf::from(arg))),
            _ => Err(bad()),
        }
    }
}

/// `E^2 = H^*(M) ⊗ H_*(ΩM)` in second-quadrant grading plus the
/// generator-level differentials.
///
/// The combined presentation lists base generators first, then fiber
/// generators; differential specs index into it.
#[derive(Clone, Debug)]
pub struct ManifoldModel {
    pub name: ModelName,
    pub dimension: i64,
    pub base_ring: AlgebraPresentation,
    pub fiber_ring: AlgebraPresentation,
    pub differentials: Vec<DifferentialSpec>,
    presentation: AlgebraPresentation,
}

fn pad(m: &Monomial, before: usize, after: usize) -> Monomial {
    let mut e = vec![0; before];
    e.extend_from_slice(m.exponents());
    e.resize(before + m.len() + after, 0);
    Monomial::from_exponents(e)
}

/// Tensor product of two presentations on disjoint generators.
fn tensor(base: &AlgebraPresentation, fiber: &AlgebraPresentation) -> AlgebraPresentation {
    let (nb, nf) = (base.generator_count(), fiber.generator_count());
    let generators = base
        .generators()
        .iter()
        .chain(fiber.generators())
        .cloned()
        .collect();
    let relations = base
        .relations()
        .iter()
        .map(|r| Relation::torsion(r.coefficient.clone(), pad(&r.monomial, 0, nf)))
        .chain(
            fiber
                .relations()
                .iter()
                .map(|r| Relation::torsion(r.coefficient.clone(), pad(&r.monomial, nb, 0))),
        )
        .collect();
    AlgebraPresentation::new(generators, relations)
}

impl ManifoldModel {
    pub fn new(
        name: ModelName,
        dimension: i64,
        base_ring: AlgebraPresentation,
        fiber_ring: AlgebraPresentation,
        differentials: Vec<DifferentialSpec>,
    ) -> Result<Self, ModelError> {
        let presentation = tensor(&base_ring, &fiber_ring);
        presentation.validate(Some(dimension))?;
        for spec in &differentials {
            spec.validate(&presentation)?;
        }
        Ok(Self {
            name,
            dimension,
            base_ring,
            fiber_ring,
            differentials,
            presentation,
        })
    }

    /// Closed-form model of the circle. It has no spectral-sequence path:
    /// [`ManifoldModel::pages`] reports a laurent model.
    pub fn circle() -> Self {
        let base = AlgebraPresentation::new(
            vec![GeneratorDecl::new("a", -1, 0, GeneratorKind::Exterior)],
            vec![],
        );
        let fiber = AlgebraPresentation::new(
            vec![GeneratorDecl::new("t", 0, 0, GeneratorKind::Laurent)],
            vec![],
        );
        Self::new(ModelName::Circle, 1, base, fiber, Vec::new()).expect("circle model is valid")
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn is_laurent(&self) -> bool {
        self.presentation.has_laurent()
    }

    pub fn spec_for(&self, r: i64) -> Option<&DifferentialSpec> {
        self.differentials.iter().find(|s| s.r() == r)
    }

    /// `t_max` used when none is requested: three full sweeps of the widest
    /// differential plus slack.
    pub fn default_t_max(&self) -> i64 {
        3 * self.dimension + 4
    }

    pub fn initial_page(&self, t_max: i64) -> Result<Page, EngineError> {
        build_initial_page(&self.presentation, self.dimension, t_max)
    }

    /// `E^2, E^3, ..., E^{d+1} = E^∞`.
    pub fn pages(&self, t_max: i64) -> Result<Vec<Page>, EngineError> {
        run_pages(&self.initial_page(t_max)?, &self.differentials)
    }

    pub fn e_infinity(&self, t_max: i64) -> Result<Page, EngineError> {
        Ok(self.pages(t_max)?.pop().expect("nonempty"))
    }

    /// Reads a model file from disk; the name records the path.
    pub fn load(path: impl Into<PathBuf>) -> Result<Self, ModelLoadError> {
        let path = path.into();
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ModelLoadError::Io(path.clone(), e.to_string()))?;
        let mut model = custom_model_parse(&text)?;
        model.name = ModelName::Custom(path);
        Ok(model)
    }

    /// Resolves a selector such as `sphere:4`. Circles have no spectral
    /// sequence but are returned as the closed-form model.
    pub fn from_name(name: &ModelName) -> Result<Self, ModelLoadError> {
        match name {
            ModelName::Sphere(n) => Ok(sphere_model(*n)?),
            ModelName::Cpn(n) => Ok(cpn_model(*n)?),
            ModelName::Circle => Ok(Self::circle()),
            ModelName::Custom(path) => Self::load(path.clone()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelLoadError {
    #[error("cannot read {}: {1}", .0.display())]
    Io(PathBuf, String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `S^n`, `n >= 2`: `a` at `(-n, 0)` with `a^2 = 0`, `u` at `(0, n-1)`
/// polynomial. For even `n` the single differential is `d_n(u) = 2au^2`.
pub fn sphere_model(n: i64) -> Result<ManifoldModel, ModelError> {
    if n < 2 {
        return Err(ModelError::SphereDimension(n));
    }
    let base = AlgebraPresentation::new(
        vec![GeneratorDecl::new("a", -n, 0, GeneratorKind::Exterior)],
        vec![Relation::truncation(Monomial::from_exponents(vec![2]))],
    );
    let fiber = AlgebraPresentation::new(
        vec![GeneratorDecl::new("u", 0, n - 1, GeneratorKind::Polynomial)],
        vec![],
    );
    let mut differentials = Vec::new();
    if n % 2 == 0 {
        let au2 = Monomial::from_exponents(vec![1, 2]);
        differentials.push(DifferentialSpec::zero(n).with(1, Combination::term(2, au2)));
    }
    ManifoldModel::new(ModelName::Sphere(n), n, base, fiber, differentials)
}

/// `CP^n`, `n >= 1`: `c` at `(-2, 0)` with `c^{n+1} = 0`; fiber `y` exterior
/// at `(0, 1)` and `u` polynomial at `(0, 2n)`; `d_{2n}(y) = (n+1) c^n u`.
pub fn cpn_model(n: i64) -> Result<ManifoldModel, ModelError> {
    if n < 1 {
        return Err(ModelError::CpnDimension(n));
    }
    let base = AlgebraPresentation::new(
        vec![GeneratorDecl::new("c", -2, 0, GeneratorKind::Polynomial)],
        vec![Relation::truncation(Monomial::from_exponents(vec![n + 1]))],
    );
    let fiber = AlgebraPresentation::new(
        vec![
            GeneratorDecl::new("y", 0, 1, GeneratorKind::Exterior),
            GeneratorDecl::new("u", 0, 2 * n, GeneratorKind::Polynomial),
        ],
        vec![],
    );
    let target = Combination::term(BigInt::from(n + 1), Monomial::from_exponents(vec![n, 0, 1]));
    let spec = DifferentialSpec::zero(2 * n).with(1, target);
    ManifoldModel::new(ModelName::Cpn(n), 2 * n, base, fiber, vec![spec])
}

/// Parses the line-oriented model grammar (see [`super::instantiate_template`]
/// for templated files). Diagnostics carry 1-based line numbers.
pub fn custom_model_parse(text: &str) -> Result<ManifoldModel, ModelError> {
    let parsed = parse_file(text)?.interpret()?;
    Ok(ManifoldModel {
        name: ModelName::Custom(PathBuf::new()),
        dimension: parsed.dim,
        base_ring: parsed.base_ring,
        fiber_ring: parsed.fiber_ring,
        differentials: parsed.differentials,
        presentation: parsed.presentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_models() {
        assert!(sphere_model(3).unwrap().differentials.is_empty());
        let s2 = sphere_model(2).unwrap();
        assert_eq!(s2.differentials.len(), 1);
        let spec = &s2.differentials[0];
        assert_eq!(spec.r(), 2);
        assert_eq!(spec.target(1).unwrap().format(s2.presentation()), "2 a*u^2");
        assert!(matches!(
            sphere_model(1),
            Err(ModelError::SphereDimension(1))
        ));
        assert!(sphere_model(1).unwrap_err().to_string().contains("circle"));
    }

    #[test]
    fn cpn_models() {
        let m = cpn_model(2).unwrap();
        let spec = m.spec_for(4).unwrap();
        assert_eq!(spec.target(1).unwrap().format(m.presentation()), "3 c^2*u");
        let m3 = cpn_model(3).unwrap();
        assert_eq!(m3.base_ring.relations()[0].monomial.exponents(), &[4]);
        assert_eq!(m3.dimension, 6);
        assert!(cpn_model(0).is_err());
    }

    #[test]
    fn custom_replica_of_s4() {
        let text = "dim 4\nbase a (-4,0) exterior\nfiber u (0,3) polynomial\nrel 0 a^2\ndiff r=4 d(u) = 2 a*u^2\n";
        let custom = custom_model_parse(text).unwrap();
        let builtin = sphere_model(4).unwrap();
        assert_eq!(custom.presentation(), builtin.presentation());
        assert_eq!(custom.differentials, builtin.differentials);
    }

    #[test]
    fn selectors() {
        assert_eq!(
            "sphere:4".parse::<ModelName>().unwrap(),
            ModelName::Sphere(4)
        );
        assert_eq!("cpn:2".parse::<ModelName>().unwrap(), ModelName::Cpn(2));
        assert_eq!("circle".parse::<ModelName>().unwrap(), ModelName::Circle);
        assert_eq!(
            "custom:x.model".parse::<ModelName>().unwrap(),
            ModelName::Custom("x.model".into())
        );
        assert!("torus".parse::<ModelName>().is_err());
        assert!("sphere:x".parse::<ModelName>().is_err());
    }

    #[test]
    fn circle_refuses_pages() {
        let c = ManifoldModel::circle();
        assert!(c.is_laurent());
        assert_eq!(c.pages(4).unwrap_err(), EngineError::LaurentModel);
    }
}
