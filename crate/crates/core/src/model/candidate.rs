//! Matching a stable page against a candidate ring presentation.
//!
//! The comparison is between associated graded rings. Each candidate
//! generator is sent to the generator of the (cyclic) stable cell at its
//! bidegree; a candidate monomial goes to the product of those classes. The
//! match passes when, through the degree bound, every cell map is an
//! isomorphism and every product of candidate basis monomials agrees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraPresentation, Combination, GeneratorKind, Monomial};
use crate::linalg::{smith_normal_form, FGAbelianGroup, IntMatrix};
use crate::spectral::{Element, EngineError, Page};

use super::grammar::{instantiate_template, parse_file};
use super::{ModelError, ModelName};

/// Registered candidate templates, by name. Placeholders `{...}` are linear
/// forms in the model parameter `n`.
pub const BUILTIN_CANDIDATES: &[(&str, &str)] = &[
    (
        "theorem2-odd",
        include_str!("../../models/theorem2-odd.model"),
    ),
    (
        "theorem2-even",
        include_str!("../../models/theorem2-even.model"),
    ),
    ("theorem3", include_str!("../../models/theorem3.model")),
    ("circle", include_str!("../../models/circle.model")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCandidate {
    pub name: String,
    pub dimension: i64,
    pub presentation: AlgebraPresentation,
    /// Cells with `s + t` up to this bound are compared.
    pub degree_bound: i64,
}

/// Parses a candidate in the model grammar. `diff` lines are rejected.
pub fn parse_candidate(
    name: &str,
    text: &str,
    degree_bound: i64,
) -> Result<PresentationCandidate, ModelError> {
    let file = parse_file(text)?;
    if let Some((_, _, _, line)) = file.diffs.first() {
        return Err(ModelError::CandidateDifferential(*line));
    }
    let parsed = file.interpret()?;
    Ok(PresentationCandidate {
        name: name.to_string(),
        dimension: parsed.dim,
        presentation: parsed.presentation,
        degree_bound,
    })
}

/// A registered candidate instantiated for `model`. `theorem2` picks the odd
/// or even form by the parity of the sphere; `theorem2-odd-form` is an alias
/// of `theorem2-odd`.
pub fn builtin_candidate(
    name: &str,
    model: &ModelName,
    degree_bound: i64,
) -> Result<PresentationCandidate, ModelError> {
    let not_applicable = || ModelError::CandidateNotApplicable {
        name: name.to_string(),
        model: model.to_string(),
    };
    let (template, n) = match (name, model) {
        ("theorem2", ModelName::Sphere(n)) if n % 2 == 1 => ("theorem2-odd", *n),
        ("theorem2", ModelName::Sphere(n)) => ("theorem2-even", *n),
        ("theorem2-odd" | "theorem2-odd-form", ModelName::Sphere(n)) => ("theorem2-odd", *n),
        ("theorem2-even", ModelName::Sphere(n)) => ("theorem2-even", *n),
        ("theorem3", ModelName::Cpn(n)) => ("theorem3", *n),
        ("circle", ModelName::Circle) => ("circle", 1),
        (
            "theorem2" | "theorem2-odd" | "theorem2-odd-form" | "theorem2-even" | "theorem3"
            | "circle",
            _,
        ) => return Err(not_applicable()),
        _ => return Err(ModelError::UnknownCandidate(name.to_string())),
    };
    let text = BUILTIN_CANDIDATES
        .iter()
        .find(|(k, _)| *k == template)
        .map(|(_, t)| *t)
        .expect("registered template");
    parse_candidate(name, &instantiate_template(text, n)?, degree_bound)
}

/// First disagreement between two bigraded rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub s: i64,
    pub t: i64,
    pub expected: String,
    pub found: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mismatch at ({},{}): expected {}, found {}",
            self.s, self.t, self.expected, self.found
        )?;
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { cells: usize, products: usize },
    Fail(Mismatch),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn mismatch(&self) -> Option<&Mismatch> {
        match self {
            Verdict::Fail(m) => Some(m),
            Verdict::Pass { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { cells, products } => {
                write!(f, "PASS ({cells} cells, {products} products)")
            }
            Verdict::Fail(m) => write!(f, "FAIL {m}"),
        }
    }
}

/// Additive group of the candidate at one bidegree.
fn candidate_group(p: &AlgebraPresentation, basis: &[Monomial]) -> FGAbelianGroup {
    let orders: Vec<BigInt> = basis
        .iter()
        .map(|m| p.torsion_modulus(m).unwrap_or_else(BigInt::zero))
        .collect();
    FGAbelianGroup::from_cyclic_orders(0, &orders)
}

fn fail(
    s: i64,
    t: i64,
    expected: impl ToString,
    found: impl ToString,
    detail: impl Into<String>,
) -> Verdict {
    Verdict::Fail(Mismatch {
        s,
        t,
        expected: expected.to_string(),
        found: found.to_string(),
        detail: detail.into(),
    })
}

fn format_coords(c: &[BigInt]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Bidegrees with `-d <= s <= 0`, `t >= 0`, `s + t <= bound`, by total degree
/// and then from column `0` leftwards.
fn comparison_order(d: i64, bound: i64) -> Vec<(i64, i64)> {
    (-d..=bound)
        .flat_map(|j| (-d..=0).rev().map(move |s| (s, j - s)))
        .filter(|&(_, t)| t >= 0)
        .collect()
}

pub fn match_presentation(
    einf: &Page,
    cand: &PresentationCandidate,
) -> Result<Verdict, ModelError> {
    let p = &cand.presentation;
    let window = einf.window();
    let d = window.d;
    if cand.dimension != d {
        return Err(ModelError::DimensionMismatch(cand.dimension, d));
    }
    if let Some(g) = p
        .generators()
        .iter()
        .find(|g| g.kind == GeneratorKind::Laurent)
    {
        return Err(ModelError::BidegreeIncompatible(g.name.clone()));
    }
    p.validate(Some(d))?;
    let reliable = einf.reliable_degree_bound();
    if cand.degree_bound > reliable {
        return Err(ModelError::Unreliable {
            requested: cand.degree_bound,
            bound: reliable,
        });
    }
    let order = comparison_order(d, cand.degree_bound);

    // Additive comparison, cell by cell.
    let mut bases = BTreeMap::new();
    for &(s, t) in &order {
        let basis = p.enumerate_basis(s, t)?;
        let expected = candidate_group(p, &basis);
        let cell = einf
            .cell(s, t)
            .expect("reliable cells lie inside the window");
        if cell.group != expected {
            return Ok(fail(s, t, &expected, &cell.group, "additive group"));
        }
        bases.insert((s, t), basis);
    }

    // Generator correspondence.
    let mut reps = Vec::with_capacity(p.generator_count());
    for g in p.generators() {
        let cell = einf
            .cell(g.column, g.row)
            .filter(|c| c.reliable && c.group.is_cyclic() && !c.is_zero())
            .ok_or_else(|| ModelError::BidegreeIncompatible(g.name.clone()))?;
        reps.push(cell.basis_reps[0].clone());
    }
    let q = einf.presentation();
    let image_rep = |m: &Monomial| {
        let mut acc = Combination::monomial(q.unit());
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&reps[i], q);
            }
        }
        acc
    };

    // Each cell map must be an isomorphism.
    let mut images: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
    for &(s, t) in &order {
        let cell = einf.cell(s, t).expect("inside window");
        let n = cell.group.generator_count();
        let moduli = cell.lattice().class_map().moduli().to_vec();
        let mut columns = Vec::new();
        for m in &bases[&(s, t)] {
            let coords = cell
                .class_of(&image_rep(m))
                .ok_or(EngineError::ProductNotACycle { at: (s, t) })?;
            if let Some(k) = p.torsion_modulus(m) {
                let scaled: Vec<BigInt> = coords.iter().map(|x| x * &k).collect();
                if !cell
                    .lattice()
                    .class_map()
                    .reduce(scaled)
                    .iter()
                    .all(Zero::is_zero)
                {
                    return Ok(fail(
                        s,
                        t,
                        format!("{k}·{} = 0", p.format_monomial(m)),
                        format!("class {}", format_coords(&coords)),
                        "torsion relation",
                    ));
                }
            }
            columns.push(coords.clone());
            images.insert(m.clone(), coords);
        }
        for (i, m) in moduli.iter().enumerate() {
            if let Some(m) = m {
                let mut v = vec![BigInt::zero(); n];
                v[i] = m.clone();
                columns.push(v);
            }
        }
        if n > 0 {
            let snf = smith_normal_form(&IntMatrix::from_columns(n, &columns));
            let factors = snf.invariant_factors();
            if factors.len() != n || !factors.iter().all(One::is_one) {
                let names: Vec<String> = bases[&(s, t)]
                    .iter()
                    .map(|m| p.format_monomial(m))
                    .collect();
                return Ok(fail(
                    s,
                    t,
                    format!("{{{}}} generating {}", names.join(", "), cell.group),
                    "a proper subgroup",
                    "cell map not onto",
                ));
            }
        }
    }

    // Products of basis monomials.
    let mut products = 0;
    let monomials: Vec<(&Monomial, (i64, i64))> =
        images.keys().map(|m| (m, p.bidegree_of(m))).collect();
    let mut checks = Vec::new();
    for &(m1, (s1, t1)) in &monomials {
        for &(m2, (s2, t2)) in &monomials {
            let (s, t) = (s1 + s2, t1 + t2);
            if s + t > cand.degree_bound {
                continue;
            }
            checks.push(((s + t, -s, t), m1, m2));
        }
    }
    checks.sort();
    for ((_, neg_s, t), m1, m2) in checks {
        let s = -neg_s;
        let label = format!("{}·{}", p.format_monomial(m1), p.format_monomial(m2));
        let expected = p
            .monomial_mul(m1, m2)
            .and_then(|(sign, m3)| p.normal_form_reduce(&sign.to_bigint(), &m3));
        let element = |m: &Monomial| {
            let (s, t) = p.bidegree_of(m);
            Element {
                s,
                t,
                coords: images[m].clone(),
            }
        };
        let (x, y) = (element(m1), element(m2));
        products += 1;
        if s < -d {
            if let Some((k, m3)) = expected {
                return Ok(fail(
                    s,
                    t,
                    format!("{label} = {k} {}", p.format_monomial(&m3)),
                    "0 (outside the column range)",
                    "product",
                ));
            }
            continue;
        }
        let found = einf.multiply(&x, &y)?.ok_or(ModelError::Unreliable {
            requested: s + t,
            bound: reliable,
        })?;
        let cell = einf.cell(s, t).expect("inside window");
        let want = match &expected {
            None => vec![BigInt::zero(); found.coords.len()],
            Some((k, m3)) => images[m3].iter().map(|c| c * k).collect(),
        };
        let want = cell.lattice().class_map().reduce(want);
        if want != found.coords {
            let rhs = match &expected {
                None => "0".to_string(),
                Some((k, m3)) => format!("{k} {}", p.format_monomial(m3)),
            };
            return Ok(fail(
                s,
                t,
                format!("{label} = {rhs} {}", format_coords(&want)),
                format_coords(&found.coords),
                "product",
            ));
        }
    }

    Ok(Verdict::Pass {
        cells: order.len(),
        products,
    })
}

/// Compares two stable pages cell by cell and on products of classes, with
/// classes matched by position. Returns the first difference.
pub fn pages_isomorphic(
    a: &Page,
    b: &Page,
    degree_bound: i64,
) -> Result<Option<Mismatch>, ModelError> {
    let d = a.window().d;
    if b.window().d != d {
        return Err(ModelError::DimensionMismatch(d, b.window().d));
    }
    let reliable = a.reliable_degree_bound().min(b.reliable_degree_bound());
    if degree_bound > reliable {
        return Err(ModelError::Unreliable {
            requested: degree_bound,
            bound: reliable,
        });
    }
    let order = comparison_order(d, degree_bound);
    for &(s, t) in &order {
        let (ca, cb) = (a.cell(s, t).expect("inside"), b.cell(s, t).expect("inside"));
        if ca.group != cb.group {
            return Ok(Some(Mismatch {
                s,
                t,
                expected: ca.group.to_string(),
                found: cb.group.to_string(),
                detail: "additive group".into(),
            }));
        }
    }
    let classes: Vec<_> = a
        .classes()
        .into_iter()
        .filter(|c| c.s + c.t <= degree_bound)
        .collect();
    for &x in &classes {
        for &y in &classes {
            if x.s + x.t + y.s + y.t > degree_bound {
                continue;
            }
            let (pa, pb) = (a.multiply_classes(x, y)?, b.multiply_classes(x, y)?);
            if pa != pb {
                let show = |e: &Option<Element>| {
                    e.as_ref()
                        .map_or("unavailable".to_string(), |e| format_coords(&e.coords))
                };
                return Ok(Some(Mismatch {
                    s: x.s + y.s,
                    t: x.t + y.t,
                    expected: show(&pa),
                    found: show(&pb),
                    detail: format!(
                        "product of classes ({},{})#{} and ({},{})#{}",
                        x.s, x.t, x.index, y.s, y.t, y.index
                    ),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cpn_model, sphere_model};

    #[test]
    fn templates_instantiate() {
        for n in 2..=6 {
            let odd = builtin_candidate("theorem2-odd", &ModelName::Sphere(n), 0).unwrap();
            assert_eq!(odd.dimension, n);
            let even = builtin_candidate("theorem2-even", &ModelName::Sphere(n), 0).unwrap();
            assert_eq!(even.presentation.generator_count(), 3);
            let cp = builtin_candidate("theorem3", &ModelName::Cpn(n), 0).unwrap();
            assert_eq!(cp.dimension, 2 * n);
        }
        assert!(builtin_candidate("circle", &ModelName::Circle, 0).is_ok());
        assert!(matches!(
            builtin_candidate("theorem3", &ModelName::Sphere(2), 0),
            Err(ModelError::CandidateNotApplicable { .. })
        ));
        assert!(matches!(
            builtin_candidate("theorem9", &ModelName::Sphere(2), 0),
            Err(ModelError::UnknownCandidate(_))
        ));
    }

    #[test]
    fn odd_sphere_passes() {
        let e = sphere_model(5).unwrap().e_infinity(36).unwrap();
        let c = builtin_candidate("theorem2", &ModelName::Sphere(5), 24).unwrap();
        assert!(match_presentation(&e, &c).unwrap().is_pass());
    }

    #[test]
    fn even_sphere_against_odd_form_fails_at_first_torsion() {
        let e = sphere_model(2).unwrap().e_infinity(12).unwrap();
        let c = builtin_candidate("theorem2-odd-form", &ModelName::Sphere(2), 6).unwrap();
        let v = match_presentation(&e, &c).unwrap();
        let m = v.mismatch().expect("fails");
        assert_eq!((m.s, m.t), (-2, 2));
        assert_eq!(m.expected, "Z");
        assert_eq!(m.found, "Z/2");
    }

    #[test]
    fn cpn_passes_theorem3() {
        let e = cpn_model(2).unwrap().e_infinity(20).unwrap();
        let c = builtin_candidate("theorem3", &ModelName::Cpn(2), 12).unwrap();
        assert!(match_presentation(&e, &c).unwrap().is_pass());
    }

    #[test]
    fn wrong_product_is_caught() {
        // Same additive groups as Λ[a]⊗Z[u], but a·u is declared zero and a
        // new generator b takes its place.
        let text = "dim 3\nbase a (-3,0) exterior\nbase b (-3,2) exterior\nfiber u (0,2) polynomial\nrel 0 a*u\nrel 0 a*b\n";
        let c = parse_candidate("bogus", text, 6).unwrap();
        let e = sphere_model(3).unwrap().e_infinity(14).unwrap();
        let v = match_presentation(&e, &c).unwrap();
        let m = v.mismatch().expect("fails");
        assert_eq!((m.s, m.t), (-3, 2));
        assert_eq!(m.detail, "product");
    }

    #[test]
    fn window_too_small_is_an_error() {
        let e = sphere_model(3).unwrap().e_infinity(6).unwrap();
        let c = builtin_candidate("theorem2", &ModelName::Sphere(3), 30).unwrap();
        assert!(matches!(
            match_presentation(&e, &c),
            Err(ModelError::Unreliable { .. })
        ));
    }

    #[test]
    fn cp1_and_s2_agree() {
        let a = cpn_model(1).unwrap().e_infinity(14).unwrap();
        let b = sphere_model(2).unwrap().e_infinity(14).unwrap();
        assert_eq!(pages_isomorphic(&a, &b, 8).unwrap(), None);
        let c = sphere_model(2).unwrap().e_infinity(14).unwrap();
        let odd = crate::model::sphere_model(3)
            .unwrap()
            .e_infinity(14)
            .unwrap();
        assert!(pages_isomorphic(&c, &odd, 4).is_err());
    }
}
