use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, AlgebraPresentation, Monomial};

/// A finite integer combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Combination {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Combination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    pub fn term(coef: impl Into<BigInt>, m: Monomial) -> Self {
        let mut c = Self::zero();
        c.add_term(coef.into(), m);
        c
    }

    pub fn add_term(&mut self, coef: BigInt, m: Monomial) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The monomial when this is exactly `1 · m`.
    pub fn single_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(c * k, m.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Product in `p`, reduced to normal form.
    pub fn mul(&self, other: &Self, p: &AlgebraPresentation) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = p.monomial_mul(m1, m2) {
                    out.add_term(sign.to_bigint() * c1 * c2, m);
                }
            }
        }
        out.reduce(p)
    }

    /// Applies the relations of `p` term by term.
    pub fn reduce(&self, p: &AlgebraPresentation) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((c, m)) = p.normal_form_reduce(c, m) {
                out.add_term(c, m);
            }
        }
        out
    }

    /// Renders `2 a*u^2 + -1 b`; the unit coefficient is omitted and the zero
    /// combination prints as `0`.
    pub fn format(&self, p: &AlgebraPresentation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono = p.format_monomial(m);
                if c.is_one() {
                    mono
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`Combination::format`]: `+`-separated terms of the
    /// form `[coef] monomial`.
    pub fn parse(text: &str, p: &AlgebraPresentation) -> Result<Self, AlgebraError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in text.split('+') {
            let term = term.trim();
            let (coef, mono) = match term.split_once(char::is_whitespace) {
                Some((c, m)) if c.parse::<BigInt>().is_ok() => (c.parse::<BigInt>().unwrap(), m),
                _ => (BigInt::one(), term),
            };
            out.add_term(coef, p.parse_monomial(mono)?);
        }
        Ok(out)
    }
}

impl FromIterator<(BigInt, Monomial)> for Combination {
    fn from_iter<I: IntoIterator<Item = (BigInt, Monomial)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (c, m) in iter {
            out.add_term(c, m);
        }
        out
    }
}
