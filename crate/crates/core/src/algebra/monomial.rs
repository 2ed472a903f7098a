use std::cmp::Ordering;
use std::ops::Mul;

use num_bigint::BigInt;

/// Exponent vector over the generators of a presentation, in declaration order.
///
/// Ordered graded-lexicographically: by exponent sum first, then
/// lexicographically on the vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn unit(generators: usize) -> Self {
        Self(vec![0; generators])
    }

    pub fn generator(generators: usize, index: usize) -> Self {
        let mut e = vec![0; generators];
        e[index] = 1;
        Self(e)
    }

    pub fn from_exponents(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn weight(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_bigint(self) -> BigInt {
        match self {
            Sign::Plus => BigInt::from(1),
            Sign::Minus => BigInt::from(-1),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![2, 0]);
        assert!(b < a);
        assert!(a < c);
        assert!(Monomial::unit(2) < b);
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
    }
}
