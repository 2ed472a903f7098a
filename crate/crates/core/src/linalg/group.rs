use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix, LinalgError};

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` in
/// invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
///
/// Two groups are isomorphic exactly when the values compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Accepts only canonical torsion lists.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, LinalgError> {
        let two = BigInt::from(2);
        if torsion.iter().any(|t| t < &two) {
            return Err(LinalgError::NonCanonicalTorsion(torsion));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(LinalgError::NonCanonicalTorsion(torsion));
        }
        Ok(Self { rank, torsion })
    }

    /// Canonicalizes an arbitrary direct sum of cyclic groups `Z/o_i`
    /// (`o_i = 0` means `Z`, `o_i = ±1` is trivial) plus `rank` extra free summands.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigInt]) -> Self {
        let mut rank = rank;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                rank += 1;
            } else if !o.abs().is_one() {
                finite.push(o.abs());
            }
        }
        if finite.is_empty() {
            return Self::free(rank);
        }
        let snf = smith_normal_form(&IntMatrix::diagonal(&finite));
        let torsion = snf
            .invariant_factors()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect();
        Self { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Order of the torsion subgroup (1 when torsion-free).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator_count() == 1
    }

    /// Number of cyclic summands (`rank + torsion count`).
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Modulus of the i-th class coordinate: `None` for free coordinates.
    pub fn modulus(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.rank).map(|k| &self.torsion[k])
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic_orders(self.rank + other.rank, &orders)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join("+"))
    }
}
