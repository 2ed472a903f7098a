use num_bigint::BigInt;

use crate::linalg::FGAbelianGroup;
use crate::spectral::Page;

use super::ModelError;

/// `H_k(LCP^n)`: `Z ⊕ Z/(n+1)` when `k = 2mn` with `m >= 1`, otherwise `Z`.
pub fn ziller_reference(n: i64, k: i64) -> FGAbelianGroup {
    if k > 0 && k % (2 * n) == 0 {
        FGAbelianGroup::from_cyclic_orders(1, &[BigInt::from(n + 1)])
    } else {
        FGAbelianGroup::free(1)
    }
}

/// Direct sum of the stable cells with `s + t = j`.
///
/// This is the loop homology in degree `j` only up to extension: it has the
/// right rank, and the right torsion order when the torsion pieces split.
pub fn assemble_total_degree(einf: &Page, j: i64) -> Result<FGAbelianGroup, ModelError> {
    let bound = einf.reliable_degree_bound();
    if j > bound {
        return Err(ModelError::Unreliable {
            requested: j,
            bound,
        });
    }
    let d = einf.window().d;
    Ok((-d..=0)
        .filter_map(|s| einf.cell(s, j - s))
        .fold(FGAbelianGroup::trivial(), |acc, c| acc.direct_sum(&c.group)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cpn_model, sphere_model};

    #[test]
    fn reference_values() {
        assert_eq!(ziller_reference(2, 4).to_string(), "Z+Z/3");
        assert_eq!(ziller_reference(2, 3), FGAbelianGroup::free(1));
        assert_eq!(ziller_reference(5, 0), FGAbelianGroup::free(1));
        assert_eq!(ziller_reference(3, 12).to_string(), "Z+Z/4");
    }

    #[test]
    fn assembled_degrees() {
        let e = cpn_model(2).unwrap().e_infinity(20).unwrap();
        let g = assemble_total_degree(&e, 0).unwrap();
        assert_eq!((g.rank(), g.torsion_order()), (1, BigInt::from(3)));
        let odd = sphere_model(3).unwrap().e_infinity(12).unwrap();
        assert_eq!(
            assemble_total_degree(&odd, -3).unwrap(),
            FGAbelianGroup::free(1)
        );
        assert!(assemble_total_degree(&odd, -4).unwrap().is_trivial());
        assert!(matches!(
            assemble_total_degree(&odd, 100),
            Err(ModelError::Unreliable { .. })
        ));
    }
}
