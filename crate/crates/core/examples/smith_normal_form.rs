//! Smith normal form and integer homology of a small chain complex.
//!
//! `cargo run --example smith_normal_form`

use loopss::linalg::{homology_of_pair, smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A = {a}");
    println!("D = {}", snf.d);
    println!(
        "invariant factors: {:?}",
        snf.invariant_factors()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    assert_eq!(&(&snf.u * &a) * &snf.v, snf.d);

    // RP^2 as a cellular complex: Z --2--> Z --0--> Z.
    let d2 = IntMatrix::from_rows(&[vec![2]]);
    let d1 = IntMatrix::from_rows(&[vec![0]]);
    let h1 = homology_of_pair(&d2, &d1).unwrap();
    println!("H_1(RP^2) = {}", h1.group());
}
