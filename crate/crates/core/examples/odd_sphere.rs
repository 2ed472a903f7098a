//! The spectral sequence of an odd sphere collapses; its stable page is
//! Λ[a] ⊗ Z[u].
//!
//! `cargo run --example odd_sphere -- 5`

use loopss::model::{builtin_candidate, match_presentation, sphere_model};
use loopss::report::{render_chart, render_summary};

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let model = sphere_model(n).expect("odd n >= 3");
    let t_max = 4 * n;
    let einf = model.e_infinity(t_max).unwrap();
    print!("{}", render_chart(&einf, None));
    print!("{}", render_summary(&einf));

    let cand = builtin_candidate("theorem2", &model.name, einf.reliable_degree_bound()).unwrap();
    println!("{}", match_presentation(&einf, &cand).unwrap());
}
