//! Complex projective space: the single d_{2n} family, the stable page, and
//! the additive comparison with H_*(LCP^n).
//!
//! `cargo run --example projective_space -- 2`

use loopss::model::{assemble_total_degree, cpn_model, ziller_reference};
use loopss::report::render_chart;

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let model = cpn_model(n).expect("n >= 1");
    let pages = model.pages(8 * n + 4).unwrap();
    let turning = &pages[(2 * n - 2) as usize];
    print!("{}", render_chart(turning, model.spec_for(turning.r())));
    println!();
    let einf = pages.last().unwrap();
    print!("{}", render_chart(einf, None));

    println!("\n  k  assembled  H_k(LCP^{n})");
    let top = einf.reliable_degree_bound() + 2 * n;
    for k in 0..=top.min(6 * n) {
        let got = assemble_total_degree(einf, k - 2 * n).unwrap();
        println!("{k:>3}  {:<9}  {}", got.to_string(), ziller_reference(n, k));
    }
}
