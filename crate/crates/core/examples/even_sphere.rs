//! Even spheres: d_n(u) = 2au^2 kills odd powers of u and leaves Z/2
//! classes a·u^{2k}. The extension report shows which total degrees are only
//! known up to extension.
//!
//! `cargo run --example even_sphere -- 2`

use loopss::model::{builtin_candidate, match_presentation, sphere_model};
use loopss::report::render_chart;
use loopss::spectral::extension_report;

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let model = sphere_model(n).expect("n >= 2");
    let pages = model.pages(3 * n + 4).unwrap();
    for page in &pages {
        print!("{}", render_chart(page, model.spec_for(page.r())));
        println!();
    }

    let einf = pages.last().unwrap();
    let p = einf.presentation();
    for j in [-n, 0, 2 * n - 2, 4 * n - 4] {
        let report = extension_report(einf, j);
        let pieces: Vec<String> = report
            .pieces
            .iter()
            .map(|piece| {
                let reps: Vec<String> = piece.representatives.iter().map(|r| r.format(p)).collect();
                format!(
                    "({},{}) {} [{}]",
                    piece.s,
                    piece.t,
                    piece.group,
                    reps.join(", ")
                )
            })
            .collect();
        let flag = if report.ambiguous {
            "  <- extension ambiguity"
        } else {
            ""
        };
        println!("degree {j}: {}{flag}", pieces.join(" | "));
    }

    let cand = builtin_candidate("theorem2", &model.name, einf.reliable_degree_bound()).unwrap();
    println!("{}", match_presentation(einf, &cand).unwrap());
}
