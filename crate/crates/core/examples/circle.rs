//! The circle is handled in closed form: Λ[a] ⊗ Z[t, t^-1].
//!
//! `cargo run --example circle`

use loopss::model::{circle_loop_homology, laurent_piece};

fn main() {
    let p = circle_loop_homology();
    for g in p.generators() {
        println!("{} at ({},{}) {}", g.name, g.column, g.row, g.kind);
    }
    for j in [1, 0, -1, -2] {
        println!("degree {j:>2}: {}", laurent_piece(&p, 1, j));
    }
}
