//! Checks every built-in model against its registered presentation.
//!
//! `cargo run --example verify_theorems`

use loopss::model::{
    builtin_candidate, cpn_model, match_presentation, sphere_model, ManifoldModel, ModelName,
};

fn main() {
    let mut models: Vec<ManifoldModel> = (2..=7).map(|n| sphere_model(n).unwrap()).collect();
    models.extend((1..=4).map(|n| cpn_model(n).unwrap()));
    for model in models {
        let expect = match model.name {
            ModelName::Cpn(_) => "theorem3",
            _ => "theorem2",
        };
        let einf = model.e_infinity(8 * model.dimension + 4).unwrap();
        let bound = einf.reliable_degree_bound();
        let cand = builtin_candidate(expect, &model.name, bound).unwrap();
        let verdict = match_presentation(&einf, &cand).unwrap();
        println!(
            "{:<9} {expect:<9} through degree {bound:>3}: {verdict}",
            model.name.to_string()
        );
    }
}
