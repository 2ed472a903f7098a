//! A model written in the text grammar. This one reproduces S^4; the
//! commented-out variant shows a line-anchored diagnostic.
//!
//! `cargo run --example custom_model`

use loopss::model::custom_model_parse;
use loopss::report::emit_json;

const S4: &str = "\
# the 4-sphere
dim 4
base a (-4,0) exterior
rel 0 a^2
fiber u (0,3) polynomial
diff r=4 d(u) = 2 a*u^2
";

const BROKEN: &str = "\
dim 4
base a (-4,0) exterior
fiber u (0,3) polynomial
diff r=4 d(u) = 2 a*u
";

fn main() {
    let model = custom_model_parse(S4).unwrap();
    let einf = model.e_infinity(12).unwrap();
    println!("{}", emit_json(&einf, None));

    match custom_model_parse(BROKEN) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected:\n{e}"),
    }
}
