//! Parsing expressions and model files, and printing a model back.
//!
//! ```bash
//! cargo run --example model_files
//! ```

use kappa_twist::frontend::print::model_file_text;
use kappa_twist::frontend::{load_model, parse_expression};
use kappa_twist::hopf::check_homomorphism;
use kappa_twist::models::d2_presentation;

const MODEL: &str = r#"
// a two-generator toy with one deformed coproduct
algebra "toy" {
    generator H, X : momentum;
    coproduct H = H # 1 + 1 # H + L*(X # X) + O(L^3);
}
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = d2_presentation();
    for text in ["[N, P1]", "-i * (P1 # N)", "P0 # 1 + 1 # P0 + L*(P1 # P1)", "(P0 + L*P1)^2 + O(L^2)"] {
        println!("{text}  =>  {}", parse_expression(text, &pres)?);
    }

    let model = load_model(MODEL)?;
    println!("{} through order {}", model.presentation.name(), model.truncation);
    println!("homomorphism: {}", check_homomorphism(&model.coproducts)?.passed());
    print!("{}", model_file_text(&model.presentation, Some(&model.coproducts), None));

    match load_model("algebra \"bad\" {\n    generator A : momentum;\n    bracket [A, B] = A;\n}") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("error at {e}"),
    }
    Ok(())
}
