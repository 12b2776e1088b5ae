//! κ-Poincaré coproducts in the classical basis, expanded in λ, with the
//! homomorphism and coassociativity checks.
//!
//! ```bash
//! cargo run --example coproducts
//! ```

use kappa_twist::hopf::{check_coassociativity, check_homomorphism};
use kappa_twist::models::{model_d2, model_d4};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for model in [model_d2(2), model_d4(2)] {
        let pres = &model.presentation;
        println!("{} through order {}", model.id.name(), model.truncation);
        for (g, image) in model.target_coproducts.images().iter().enumerate() {
            println!("  D({}) = {image}", pres.generator(g).name);
        }
        let opposite = model.opposite_coproducts();
        println!("  Dop({}) = {}", pres.generator(0).name, opposite.image(0));
        let hom = check_homomorphism(&model.target_coproducts)?;
        let coassoc = check_coassociativity(&model.target_coproducts)?;
        println!("  homomorphism: {}, coassociativity: {}", hom.passed(), coassoc.passed());
    }
    Ok(())
}
