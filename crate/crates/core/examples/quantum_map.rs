//! The map to the bicrossproduct basis, its inverse, the bicrossproduct
//! relations and the deformed mass Casimir.
//!
//! ```bash
//! cargo run --example quantum_map
//! ```

use kappa_twist::models::{
    bicross_verify, casimir_centrality, deformed_casimir, inverse_map_check, model_d2, model_d4, quantum_map,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d2 = model_d2(3);
    let qm = quantum_map(&d2)?;
    println!("cP0 = {}", qm.curly_p0);
    println!("cP1 = {}", qm.curly_p[0]);
    println!("C = {}", deformed_casimir(&d2)?);
    println!("Casimir central: {}", casimir_centrality(&d2)?.passed());
    for model in [d2, model_d4(2)] {
        println!(
            "{} order {}: inverse map {}, bicrossproduct {}",
            model.id.name(),
            model.truncation,
            inverse_map_check(&model)?.passed(),
            bicross_verify(&model)?.passed()
        );
    }
    Ok(())
}
