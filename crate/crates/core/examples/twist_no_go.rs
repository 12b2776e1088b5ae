//! Order-by-order search for a twist F = exp(λ f1 + λ² f2 + …) with
//! F Δ0 F⁻¹ = Δ. Order 1 has a solution; order 2 ends in an obstruction
//! whose certificate is checked independently.
//!
//! ```bash
//! cargo run --example twist_no_go
//! ```

use kappa_twist::models::{model_d2, model_d4};
use kappa_twist::solver::{solve_twist_through, AnsatzConstraints, SolveOutcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for model in [model_d2(2), model_d4(2)] {
        println!("{}", model.id.name());
        let results = solve_twist_through(&model.target_coproducts, 2, AnsatzConstraints::for_order)?;
        for res in &results {
            let n = res.equation.order;
            println!(
                "  order {n}: {} unknowns, {} equations, {}",
                res.system.num_unknowns(),
                res.system.num_rows(),
                res.verification
            );
            match &res.outcome {
                SolveOutcome::Solution { particular, kernel_basis, .. } => {
                    println!("    f{n} = {particular}, kernel dimension {}", kernel_basis.len());
                }
                SolveOutcome::Obstruction { pairing, blocked, .. } => {
                    println!("    obstruction, certificate pairs to {pairing}");
                    for label in blocked.iter().take(5) {
                        println!("      {label}");
                    }
                }
            }
        }
    }
    Ok(())
}
