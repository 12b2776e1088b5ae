//! The D=2 universal R-matrix R = exp(λ r1 + λ² r2 + …), solved order by
//! order from R Δ = Δop R.
//!
//! ```bash
//! cargo run --example rmatrix
//! ```

use kappa_twist::hopf::check_intertwiner;
use kappa_twist::models::model_d2;
use kappa_twist::series::series_exp;
use kappa_twist::solver::{log_series, solve_rmatrix_through, AnsatzConstraints};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = model_d2(2);
    let results = solve_rmatrix_through(&model.target_coproducts, 2, AnsatzConstraints::for_order)?;
    let mut logs = Vec::new();
    for res in &results {
        let r = res.particular().ok_or("no solution")?;
        println!("r{} = {r}   (kernel dimension {})", res.equation.order, res.kernel().len());
        logs.push(r.clone());
    }
    let r = series_exp(&log_series(&model.presentation, &logs, logs.len()))?;
    println!("R = {r}");
    let check = check_intertwiner(&r, &model.target_coproducts)?;
    println!("R D = Dop R through order {}: {}", check.truncation, check.passed());
    Ok(())
}
