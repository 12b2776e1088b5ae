//! Truncated λ-series: products, inverses, exponentials and logarithms.
//!
//! ```bash
//! cargo run --example deformation_series
//! ```

use kappa_twist::algebra::AlgebraElement;
use kappa_twist::models::{d2_presentation, model_d2};
use kappa_twist::series::{series_exp, series_inv, series_log, series_mul, DeformationSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = d2_presentation();
    let p0 = AlgebraElement::named(&pres, "P0");
    let zero = AlgebraElement::zero(&pres);

    // exp(λ P0) through λ^4
    let x = DeformationSeries::new(vec![zero.clone(), p0.clone(), zero.clone(), zero.clone(), zero]);
    let e = series_exp(&x)?;
    println!("exp(L P0) = {e}");
    println!("log(exp(L P0)) = {}", series_log(&e)?);
    println!("exp(L P0) exp(-L P0) = {}", series_mul(&e, &series_inv(&e)?)?);

    let m = model_d2(3);
    println!("Pi0 = {}", m.pi0);
    println!("Pi0^-1 = {}", m.pi0_inv);
    println!("Pi0 Pi0^-1 = {}", series_mul(&m.pi0, &m.pi0_inv)?);
    Ok(())
}
