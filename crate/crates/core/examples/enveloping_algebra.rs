//! PBW arithmetic in the enveloping algebra of the D=2 Poincaré algebra.
//!
//! ```bash
//! cargo run --example enveloping_algebra
//! ```

use kappa_twist::algebra::{commutator, normal_order, validate_presentation, AlgebraElement};
use kappa_twist::models::{d2_presentation, d4_presentation};
use kappa_twist::GaussianRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = d2_presentation();
    let p0 = AlgebraElement::named(&pres, "P0");
    let p1 = AlgebraElement::named(&pres, "P1");
    let n = AlgebraElement::named(&pres, "N");

    // Words are straightened into the fixed PBW order P0 < P1 < N.
    let word = [2, 1, 0];
    println!("N P1 P0 = {}", normal_order(&pres, &word, &GaussianRational::one()));
    println!("N * P1 = {}", &n * &p1);
    println!("[N, P1] = {}", commutator(&n, &p1)?);

    let c0 = &(&p1 * &p1) - &(&p0 * &p0);
    println!("C0 = {c0}");
    println!("[N, C0] = {}", commutator(&n, &c0)?);

    for pres in [d2_presentation(), d4_presentation()] {
        let report = validate_presentation(&pres);
        println!(
            "{}: {} generators, Jacobi {}",
            pres.name(),
            pres.len(),
            if report.passed() { "holds" } else { "fails" }
        );
    }
    Ok(())
}
