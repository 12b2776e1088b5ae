//! Twisting the primitive coproduct: an abelian twist is a cocycle with
//! trivial coassociator, a non-abelian one gives a quasi-Hopf structure.
//!
//! ```bash
//! cargo run --example coassociator
//! ```

use kappa_twist::frontend::parse_twist;
use kappa_twist::hopf::{
    check_modified_ybe, check_quasi_coassoc, check_quasitriangularity, coassociator, conjugate_by_twist,
    twisted_rmatrix, CoproductMap,
};
use kappa_twist::models::d2_presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = d2_presentation();
    let n = 3;
    let base = CoproductMap::primitive(&pres, n);
    for text in ["exp(L*(P0 # P1))", "exp(L*(-i*P1 # N) + L^2*(P0^2 # N))"] {
        let twist = parse_twist(text, &pres, n)?;
        let phi = coassociator(&twist, &base)?;
        let delta = conjugate_by_twist(&twist, &base, n)?;
        let r = twisted_rmatrix(&twist);
        println!("F = {text}");
        println!("  phi = {phi}");
        println!("  quasi-coassociativity: {}", check_quasi_coassoc(&delta, &phi)?.passed());
        println!("  quasitriangularity: {}", check_quasitriangularity(&r, &phi, &delta)?.passed());
        println!("  modified YBE: {}", check_modified_ybe(&r, &phi)?.passed());
    }
    Ok(())
}
