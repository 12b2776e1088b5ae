//! Tensor powers of the enveloping algebra: products, flips and leg
//! permutations.
//!
//! ```bash
//! cargo run --example tensor_legs
//! ```

use kappa_twist::algebra::AlgebraElement;
use kappa_twist::models::d2_presentation;
use kappa_twist::tensor::{embed, flip, permute, tensor_commutator, LegPermutation, TensorElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = d2_presentation();
    let g = |name: &str| AlgebraElement::named(&pres, name);
    let one = AlgebraElement::one(&pres);

    let u = TensorElement::pure(&[&g("N"), &one]);
    let v = TensorElement::pure(&[&g("P1"), &g("P0")]);
    println!("(N # 1)(P1 # P0) = {}", &u * &v);
    println!("[N # 1, P1 # P0] = {}", tensor_commutator(&u, &v)?);
    println!("flip(P1 # P0) = {}", flip(&v)?);

    let w = TensorElement::pure(&[&g("P0"), &g("P1"), &g("N")]);
    for sigma in LegPermutation::all(3) {
        println!("sigma {:?}: {}", sigma.subscripts(), permute(&w, &sigma)?);
    }
    println!("(P1 # P0)_13 = {}", embed(&v, &[1, 3], 3)?);
    Ok(())
}
