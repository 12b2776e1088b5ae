//! The exact solver on its own: a consistent system returns a particular
//! solution and kernel, an inconsistent one a checkable certificate.
//!
//! ```bash
//! cargo run --example linear_solver
//! ```

use kappa_twist::algebra::AlgebraElement;
use kappa_twist::models::d2_presentation;
use kappa_twist::solver::{solve_linear, verify_outcome, LinearSystem};
use kappa_twist::tensor::TensorElement;

fn main() {
    let pres = d2_presentation();
    let t = |name: &str| TensorElement::from_algebra(&AlgebraElement::named(&pres, name));
    let (p0, p1, n) = (t("P0"), t("P1"), t("N"));

    // unknowns u0 = P0, u1 = P1, u2 = N mapped to one block; images chosen
    // so that u0 and u1 land on the same row
    let unknowns = vec![p0.clone(), p1.clone(), n.clone()];
    let images = vec![vec![p0.clone()], vec![p0.clone()], vec![p1.clone()]];
    for rhs in [&p0 + &p1, &p0 + &n] {
        let sys = LinearSystem::assemble(unknowns.clone(), vec!["eq".into()], images.clone(), vec![rhs.clone()]);
        let outcome = solve_linear(&sys);
        println!("rhs {rhs}: {outcome:?}");
        println!("  {}", verify_outcome(&outcome, &sys));
    }
}
