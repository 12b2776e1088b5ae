//! Random linear systems with a dense rank oracle.

use kappa_twist::algebra::AlgebraElement;
use kappa_twist::models::d2_presentation;
use kappa_twist::solver::{solve_linear, verify_outcome, LinearSystem, SolveOutcome};
use kappa_twist::tensor::TensorElement;
use kappa_twist::GaussianRational;
use proptest::prelude::*;

pub type Dense = Vec<Vec<GaussianRational>>;

pub fn entry() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        3 => Just((0, 0)),
        2 => (-3i64..=3, -2i64..=2),
    ]
    .prop_map(|(a, c)| GaussianRational::from_parts((a, 1), (c, 1)))
}

pub fn dense(rows: usize, cols: usize) -> impl Strategy<Value = Dense> {
    prop::collection::vec(prop::collection::vec(entry(), cols), rows)
}

/// Rank by dense elimination.
pub fn rank(mut m: Dense) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Column `j` is the image of `N^j`; row `i` is the monomial `P0^i`.
pub fn system(a: &Dense, b: &[GaussianRational]) -> LinearSystem {
    let pres = d2_presentation();
    let cols = a[0].len();
    let row_basis: Vec<TensorElement> =
        (0..a.len()).map(|i| TensorElement::from_algebra(&AlgebraElement::named(&pres, "P0").pow(i as u32))).collect();
    let combo = |coeffs: &mut dyn Iterator<Item = &GaussianRational>| {
        row_basis.iter().zip(coeffs).fold(TensorElement::zero(&pres, 1), |acc, (t, c)| &acc + &t.scale(c))
    };
    let unknowns =
        (0..cols).map(|j| TensorElement::from_algebra(&AlgebraElement::named(&pres, "N").pow(j as u32 + 1))).collect();
    let images = (0..cols).map(|j| vec![combo(&mut a.iter().map(|r| &r[j]))]).collect();
    LinearSystem::assemble(unknowns, vec!["eq".into()], images, vec![combo(&mut b.iter())])
}

/// `A x = b` with `A` and `b` independent.
pub fn random_system() -> impl Strategy<Value = (Dense, Vec<GaussianRational>)> {
    (1usize..=6, 1usize..=5).prop_flat_map(|(r, c)| (dense(r, c), prop::collection::vec(entry(), r)))
}

/// `A x = A x₀` for a random `x₀`.
pub fn planted_system() -> impl Strategy<Value = (Dense, Vec<GaussianRational>)> {
    (1usize..=6, 1usize..=5).prop_flat_map(|(r, c)| (dense(r, c), prop::collection::vec(entry(), c))).prop_map(
        |(a, x)| {
            let b = a
                .iter()
                .map(|row| row.iter().zip(&x).fold(GaussianRational::zero(), |acc, (p, q)| &acc + &(p * q)))
                .collect();
            (a, b)
        },
    )
}

/// The outcome verifies, and its kind and kernel dimension agree with the
/// rank oracle.
pub fn check(a: Dense, b: Vec<GaussianRational>) -> Result<(), TestCaseError> {
    let cols = a[0].len();
    let sys = system(&a, &b);
    let out = solve_linear(&sys);
    let v = verify_outcome(&out, &sys);
    prop_assert!(v.passed, "{}", v);
    let ra = rank(a.clone());
    let augmented: Dense = a.iter().zip(&b).map(|(r, x)| r.iter().chain([x]).cloned().collect()).collect();
    let consistent = rank(augmented) == ra;
    match out {
        SolveOutcome::Solution { kernel_basis, .. } => {
            prop_assert!(consistent);
            prop_assert_eq!(kernel_basis.len(), cols - ra);
        }
        SolveOutcome::Obstruction { .. } => prop_assert!(!consistent),
    }
    Ok(())
}
