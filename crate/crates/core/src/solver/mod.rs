//! Exact linear algebra for order-by-order reconstruction of twists and
//! R-matrices, with inconsistency certificates when no solution exists.

pub mod ansatz;
pub mod linear;
pub mod orders;

pub use ansatz::{ansatz_basis, leg_monomials, rotation_invariants, AnsatzConstraints};
pub use linear::{solve_linear, verify_outcome, LinearSystem, RowKey, SolveOutcome, Verification};
pub use orders::{
    exponential_twist, log_series, rmatrix_equation, solve_rmatrix_order, solve_rmatrix_through, solve_twist_order,
    solve_twist_through, twist_equation, OrderEquation, OrderResult, SystemShape,
};
