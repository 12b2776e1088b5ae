//! Exact perturbative computations in enveloping algebras deformed by a
//! formal parameter `λ = 1/κ`.
//!
//! The crate covers PBW arithmetic over Gaussian rationals, tensor powers
//! and truncated λ-series, coproducts and twists, exact linear solving for
//! twist and R-matrix coefficients, and the κ-Poincaré models in the
//! classical basis.

pub mod algebra;
pub mod error;
pub mod frontend;
pub mod hopf;
pub mod models;
pub mod scalar;
pub mod series;
pub mod solver;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::GaussianRational;
