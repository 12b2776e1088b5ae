//! Exact scalars aside, everything here lives in `U(g)` for a finite
//! Lie presentation `g`: PBW monomials, canonical elements, straightening.

pub mod element;
pub mod presentation;

pub use element::{commutator, multiply, normal_order, AlgebraElement, PbwMonomial, Terms};
pub use presentation::{validate_presentation, GeneratorId, Grade, JacobiFailure, LiePresentation, ValidationReport};
