//! Shared strategies for the integration tests.
#![allow(dead_code)]

pub mod linear;

use std::sync::Arc;

use kappa_twist::algebra::{AlgebraElement, LiePresentation};
use kappa_twist::models::{d2_presentation, d4_presentation};
use kappa_twist::tensor::TensorElement;
use kappa_twist::GaussianRational;
use proptest::prelude::*;

pub fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 1i64..=2)
        .prop_filter("nonzero", |(a, _, c, _)| *a != 0 || *c != 0)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts((a, b), (c, d)))
}

/// A word in the generators, not necessarily ordered.
pub fn word(generators: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..generators, 0..=max_len)
}

pub fn product_of(pres: &Arc<LiePresentation>, word: &[usize]) -> AlgebraElement {
    word.iter().fold(AlgebraElement::one(pres), |acc, &g| &acc * &AlgebraElement::generator(pres, g))
}

pub fn element_from(pres: &Arc<LiePresentation>, terms: &[(Vec<usize>, GaussianRational)]) -> AlgebraElement {
    terms.iter().fold(AlgebraElement::zero(pres), |acc, (w, c)| &acc + &product_of(pres, w).scale(c))
}

/// Small random elements of `U(g)` for D=2 or D=4.
pub fn element(pres: Arc<LiePresentation>, max_terms: usize, max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    let n = pres.len();
    prop::collection::vec((word(n, max_len), coefficient()), 0..=max_terms)
        .prop_map(move |terms| element_from(&pres, &terms))
}

pub fn d2_element() -> impl Strategy<Value = AlgebraElement> {
    element(d2_presentation(), 3, 3)
}

pub fn d4_element() -> impl Strategy<Value = AlgebraElement> {
    element(d4_presentation(), 2, 2)
}

pub fn any_element() -> impl Strategy<Value = AlgebraElement> {
    prop_oneof![3 => d2_element(), 1 => d4_element()]
}

/// Random two-leg tensors over D=2.
pub fn d2_tensor(max_terms: usize, max_len: usize) -> impl Strategy<Value = TensorElement> {
    let pres = d2_presentation();
    prop::collection::vec((element(pres.clone(), 1, max_len), element(pres, 1, max_len)), 0..=max_terms).prop_map(
        |pairs| {
            pairs
                .iter()
                .fold(TensorElement::zero(&d2_presentation(), 2), |acc, (a, b)| &acc + &TensorElement::pure(&[a, b]))
        },
    )
}

pub fn named(pres: &Arc<LiePresentation>, name: &str) -> AlgebraElement {
    AlgebraElement::named(pres, name)
}

/// Three elements over one presentation.
pub fn triple() -> impl Strategy<Value = (AlgebraElement, AlgebraElement, AlgebraElement)> {
    prop_oneof![
        3 => (d2_element(), d2_element(), d2_element()),
        1 => (d4_element(), d4_element(), d4_element()),
    ]
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
