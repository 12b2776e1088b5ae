//! Randomized invariants of the enveloping-algebra arithmetic.

mod common;

use common::*;
use kappa_twist::algebra::{commutator, normal_order, AlgebraElement};
use kappa_twist::models::{d2_presentation, d4_presentation};
use kappa_twist::series::{series_exp, series_inv, series_mul, DeformationSeries};
use kappa_twist::tensor::{flip, permute, LegPermutation, TensorElement};
use kappa_twist::GaussianRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn normal_order_is_idempotent(a in any_element()) {
        let pres = a.presentation().clone();
        let again = a.terms().iter().fold(AlgebraElement::zero(&pres), |acc, (m, c)| {
            &acc + &normal_order(&pres, m.factors(), c)
        });
        prop_assert_eq!(again, a);
    }

    #[test]
    fn straightening_agrees_with_literal_rewrite(w in word(3, 6), c in coefficient()) {
        let pres = d2_presentation();
        prop_assert_eq!(product_of(&pres, &w).scale(&c), normal_order(&pres, &w, &c));
    }

    #[test]
    fn straightening_agrees_with_literal_rewrite_d4(w in word(10, 4), c in coefficient()) {
        let pres = d4_presentation();
        prop_assert_eq!(product_of(&pres, &w).scale(&c), normal_order(&pres, &w, &c));
    }

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn commutator_satisfies_jacobi((a, b, c) in triple()) {
        let br = |x: &AlgebraElement, y: &AlgebraElement| commutator(x, y).unwrap();
        let sum = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn commutator_is_a_derivation((a, b, c) in triple()) {
        let br = |x: &AlgebraElement, y: &AlgebraElement| commutator(x, y).unwrap();
        prop_assert_eq!(br(&a, &(&b * &c)), &(&br(&a, &b) * &c) + &(&b * &br(&a, &c)));
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn product_distributes(a in d2_element(), b in d2_element(), c in d2_element()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&c * &(&a + &b), &(&c * &a) + &(&c * &b));
    }

    #[test]
    fn flip_is_multiplicative_involution(u in d2_tensor(2, 2), v in d2_tensor(2, 2)) {
        let fu = flip(&u).unwrap();
        prop_assert_eq!(flip(&fu).unwrap(), u.clone());
        prop_assert_eq!(flip(&(&u * &v)).unwrap(), &fu * &flip(&v).unwrap());
    }

    #[test]
    fn leg_permutations_compose(a in d2_element(), b in d2_element(), c in d2_element(), i in 0usize..6, j in 0usize..6) {
        let t = TensorElement::pure(&[&a, &b, &c]);
        let all = LegPermutation::all(3);
        let (s, p) = (&all[i], &all[j]);
        let step = permute(&permute(&t, p).unwrap(), s).unwrap();
        prop_assert_eq!(step, permute(&t, &s.compose(p)).unwrap());
    }

    #[test]
    fn series_ring_laws(a in prop::collection::vec(d2_element(), 3), b in prop::collection::vec(d2_element(), 3), c in prop::collection::vec(d2_element(), 3)) {
        let (a, b, c) = (DeformationSeries::new(a), DeformationSeries::new(b), DeformationSeries::new(c));
        let ab_c = series_mul(&series_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = series_mul(&a.add(&b).unwrap(), &c).unwrap();
        let rhs = series_mul(&a, &c).unwrap().add(&series_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse(x in d2_element(), y in d2_element()) {
        let pres = d2_presentation();
        let s = DeformationSeries::new(vec![AlgebraElement::one(&pres), x, y]);
        let inv = series_inv(&s).unwrap();
        let one = DeformationSeries::one(&AlgebraElement::one(&pres), 2);
        prop_assert_eq!(series_mul(&s, &inv).unwrap(), one.clone());
        prop_assert_eq!(series_mul(&inv, &s).unwrap(), one);
    }

    #[test]
    fn exp_of_commuting_sum(a1 in momentum_element(), a2 in momentum_element(), b1 in momentum_element(), b2 in momentum_element()) {
        let pres = d2_presentation();
        let zero = AlgebraElement::zero(&pres);
        let a = DeformationSeries::new(vec![zero.clone(), a1, a2, zero.clone()]);
        let b = DeformationSeries::new(vec![zero.clone(), b1, b2, zero]);
        let lhs = series_mul(&series_exp(&a).unwrap(), &series_exp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, series_exp(&a.add(&b).unwrap()).unwrap());
    }
}

fn momentum_element() -> impl Strategy<Value = AlgebraElement> {
    let pres = d2_presentation();
    prop::collection::vec((word(2, 2), coefficient()), 0..=2).prop_map(move |t| element_from(&pres, &t))
}

#[test]
fn exp_of_noncommuting_sum_differs() {
    let pres = d2_presentation();
    let zero = AlgebraElement::zero(&pres);
    let a = DeformationSeries::new(vec![zero.clone(), named(&pres, "N"), zero.clone()]);
    let b = DeformationSeries::new(vec![zero.clone(), named(&pres, "P0"), zero]);
    let lhs = series_mul(&series_exp(&a).unwrap(), &series_exp(&b).unwrap()).unwrap();
    let diff = lhs.sub(&series_exp(&a.add(&b).unwrap()).unwrap()).unwrap();
    // the λ² defect is ½[N, P0] = ½ i P1
    let half_i = GaussianRational::from_parts((0, 1), (1, 2));
    assert_eq!(diff.coeff(2).unwrap(), &named(&pres, "P1").scale(&half_i));
}
