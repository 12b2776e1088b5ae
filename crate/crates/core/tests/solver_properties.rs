//! Randomized soundness of the exact linear solver against a dense rank oracle.

mod common;

use common::config;
use common::linear::{check, planted_system, random_system};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn random_right_hand_side((a, b) in random_system()) {
        check(a, b)?;
    }

    #[test]
    fn planted_solution((a, b) in planted_system()) {
        check(a, b)?;
    }
}
