//! Coproducts, twists, coassociators, R-matrices and the identity checks
//! that relate them.

pub mod checks;
pub mod coproduct;
pub mod twist;

pub use checks::{
    check_coassociativity, check_homomorphism, check_intertwiner, check_modified_ybe, check_quasi_coassoc,
    check_quasitriangularity, subscript3, ResidueEntry, ResidueSummary, Residues,
};
pub use coproduct::{primitive_coproduct, CoproductMap};
pub use twist::{adjoint_exp, coassociator, conjugate_by_twist, twisted_rmatrix, TwistSeries};
