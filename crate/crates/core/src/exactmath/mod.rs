//! Exact arithmetic substrate: rationals, Gaussian rationals, binary forms,
//! elimination and certified root isolation.

mod complex_roots;
pub mod encode;
mod form;
mod gaussian;
pub mod interval;
pub mod linalg;
mod poly;
mod roots;
mod scalar;

use thiserror::Error;

pub use complex_roots::{isolate_complex_roots, ComplexRoots, RootDisk};
pub use form::{
    conjugate_root_pair, exact_sqrt, form_eval, form_from_roots, form_gcd, resultant,
    squarefree_part, sylvester_det, sylvester_matrix, BinaryForm, ProjPoint1,
};
pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use roots::{count_real_roots, isolate_real_roots, root_bound, AlgebraicReal, RootLocation, SturmChain};
pub use scalar::{dyadic, from_f64, rat, ratio, simplest_between, sqrt_upper, to_f64, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("form is not squarefree")]
    NotSquarefree,
    #[error("form has non-real coefficients")]
    NotReal,
    #[error("the zero form has no roots")]
    ZeroForm,
    #[error("expected a real quadratic form")]
    NotRealQuadratic,
    #[error("roots are not Gaussian-rational")]
    NotRepresentable,
    #[error("complex root isolation did not certify")]
    RootIsolationFailed,
}
