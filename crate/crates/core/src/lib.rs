//! Exact computations with a family of quadratic noncommutative algebras over
//! the Gaussian rationals: presentations from parameter matrices, truncated
//! noncommutative Groebner bases, graded automorphisms and Nakayama
//! automorphisms.

pub mod distinguished;
pub mod fixtures;
pub mod freealg;
pub mod groebner;
pub mod linalg;
pub mod nakayama;
pub mod presentations;
pub mod scalar;
pub mod verify;

pub use distinguished::{build_distinguished, Distinguished};
pub use fixtures::Fixture;
pub use freealg::{FreeAlgError, NcPoly, Word};
pub use groebner::{complete, GroebnerError, HilbertFunction, RewriteSystem, Rule};
pub use linalg::{LinalgError, Matrix};
pub use nakayama::{
    calabi_yau_test, compare_frobenius, conjugation_of_normal, frobenius_nakayama, nakayama_a, nakayama_dual,
    nakayama_t1, nakayama_t2, FrobeniusBranch, LinearGeneratorMap, NakayamaData, NakayamaError,
};
pub use presentations::{
    build, check_conditions, restrict_params, AlgebraKind, Condition, ConditionReport, Params, ParamsError,
    Presentation, PresentationError, Witness,
};
pub use scalar::{format_scalar, parse_scalar, GaussianRational, Rational, ScalarError};
pub use verify::{
    automorphism_suite, frobenius_suite, normal_suite, verify_graded_automorphism, verify_lemmas,
    verify_lemmas_unchecked, VerificationItem, VerificationReport,
};
