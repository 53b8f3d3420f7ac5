//! Almost contact B-metric structures on 3-dimensional real Lie algebras.
//!
//! Every algebra is presented by its structure constants in the fixed
//! φ-basis `{E0 = ξ, E1, E2 = φE1}` with `g = diag(1, 1, −1)`. From there the
//! crate computes the fundamental tensor `F = g((∇φ)·,·)`, its Lee forms and
//! basic-class decomposition, the special-structure predicates, and the
//! Levi-Civita curvature suite. All computations are generic over [`Scalar`];
//! exact rationals are the default.

pub mod connection;
pub mod contact;
pub mod curvature;
pub mod document;
pub mod families;
pub mod lie;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod tensor;
pub mod verify;

pub use connection::{levi_civita, Connection};
pub use contact::AcbStructure;
pub use curvature::{
    analyze, curvature_template_check, curvature_tensor, einstein_taxonomy, CurvatureReport,
    EinsteinLabel, EinsteinVerdict,
};
pub use document::{DocumentError, InputDocument, Mode};
pub use families::{
    construct_class_family, construct_example, random_lie_algebra, ExampleSpec, FamilySpec,
};
pub use lie::{jacobi_close, Denominator, FreeCoefficients, LieAlgebra, StructureConstants};
pub use report::Report;
pub use scalar::{parse_rational, Rational, Scalar, Tolerance};
pub use structure::{
    classify, compute_f_closed_form, compute_f_oracle, decompose, lee_forms, special_structures,
    BasicClass, ClassDecomposition, FTensor,
};
pub use tensor::{kulkarni_nomizu, SymTensor2, Tensor2, Tensor3, Tensor4};
pub use verify::{VerifyConfig, VerifyReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structure constants violate the Jacobi identity, defect on (E0,E1,E2) = [{}]", .defect.join(", "))]
    NotALieAlgebra { defect: Vec<String> },
    #[error("structure constants are not antisymmetric in the lower indices (defect {0})")]
    NotAntisymmetric(String),
    #[error("closure formula denominator {0} vanishes")]
    ZeroDenominator(Denominator),
    #[error("tensor is not a valid F on a 3-dimensional almost contact B-metric manifold: {0}")]
    MalformedF(String),
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("no admissible draw after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("no curvature template for membership {0}")]
    UnsupportedClass(String),
    #[error("matrix is not symmetric (defect {0})")]
    Asymmetric(String),
}
