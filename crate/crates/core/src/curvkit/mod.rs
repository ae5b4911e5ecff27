//! Algebraic curvature tensors, the curvature transformation `R¹_ρ`, Bochner
//! coefficients and principal symbols.

mod bochner;
mod symbols;
mod tensor;
mod transform;

pub use bochner::{bochner_report, BochnerCoefficients};
pub use symbols::{dirac_symbols, verify_symbols, SymbolReport};
pub use tensor::{constant_curvature, decomposable_square, kulkarni_nomizu, random_positive, AlgebraicCurvatureTensor, SYMMETRY_TOLERANCE};
pub use transform::{
    constant_curvature_check, curvature_endomorphism, curvature_suite, r1_transform, sampled_min_sectional, verify_curvature_bound, CurvatureTransform,
    SECTIONAL_SAMPLES, SUITE_LOWER_BOUND,
};
