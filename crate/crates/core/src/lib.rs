//! Explicit matrix models of Spin(n) representations and the Clifford
//! homomorphisms of `V_ρ ⊗ Rⁿ`.
//!
//! The crate is split along the computation:
//!
//! - [`weightcalc`]: exact arithmetic on dominant weights (Casimir constants,
//!   the decomposition of `V_ρ ⊗ Rⁿ`, conformal weights, Vandermonde
//!   projector coefficients, Weyl dimensions, eigenvalue bounds).
//! - [`repforge`]: dense unitary matrix representations of `spin(n)`, the
//!   operator `Ĉ` on `V_ρ ⊗ Rⁿ` and its isometric splitting.
//! - [`cliffkit`]: Clifford homomorphisms and the identities they satisfy.
//! - [`curvkit`]: algebraic curvature tensors, the curvature transformation
//!   `R¹_ρ`, Bochner coefficients and principal symbols.
//!
//! Indices of the orthonormal basis `e_0, …, e_{n-1}` are zero-based
//! throughout. Vectors of `V_ρ ⊗ Rⁿ` are stored with the `Rⁿ` index outermost:
//! `φ ⊗ e_i` occupies rows `i·dim .. (i+1)·dim`.

pub mod cliffkit;
pub mod cmat;
pub mod curvkit;
pub mod error;
pub mod linalg;
pub mod report;
pub mod repforge;
pub mod weightcalc;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use weightcalc::{DominantWeight, HalfInt, Rational};
