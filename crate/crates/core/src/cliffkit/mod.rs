//! Clifford homomorphisms `p_λ: Rⁿ → Hom(V_ρ, V_λ)` and the identities they
//! satisfy.

mod equivariance;
mod homs;
mod moments;
mod pass;
mod pfaffian;
mod projectors;
mod rq;
mod special;
mod trace;

pub use equivariance::{equivariance_residuals, verify_equivariance};
pub use homs::{clifford_homs, defining_identities, homset_for, CliffordHom, CliffordHomSet};
pub use moments::{default_q_max, moment_residual_direct, verify_moment_identities, verify_moments_and_projectors};
pub use pfaffian::{pf_bilinear_check, pfaffian_bruteforce, pfaffian_casimir, pfaffian_report, PfaffianOperator};
pub use projectors::{assemble_projectors, verify_projectors, ProjectorSet, DENSE_PROJECTOR_LIMIT};
pub use rq::{r2_antisymmetry_residual, rq_field, BlockOperator};
pub use special::{specialization_suite, specializations_for, SpecializationKind};
pub use trace::{casimir_trace_report, generalized_casimir_trace, CasimirTrace};
