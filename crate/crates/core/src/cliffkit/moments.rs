use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::weightcalc::VandermondeCoefficients;

use super::pass::{self, PassOutcome};
use super::projectors::projector_checks;
use super::rq::rq_field;
use super::CliffordHomSet;

/// Default highest moment: `2N + 2`, where `N + 1` is the number of distinct
/// conformal weights.
pub fn default_q_max(set: &CliffordHomSet) -> usize {
    2 * (set.table().merged_groups().len() - 1) + 2
}

/// Checks `Σ_k m_k^q p_k(e_i)† p_k(e_j) = r^q(e_i, e_j)` for `q = 0..=q_max`
/// and the contraction identity per component.
///
/// Each moment check bounds the Frobenius norm of the whole operator
/// `r^q − Σ_k m_k^q Π_k` on `V_ρ ⊗ Rⁿ`, which dominates every block
/// `(i, j)`. Its tolerance is `tolerance · dim(V_ρ ⊗ Rⁿ) · max(1, max|m_k|)^q`,
/// proportional to the size of the operators being compared.
pub fn verify_moment_identities(set: &CliffordHomSet, q_max: usize, tolerance: f64) -> Report {
    let outcome = pass::run(set, q_max, None);
    moment_report(set, &outcome, tolerance)
}

/// Moments and the projector comparison from a single sweep.
pub fn verify_moments_and_projectors(
    set: &CliffordHomSet,
    q_max: usize,
    coeffs: &VandermondeCoefficients,
    tolerance: f64,
) -> crate::Result<(Report, Report)> {
    super::projectors::check_coefficients(set, coeffs)?;
    let outcome = pass::run(set, q_max, Some(coeffs));
    Ok((moment_report(set, &outcome, tolerance), projector_checks(set, &outcome, tolerance)))
}

pub(crate) fn moment_report(set: &CliffordHomSet, outcome: &PassOutcome, tolerance: f64) -> Report {
    let dim = set.tensor_dim() as f64;
    let mut report = Report::new("moments");
    report.push(Check::new("isometry", outcome.gram_deviation, tolerance * dim));
    for (q, (&bound, &frame)) in outcome.moment_bounds.iter().zip(&outcome.frame_moments).enumerate() {
        let scale = outcome.max_weight.max(1.0).powi(q as i32);
        report.push(
            Check::new("moment", bound, tolerance * dim * scale)
                .with("q", q)
                .with("frame_residual", format!("{frame:.3e}")),
        );
    }
    for check in &set.defining_report().checks {
        if check.identity == "contraction" {
            report.push(check.clone());
        }
    }
    report
}

/// Literal evaluation of the `q`-th moment identity: the largest Frobenius
/// residual over the blocks `(i, j)`. Dense; meant for small cases.
pub fn moment_residual_direct(set: &CliffordHomSet, q: usize) -> f64 {
    let weights: Vec<c64> = set
        .components()
        .iter()
        .map(|c| c64::new(c.conformal_weight().powi(q as i32), 0.0))
        .collect();
    let lhs = set.weighted_gram_operator(&weights);
    let rq = rq_field(set.rho(), q);
    let n = set.n();
    let d = set.rho_dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let block: ComplexMatrix = lhs.block(i * d, j * d, d, d);
            worst = worst.max(block.distance(&rq.block(i, j)));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffkit::homset_for;
    use crate::report::DEFAULT_TOLERANCE;
    use crate::weightcalc::{vandermonde_coefficients, DominantWeight};

    fn set(n: usize, s: &str) -> CliffordHomSet {
        homset_for(&DominantWeight::parse(n, s).unwrap()).unwrap()
    }

    #[test]
    fn vector_five_beyond_rank() {
        let s = set(5, "1,0");
        assert_eq!(default_q_max(&s), 6);
        for q in 0..=6 {
            assert!(moment_residual_direct(&s, q) < 1e-9, "q = {q}");
        }
        let report = verify_moment_identities(&s, 6, DEFAULT_TOLERANCE);
        assert!(report.pass(), "{report:?}");
    }

    /// The frame bound dominates the literal block residuals.
    #[test]
    fn bound_dominates_direct() {
        let s = set(4, "3/2,1/2");
        let report = verify_moment_identities(&s, 5, DEFAULT_TOLERANCE);
        assert!(report.pass());
        for check in report.checks.iter().filter(|c| c.identity == "moment") {
            let q: usize = check.params["q"].parse().unwrap();
            assert!(moment_residual_direct(&s, q) <= check.max_residual + 1e-14);
        }
    }

    #[test]
    fn spinor_first_moment_coefficients() {
        let s = set(5, "1/2,1/2");
        let weights: Vec<f64> = s.components().iter().map(|c| c.conformal_weight()).collect();
        assert_eq!(weights, vec![-0.5, 2.0]);
        assert!(moment_residual_direct(&s, 1) < 1e-10);
    }

    #[test]
    fn combined_sweep_on_exceptional() {
        let s = set(6, "1,1,0");
        let coeffs = vandermonde_coefficients(s.table()).unwrap();
        let (moments, projectors) = verify_moments_and_projectors(&s, default_q_max(&s), &coeffs, DEFAULT_TOLERANCE).unwrap();
        assert!(moments.pass(), "{moments:?}");
        assert!(projectors.pass(), "{projectors:?}");
    }

    /// A wrong conformal weight must break the first moment.
    #[test]
    fn wrong_weight_detected() {
        let s = set(5, "1,0");
        let mut report = verify_moment_identities(&s, 2, DEFAULT_TOLERANCE);
        assert!(report.pass());
        let mut broken = s.clone();
        broken.perturb_weight_for_test(0, crate::Rational::new(1, 2));
        report = verify_moment_identities(&broken, 2, DEFAULT_TOLERANCE);
        assert!(!report.pass());
    }
}
