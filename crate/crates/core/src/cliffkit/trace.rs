use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::weightcalc::{format_rational, rational_to_f64, Rational};

use super::rq::rq_field;
use super::CliffordHomSet;

/// `Σ_i r^q(e_i, e_i)` on `V_ρ` together with its exact value.
#[derive(Clone, Debug)]
pub struct CasimirTrace {
    pub q: usize,
    pub matrix: ComplexMatrix,
    /// `tr/dim(V_ρ)`.
    pub scalar: c64,
    /// `Σ_k m_k^q dim(V_{λ_k}) / dim(V_ρ)`.
    pub expected: Rational,
    pub scalar_residual: f64,
}

/// The generalized Casimir `Σ_i r^q(e_i, e_i)`, which acts on `V_ρ` as a
/// scalar.
pub fn generalized_casimir_trace(set: &CliffordHomSet, q: usize) -> CasimirTrace {
    let field = rq_field(set.rho(), q);
    let d = set.rho_dim();
    let mut matrix = ComplexMatrix::zeros(d, d);
    for i in 0..set.n() {
        matrix += &field.block(i, i);
    }
    let (scalar, scalar_residual) = matrix.scalar_fit();
    let expected = set
        .table()
        .components
        .iter()
        .map(|c| {
            let mut p = Rational::from_integer(1);
            for _ in 0..q {
                p *= c.conformal_weight;
            }
            p * Rational::from_integer(c.dimension as i64)
        })
        .sum::<Rational>()
        / Rational::from_integer(d as i64);
    CasimirTrace { q, matrix, scalar, expected, scalar_residual }
}

/// Scalarity and value of the generalized Casimir for `q = 0..=q_max`.
pub fn casimir_trace_report(set: &CliffordHomSet, q_max: usize, tolerance: f64) -> Report {
    let d = set.rho_dim() as f64;
    let mut report = Report::new("casimir_trace");
    for q in 0..=q_max {
        let t = generalized_casimir_trace(set, q);
        let expected = rational_to_f64(&t.expected);
        let tol = tolerance * d * expected.abs().max(1.0);
        report.push(Check::new("casimir_trace_scalar", t.scalar_residual, tol).with("q", q));
        report.push(
            Check::new("casimir_trace_value", (t.scalar - c64::new(expected, 0.0)).norm(), tolerance * expected.abs().max(1.0))
                .with("q", q)
                .with("expected", format_rational(&t.expected)),
        );
    }
    report
}
