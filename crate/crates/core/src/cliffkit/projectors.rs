use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::repforge::{spectral_clusters, SNAP_TOLERANCE};
use crate::weightcalc::{format_rational, rational_to_f64, Rational, VandermondeCoefficients};

use super::pass::{self, PassOutcome};
use super::rq::r1_matrix;
use super::CliffordHomSet;

/// Largest `dim(V_ρ)·n` for which [`assemble_projectors`] forms dense
/// projectors.
pub const DENSE_PROJECTOR_LIMIT: usize = 1024;

/// Orthogonal projectors of `V_ρ ⊗ Rⁿ` onto the groups of equal conformal
/// weight, in three independent constructions.
#[derive(Clone, Debug)]
pub struct ProjectorSet {
    /// Component indices per group; the exceptional pair is one group.
    pub groups: Vec<Vec<usize>>,
    pub weights: Vec<Rational>,
    /// `Π(φ⊗u) = Σ_i p(e_i)† p(u) φ ⊗ e_i`, assembled block by block.
    pub gram: Vec<ComplexMatrix>,
    /// `Σ_q n_{gq} r^q`.
    pub vandermonde: Vec<ComplexMatrix>,
    /// From a fresh eigendecomposition of `r¹`.
    pub spectral: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// The Gram-form projectors.
    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.gram
    }

    /// Pairwise agreement of the three constructions.
    pub fn agreement(&self, tolerance: f64) -> Report {
        let mut report = Report::new("projector_agreement");
        for (g, w) in self.weights.iter().enumerate() {
            let dim = self.gram[g].rows() as f64;
            let pairs = [
                ("gram_vs_vandermonde", &self.gram[g], &self.vandermonde[g]),
                ("gram_vs_spectral", &self.gram[g], &self.spectral[g]),
                ("vandermonde_vs_spectral", &self.vandermonde[g], &self.spectral[g]),
            ];
            for (name, a, b) in pairs {
                report.push(Check::new(name, a.distance(b), tolerance * dim).with("group", g).with("m", format_rational(w)));
            }
        }
        report
    }

    /// Idempotence, self-adjointness, mutual orthogonality, completeness and
    /// ranks of each construction.
    pub fn invariants(&self, expected_ranks: &[u64], tolerance: f64) -> Report {
        let mut report = Report::new("projector_algebra");
        for (name, set) in [("gram", &self.gram), ("vandermonde", &self.vandermonde), ("spectral", &self.spectral)] {
            let Some(first) = set.first() else { continue };
            let dim = first.rows();
            let tol = tolerance * dim as f64;
            let mut idem = 0.0f64;
            let mut herm = 0.0f64;
            let mut orth = 0.0f64;
            let mut rank = 0.0f64;
            let mut total = ComplexMatrix::zeros(dim, dim);
            for (g, p) in set.iter().enumerate() {
                idem = idem.max(p.matmul(p).distance(p));
                herm = herm.max(p.hermitian_residual());
                for q in &set[g + 1..] {
                    orth = orth.max(p.matmul(q).frobenius());
                }
                rank = rank.max((p.trace().re - expected_ranks[g] as f64).abs());
                total = &total + p;
            }
            let complete = total.distance(&ComplexMatrix::identity(dim));
            for (identity, r) in [("idempotent", idem), ("hermitian", herm), ("orthogonal", orth), ("complete", complete), ("rank", rank)] {
                report.push(Check::new(identity, r, tol).with("form", name));
            }
        }
        report
    }
}

pub(crate) fn check_coefficients(set: &CliffordHomSet, coeffs: &VandermondeCoefficients) -> Result<()> {
    if coeffs.weights != set.table().distinct_weights() {
        return Err(Error::Precondition(format!(
            "coefficients for weights {:?} used with a table whose weights are {:?}",
            coeffs.weights.iter().map(format_rational).collect::<Vec<_>>(),
            set.table().distinct_weights().iter().map(format_rational).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// Dense projectors in the Gram, Vandermonde and spectral forms.
pub fn assemble_projectors(set: &CliffordHomSet, coeffs: &VandermondeCoefficients) -> Result<ProjectorSet> {
    check_coefficients(set, coeffs)?;
    let dim = set.tensor_dim();
    if dim > DENSE_PROJECTOR_LIMIT {
        return Err(Error::Capacity(format!(
            "dense projectors need dim(V_ρ)·n ≤ {DENSE_PROJECTOR_LIMIT}, got {dim}"
        )));
    }
    let n = set.n();
    let d = set.rho_dim();
    let groups = set.table().merged_groups();
    let weights = set.table().distinct_weights();

    let gram = groups
        .iter()
        .map(|members| {
            let mut p = ComplexMatrix::zeros(dim, dim);
            for &k in members {
                let c = set.component(k);
                let ps = c.matrices();
                for i in 0..n {
                    for j in 0..n {
                        p.add_block(i * d, j * d, c64::new(1.0, 0.0), &ps[i].adjoint_matmul(&ps[j]));
                    }
                }
            }
            p
        })
        .collect();

    let r1 = r1_matrix(set.rho());
    let mut powers = vec![ComplexMatrix::identity(dim)];
    for q in 1..coeffs.size() {
        let next = powers[q - 1].matmul(&r1);
        powers.push(next);
    }
    let vandermonde = coeffs
        .matrix
        .iter()
        .map(|row| {
            let mut p = ComplexMatrix::zeros(dim, dim);
            for (q, c) in row.iter().enumerate() {
                p.axpy(c64::new(rational_to_f64(c), 0.0), &powers[q]);
            }
            p
        })
        .collect();

    let clusters = spectral_clusters(&r1, SNAP_TOLERANCE)?;
    if clusters.len() != weights.len() || clusters.iter().zip(&weights).any(|(c, w)| &c.value != w) {
        return Err(Error::Integrity("eigenvalues of r¹ differ from the conformal weights".into()));
    }
    let spectral = clusters.iter().map(|c| c.vectors.matmul_adjoint(&c.vectors)).collect();

    Ok(ProjectorSet { groups, weights, gram, vandermonde, spectral })
}

/// The three constructions compared without forming dense projectors; the
/// comparison is made on each component basis and converted to operator
/// residuals through the frame bound.
pub fn verify_projectors(set: &CliffordHomSet, coeffs: &VandermondeCoefficients, tolerance: f64) -> Result<Report> {
    check_coefficients(set, coeffs)?;
    let outcome = pass::run(set, 0, Some(coeffs));
    Ok(projector_checks(set, &outcome, tolerance))
}

pub(crate) fn projector_checks(set: &CliffordHomSet, outcome: &PassOutcome, tolerance: f64) -> Report {
    let p = outcome.projectors.as_ref().expect("sweep ran with coefficients");
    let dim = set.tensor_dim() as f64;
    let tol = tolerance * dim;
    let weights = set.table().distinct_weights();
    let mut report = Report::new("projectors");
    for (g, members) in p.groups.iter().enumerate() {
        let m = format_rational(&weights[g]);
        let expected: u64 = members.iter().map(|&k| set.table().components[k].dimension).sum();
        report.push(Check::new("gram_vs_vandermonde", p.vandermonde_gram[g], tol).with("group", g).with("m", &m));
        report.push(Check::new("gram_vs_spectral", p.spectral_gram[g], tol).with("group", g).with("m", &m));
        report.push(Check::new("vandermonde_vs_spectral", p.vandermonde_spectral[g], tol).with("group", g).with("m", &m));
        report.push(
            Check::new("rank", (p.gram_trace[g] - expected as f64).abs(), tol)
                .with("group", g)
                .with("form", "gram")
                .with("rank", expected),
        );
        report.push(
            Check::new("rank", (p.vandermonde_trace[g] - expected as f64).abs(), tol)
                .with("group", g)
                .with("form", "vandermonde")
                .with("rank", expected),
        );
    }
    report.push(Check::new("idempotent", p.idempotent, tol));
    report.push(Check::new("orthogonal", p.orthogonal, tol));
    report.push(Check::new("complete", p.complete, tol));
    report.push(Check::new("hermitian", outcome.r1_hermitian, tol).with("operator", "r1"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffkit::homset_for;
    use crate::report::DEFAULT_TOLERANCE;
    use crate::repforge::gamma_matrices;
    use crate::weightcalc::{vandermonde_coefficients, DominantWeight};

    fn set(n: usize, s: &str) -> CliffordHomSet {
        homset_for(&DominantWeight::parse(n, s).unwrap()).unwrap()
    }

    fn ranks(set: &ProjectorSet, s: &CliffordHomSet) -> Vec<u64> {
        set.groups.iter().map(|g| g.iter().map(|&k| s.table().components[k].dimension).sum()).collect()
    }

    #[test]
    fn trivial_projector_is_identity() {
        let s = set(5, "0,0");
        let coeffs = vandermonde_coefficients(s.table()).unwrap();
        let p = assemble_projectors(&s, &coeffs).unwrap();
        assert_eq!(p.len(), 1);
        for m in [&p.gram[0], &p.vandermonde[0], &p.spectral[0]] {
            assert!(m.distance(&ComplexMatrix::identity(5)) < 1e-12);
        }
    }

    #[test]
    fn dense_and_swept_agree_on_vector() {
        let s = set(5, "1,0");
        let coeffs = vandermonde_coefficients(s.table()).unwrap();
        let p = assemble_projectors(&s, &coeffs).unwrap();
        assert!(p.agreement(DEFAULT_TOLERANCE).pass());
        assert!(p.invariants(&ranks(&p, &s), DEFAULT_TOLERANCE).pass());
        let swept = verify_projectors(&s, &coeffs, DEFAULT_TOLERANCE).unwrap();
        assert!(swept.pass(), "{swept:?}");
        // The frame bound dominates the dense distances.
        for (g, gv) in swept.checks.iter().filter(|c| c.identity == "gram_vs_vandermonde").enumerate() {
            assert!(p.gram[g].distance(&p.vandermonde[g]) <= gv.max_residual + 1e-13);
        }
    }

    /// `Π_Δ(φ⊗u) = −(1/n) Σ e_i·u·φ ⊗ e_i` on the spinors of R⁵.
    #[test]
    fn spinor_projector_closed_form() {
        let s = set(5, "1/2,1/2");
        let coeffs = vandermonde_coefficients(s.table()).unwrap();
        let p = assemble_projectors(&s, &coeffs).unwrap();
        let gamma = gamma_matrices(5).unwrap();
        let mut expected = ComplexMatrix::zeros(20, 20);
        for i in 0..5 {
            for j in 0..5 {
                expected.set_block(i * 4, j * 4, &gamma.gamma(i).matmul(gamma.gamma(j)).scale_real(-1.0 / 5.0));
            }
        }
        // Groups are ordered by conformal weight: T (−1/2) then Δ (2).
        assert!(p.gram[1].distance(&expected) < 1e-10);
        let complement = &ComplexMatrix::identity(20) - &expected;
        assert!(p.vandermonde[0].distance(&complement) < 1e-10);
    }

    #[test]
    fn exceptional_pair_merged() {
        let s = set(6, "1,1,0");
        let coeffs = vandermonde_coefficients(s.table()).unwrap();
        let p = assemble_projectors(&s, &coeffs).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(ranks(&p, &s), vec![64, 20, 6]);
        assert!(p.agreement(DEFAULT_TOLERANCE).pass());
        assert!(p.invariants(&ranks(&p, &s), DEFAULT_TOLERANCE).pass());
    }

    #[test]
    fn mismatched_coefficients_rejected() {
        let s = set(5, "1,0");
        let other = vandermonde_coefficients(set(5, "1/2,1/2").table()).unwrap();
        assert!(matches!(assemble_projectors(&s, &other), Err(Error::Precondition(_))));
    }
}
