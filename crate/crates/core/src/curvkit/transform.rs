use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::repforge::Representation;
use crate::weightcalc::{casimir_constant, rational_to_f64, DominantWeight};

use super::tensor::{AlgebraicCurvatureTensor, SYMMETRY_TOLERANCE};

/// `R¹_ρ = (1/8) Σ_{i,j} π_ρ([e_i, e_j]) R_ρ(e_i, e_j)` on `V_ρ`.
#[derive(Clone, Debug)]
pub struct CurvatureTransform {
    pub weight: DominantWeight,
    pub matrix: ComplexMatrix,
}

impl CurvatureTransform {
    pub fn hermitian_residual(&self) -> f64 {
        self.matrix.hermitian_residual()
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.matrix.hermitian_part().hermitian_eigenvalues()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }
}

/// `R_ρ(e_i, e_j)`: the endomorphism `e_k ↦ Σ_l R_{ijkl} e_l` written in the
/// basis `[e_k, e_l] ↔ −4E_kl + 4E_lk` of `so(n)` and mapped through `π_ρ`.
pub fn curvature_endomorphism(rep: &Representation, r: &AlgebraicCurvatureTensor, i: usize, j: usize) -> ComplexMatrix {
    let n = rep.n();
    let d = rep.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for k in 0..n {
        for l in k + 1..n {
            // Entry (k, l) of the so(n) matrix is R_{ijlk} = −4·coefficient.
            let coefficient = -r.get(i, j, l, k) / 4.0;
            if coefficient != 0.0 {
                out.axpy(c64::new(coefficient, 0.0), rep.generator(k, l));
            }
        }
    }
    out
}

/// The curvature transformation of `rep` for the algebraic curvature tensor
/// `r`.
pub fn r1_transform(rep: &Representation, r: &AlgebraicCurvatureTensor) -> Result<CurvatureTransform> {
    let n = rep.n();
    if r.n() != n {
        return Err(Error::Domain(format!("curvature on R^{} used with a representation of Spin({n})", r.n())));
    }
    r.validate(SYMMETRY_TOLERANCE)?;
    let d = rep.dim();
    let mut matrix = ComplexMatrix::zeros(d, d);
    for i in 0..n {
        for j in i + 1..n {
            let endo = curvature_endomorphism(rep, r, i, j);
            // The (i, j) and (j, i) terms are equal.
            matrix.axpy(c64::new(0.25, 0.0), &rep.generator(i, j).matmul(&endo));
        }
    }
    Ok(CurvatureTransform { weight: rep.weight().clone(), matrix })
}

/// Smallest `⟨R(u, v) v, u⟩` over the coordinate planes and `samples` seeded
/// orthonormal pairs.
pub fn sampled_min_sectional(r: &AlgebraicCurvatureTensor, samples: usize, seed: u64) -> f64 {
    let n = r.n();
    let unit = |i: usize| -> Vec<f64> { (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect() };
    let mut worst = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.min(r.sectional(&unit(i), &unit(j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (u, v) = orthonormal_pair(n, &mut rng);
        worst = worst.min(r.sectional(&u, &v));
    }
    worst
}

fn orthonormal_pair(n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    loop {
        let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nu < 1e-3 {
            continue;
        }
        let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
        let d: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        let w: Vec<f64> = v.iter().zip(&u).map(|(b, a)| b - d * a).collect();
        let nw = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nw < 1e-3 {
            continue;
        }
        return (u, w.iter().map(|x| x / nw).collect());
    }
}

/// Number of random planes used to test the sectional lower bound.
pub const SECTIONAL_SAMPLES: usize = 200;

/// Checks `eig(R¹_ρ) ≥ −2 r c(ρ)` for a tensor whose sectional curvature is at
/// least `2r`. The hypothesis is tested on the coordinate planes and on
/// seeded random planes; failing it is a [`Error::Precondition`], distinct
/// from failing the bound.
pub fn verify_curvature_bound(rep: &Representation, r: &AlgebraicCurvatureTensor, lower: f64, tolerance: f64) -> Result<Report> {
    if !(lower >= 0.0) {
        return Err(Error::Domain(format!("r = {lower} must be nonnegative")));
    }
    let scale = r.max_abs().max(1.0);
    let sectional = sampled_min_sectional(r, SECTIONAL_SAMPLES, 0x5EC7);
    if sectional < 2.0 * lower - SYMMETRY_TOLERANCE * scale {
        return Err(Error::Precondition(format!(
            "sectional curvature {sectional:.6e} is below 2r = {:.6e}",
            2.0 * lower
        )));
    }
    let transform = r1_transform(rep, r)?;
    let d = rep.dim() as f64;
    let c = rational_to_f64(&casimir_constant(rep.weight()));
    let bound = -2.0 * lower * c;
    let min = transform.min_eigenvalue()?;
    let w = rep.weight().to_string();
    let mut report = Report::new("curvature_bound");
    report.push(Check::new("r1_hermitian", transform.hermitian_residual(), tolerance * d * scale).with("weight", &w));
    report.push(
        Check::new("curvature_bound", (bound - min).max(0.0), tolerance * d * scale)
            .with("weight", &w)
            .with("r", lower)
            .with("min_eigenvalue", format!("{min:.16e}"))
            .with("bound", format!("{bound:.16e}")),
    );
    report.push(Check::info("curvature_bound_slack", min - bound).with("weight", &w));
    Ok(report)
}

/// `R¹_ρ = −2K c(ρ)·Id` at constant curvature `K`, for one representation.
pub fn constant_curvature_check(rep: &Representation, k: f64, tolerance: f64) -> Result<Check> {
    let r = super::tensor::constant_curvature(rep.n(), k);
    let t = r1_transform(rep, &r)?;
    let c = rational_to_f64(&casimir_constant(rep.weight()));
    let d = rep.dim();
    let expected = ComplexMatrix::scalar(d, c64::new(-2.0 * k * c, 0.0));
    Ok(Check::new("constant_curvature_scalar", t.matrix.distance(&expected), tolerance * d as f64 * k.abs().max(1.0))
        .with("weight", rep.weight())
        .with("k", k))
}

/// Lower curvature bound `r` used for the sampled tensors of
/// [`curvature_suite`].
pub const SUITE_LOWER_BOUND: f64 = 0.25;

/// Curvature checks for one representation: Hermitian `R¹`, the constant
/// curvature scalar `−2Kc(ρ)`, the identities `R¹_Δ = κ/8` and
/// `R¹_{Λ¹} = Ric` where they apply, and the lower bound on `samples` seeded
/// tensors with sectional curvature at least `2r`.
pub fn curvature_suite(rep: &Representation, samples: usize, seed: u64, tolerance: f64) -> Result<Report> {
    let n = rep.n();
    let d = rep.dim();
    let w = rep.weight().to_string();
    let mut report = Report::new("curvature");
    report.push(constant_curvature_check(rep, 1.0, tolerance)?);
    let probe = super::tensor::random_positive(n, SUITE_LOWER_BOUND, seed);
    let scale = probe.max_abs().max(1.0);
    let t = r1_transform(rep, &probe)?;
    let coords = rep.weight().coords();
    if coords.iter().all(|c| c.abs() == crate::HalfInt::HALF) {
        let expected = ComplexMatrix::scalar(d, c64::new(probe.scalar() / 8.0, 0.0));
        report.push(Check::new("spinor_scalar_curvature", t.matrix.distance(&expected), tolerance * d as f64 * scale).with("weight", &w));
    }
    if *rep.weight() == DominantWeight::vector(n)? {
        let ric = probe.ricci();
        let expected = ComplexMatrix::from_fn(n, n, |a, b| c64::new(ric[a][b], 0.0));
        report.push(Check::new("vector_ricci", t.matrix.distance(&expected), tolerance * d as f64 * scale).with("weight", &w));
    }
    let (mut herm, mut bound, mut slack) = (0.0f64, 0.0f64, f64::INFINITY);
    let mut herm_tol = 0.0f64;
    let mut bound_tol = 0.0f64;
    for s in 0..samples {
        let r = super::tensor::random_positive(n, SUITE_LOWER_BOUND, seed.wrapping_add(1 + s as u64));
        let sub = verify_curvature_bound(rep, &r, SUITE_LOWER_BOUND, tolerance)?;
        let h = sub.find("r1_hermitian").expect("hermitian check");
        let b = sub.find("curvature_bound").expect("bound check");
        herm = herm.max(h.max_residual);
        herm_tol = herm_tol.max(h.tolerance);
        bound = bound.max(b.max_residual);
        bound_tol = bound_tol.max(b.tolerance);
        slack = slack.min(sub.find("curvature_bound_slack").expect("slack").max_residual);
    }
    if samples > 0 {
        report.push(Check::new("r1_hermitian", herm, herm_tol).with("weight", &w).with("samples", samples));
        report.push(
            Check::new("curvature_bound", bound, bound_tol)
                .with("weight", &w)
                .with("samples", samples)
                .with("r", SUITE_LOWER_BOUND)
                .with("seed", seed),
        );
        report.push(Check::info("curvature_bound_min_slack", slack).with("weight", &w));
    }
    Ok(report)
}
