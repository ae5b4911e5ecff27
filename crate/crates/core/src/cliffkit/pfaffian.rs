use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, I};
use crate::report::{Check, Report};
use crate::repforge::{pfaffian_recursive, pfaffian_scalar, pfaffian_scalar_exact, subset_pfaffian, Generators, Representation};
use crate::weightcalc::{format_rational, DominantWeight, Rational};

use super::CliffordHomSet;

/// The Pfaffian Casimir of `V_ρ`, `n = 2m`, from the full signed sum over
/// `S_{2m}`.
#[derive(Clone, Debug)]
pub struct PfaffianOperator {
    pub weight: DominantWeight,
    pub matrix: ComplexMatrix,
    /// `tr(Pf)/dim`.
    pub scalar: c64,
    /// `p(ρ) = i^m 8^m m! ∏_j (ρ^j + m − 1 − j)`.
    pub expected: c64,
    /// Exact real factor `(−i)^m p(ρ)`.
    pub expected_real: Rational,
    /// `‖Pf − scalar·Id‖_F`.
    pub scalar_residual: f64,
    /// `‖Pf_brute − Pf_recursive‖_F`.
    pub recursive_residual: f64,
}

impl PfaffianOperator {
    /// `(−i)^m` times the computed scalar; real for a unitary model.
    pub fn real_scalar(&self) -> c64 {
        let m = self.weight.n() / 2;
        (0..m).fold(self.scalar, |acc, _| acc * -I)
    }

    /// Sign of the computed scalar equals the sign of the exact value
    /// (zero counts as a sign of its own, judged at `zero_tolerance`).
    pub fn sign_matches(&self, zero_tolerance: f64) -> bool {
        let got = self.real_scalar().re;
        let want = *self.expected_real.numer();
        match want.signum() {
            0 => got.abs() <= zero_tolerance,
            s => got.abs() > zero_tolerance && got.signum() == s as f64,
        }
    }

    /// `|scalar − expected| / |expected|`, or the absolute error when the
    /// expected value is zero.
    pub fn relative_error(&self) -> f64 {
        let err = (self.scalar - self.expected).norm();
        let scale = self.expected.norm();
        if scale > 0.0 {
            err / scale
        } else {
            err
        }
    }
}

/// `Σ_{σ∈S_{2m}} sgn(σ) π([e_σ1,e_σ2]) ⋯ π([e_σ(2m−1),e_σ(2m)])`, one term per
/// permutation. Prefix products are shared between permutations with a
/// common beginning.
pub fn pfaffian_bruteforce(gens: &Generators) -> Result<ComplexMatrix> {
    let n = gens.n();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("the Pfaffian needs even n, got {n}")));
    }
    let d = gens.dim();
    let brackets: Vec<Vec<ComplexMatrix>> = (0..n).map(|a| (0..n).map(|b| gens.bracket(a, b)).collect()).collect();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut remaining: Vec<usize> = (0..n).collect();
    descend(&brackets, &mut remaining, &ComplexMatrix::identity(d), false, &mut out);
    Ok(out)
}

fn descend(brackets: &[Vec<ComplexMatrix>], remaining: &mut Vec<usize>, prefix: &ComplexMatrix, odd: bool, out: &mut ComplexMatrix) {
    if remaining.is_empty() {
        out.axpy(c64::new(if odd { -1.0 } else { 1.0 }, 0.0), prefix);
        return;
    }
    // Placing the element at position p of the sorted remainder ahead of the
    // others contributes p inversions.
    for pa in 0..remaining.len() {
        let a = remaining.remove(pa);
        for pb in 0..remaining.len() {
            let b = remaining.remove(pb);
            let parity = odd ^ ((pa + pb) % 2 == 1);
            let next = prefix.matmul(&brackets[a][b]);
            descend(brackets, remaining, &next, parity, out);
            remaining.insert(pb, b);
        }
        remaining.insert(pa, a);
    }
}

/// Brute-force Pfaffian Casimir of `rho`, checked for scalarity and against
/// the closed form of its scalar.
pub fn pfaffian_casimir(rho: &Representation, tolerance: f64) -> Result<PfaffianOperator> {
    let matrix = pfaffian_bruteforce(rho.generators())?;
    let recursive = pfaffian_recursive(rho.generators())?;
    let (scalar, scalar_residual) = matrix.scalar_fit();
    let expected = pfaffian_scalar(rho.weight())?;
    let expected_real = pfaffian_scalar_exact(rho.weight())?;
    let d = rho.dim() as f64;
    let scale = scalar.norm().max(1.0);
    if scalar_residual > tolerance * d * scale {
        return Err(Error::Integrity(format!(
            "Pfaffian on V_{} is not scalar: residual {scalar_residual:.3e}",
            rho.weight()
        )));
    }
    Ok(PfaffianOperator {
        weight: rho.weight().clone(),
        recursive_residual: matrix.distance(&recursive),
        matrix,
        scalar,
        expected,
        expected_real,
        scalar_residual,
    })
}

/// Report form of [`pfaffian_casimir`]: scalarity, the brute-force and
/// recursive evaluations, sign and relative error of the scalar.
pub fn pfaffian_report(rho: &Representation, tolerance: f64) -> Result<Report> {
    let pf = pfaffian_casimir(rho, tolerance)?;
    let d = rho.dim() as f64;
    let scale = pf.scalar.norm().max(1.0);
    let w = rho.weight().to_string();
    let mut report = Report::new("pfaffian");
    report.push(Check::new("pfaffian_scalar", pf.scalar_residual, tolerance * d * scale).with("weight", &w));
    report.push(Check::new("pfaffian_recursive", pf.recursive_residual, tolerance * d * scale).with("weight", &w));
    report.push(
        Check::new("pfaffian_sign", if pf.sign_matches(1e-6 * scale) { 0.0 } else { 1.0 }, 0.0)
            .with("weight", &w)
            .with("expected", format_rational(&pf.expected_real)),
    );
    report.push(Check::new("pfaffian_relative_error", pf.relative_error(), 1e-6).with("weight", &w));
    Ok(report)
}

/// Sign of the permutation `(i, j, rest ascending)` of `0..n`.
fn leading_pair_sign(i: usize, j: usize) -> f64 {
    // Moving i to the front passes i smaller elements; moving j to second
    // place passes the elements below j other than i.
    let moves = i + j - usize::from(i < j);
    if moves % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_k p(λ_k) p_k(e_j)† p_k(e_i)` compared with
/// `δ_ij p(ρ) + c (1−δ_ij) sgn(i, j, …) Σ_{σ∈S(rest)} sgn(σ) π(…)⋯π(…)`, with
/// `c` fitted as one global scalar. Also checks antisymmetry off the
/// diagonal, the trace `Σ_i pf(e_i, e_i) = n p(ρ)`, and that on an exceptional
/// table only the pair carries a nonzero Pfaffian scalar.
pub fn pf_bilinear_check(set: &CliffordHomSet, tolerance: f64) -> Result<Report> {
    let n = set.n();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("the Pfaffian needs even n, got {n}")));
    }
    let m = n / 2;
    let d = set.rho_dim();
    let rho = set.rho();
    let scalars: Vec<c64> = set
        .components()
        .iter()
        .map(|c| pfaffian_scalar(&c.descriptor.weight))
        .collect::<Result<_>>()?;
    let scale = scalars.iter().fold(1.0f64, |a, s| a.max(s.norm()));
    let tol = tolerance * d as f64 * scale;
    let p_rho = pfaffian_scalar(rho.weight())?;
    let lhs = set.weighted_gram_operator(&scalars);
    let block = |j: usize, i: usize| lhs.block(j * d, i * d, d, d);
    let w = rho.weight().to_string();
    let mut report = Report::new("pf_bilinear");

    if let Some((a, b)) = set.table().exceptional_pair() {
        let others = set
            .components()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != a && k != b)
            .map(|(_, c)| pfaffian_scalar_exact(&c.descriptor.weight).map(|r| r != Rational::from_integer(0)))
            .collect::<Result<Vec<bool>>>()?;
        report.push(
            Check::new("pair_only", others.iter().filter(|&&x| x).count() as f64, 0.0)
                .with("weight", &w)
                .with("pair", format!("{},{}", set.component(a).descriptor.weight, set.component(b).descriptor.weight)),
        );
        let (pa, pb) = (scalars[a], scalars[b]);
        report.push(
            Check::new("pair_opposite_sign", if (pa * pb.conj()).re < 0.0 { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("p_first", format!("{:.6e}{:+.6e}i", pa.re, pa.im))
                .with("p_second", format!("{:.6e}{:+.6e}i", pb.re, pb.im)),
        );
    }

    let mut diag = 0.0f64;
    let mut trace = ComplexMatrix::zeros(d, d);
    for i in 0..n {
        let bi = block(i, i);
        diag = diag.max(bi.distance(&ComplexMatrix::scalar(d, p_rho)));
        trace = &trace + &bi;
    }
    report.push(Check::new("pf_diagonal", diag, tol).with("weight", &w));
    report.push(
        Check::new("pf_trace", trace.distance(&ComplexMatrix::scalar(d, p_rho * n as f64)), tol * n as f64).with("weight", &w),
    );

    let mut antisym = 0.0f64;
    let mut memo = HashMap::new();
    let full = (1u32 << n) - 1;
    let mut rhs: Vec<((usize, usize), ComplexMatrix)> = Vec::new();
    let mut num = c64::new(0.0, 0.0);
    let mut den = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let lji = block(j, i);
            if i < j {
                antisym = antisym.max((&lji + &block(i, j)).frobenius());
            }
            let rest = subset_pfaffian(rho.generators(), full & !(1 << i) & !(1 << j), &mut memo);
            let r = rest.scale_real(leading_pair_sign(i, j));
            num += r.adjoint_matmul(&lji).trace();
            den += r.frobenius_sq();
            rhs.push(((j, i), r));
        }
    }
    report.push(Check::new("pf_antisymmetric", antisym, tol).with("weight", &w));
    let fitted = if den > 0.0 { num / den } else { c64::new(0.0, 0.0) };
    let mut fit_residual = 0.0f64;
    for ((j, i), r) in &rhs {
        fit_residual = fit_residual.max(block(*j, *i).distance(&r.scale(fitted)));
    }
    report.push(
        Check::new("pf_global_scalar_fit", fit_residual, tol)
            .with("weight", &w)
            .with("fitted_re", format!("{:.12e}", fitted.re))
            .with("fitted_im", format!("{:.12e}", fitted.im))
            .with("ratio_to_8m", format!("{:.12e}", fitted.re / (8.0 * m as f64))),
    );
    report.push(Check::info("pf_fitted_constant", fitted.re).with("weight", &w).with("imag", format!("{:.3e}", fitted.im)));
    Ok(report)
}
