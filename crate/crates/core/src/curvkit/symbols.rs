use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cliffkit::CliffordHomSet;
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::weightcalc::rational_to_f64;

/// Principal symbols at one covector `ξ`.
#[derive(Clone, Debug)]
pub struct SymbolReport {
    pub xi: Vec<f64>,
    /// `p_k(ξ)`, one per component.
    pub symbols: Vec<ComplexMatrix>,
    /// `Σ_k p_k(ξ)† p_k(ξ)`.
    pub total: ComplexMatrix,
    /// `Σ_{k≥1} (1 − m_k/m₀) p_k(ξ)† p_k(ξ)`, the symbol of `Δ_ρ`.
    pub laplace_symbol: ComplexMatrix,
    /// `‖total − |ξ|² Id‖_F`.
    pub total_residual: f64,
    /// `‖laplace_symbol − |ξ|² Id‖_F`.
    pub laplace_residual: f64,
}

impl SymbolReport {
    pub fn norm_sq(&self) -> f64 {
        self.xi.iter().map(|x| x * x).sum()
    }

    /// Smallest eigenvalue of the `Δ_ρ` symbol divided by `|ξ|²`; positive
    /// means the symbol is invertible.
    pub fn ellipticity(&self) -> Result<f64> {
        let eig = self.laplace_symbol.hermitian_part().hermitian_eigenvalues()?;
        Ok(eig.first().copied().unwrap_or(0.0) / self.norm_sq())
    }
}

/// Symbols of the higher spin Dirac operators of `V_ρ` at `ξ`.
pub fn dirac_symbols(set: &CliffordHomSet, xi: &[f64]) -> Result<SymbolReport> {
    let n = set.n();
    if xi.len() != n {
        return Err(Error::Domain(format!("covector of length {} for n = {n}", xi.len())));
    }
    let d = set.rho_dim();
    let m0 = set.table().distinct_weights()[0];
    let symbols: Vec<ComplexMatrix> = set.components().iter().map(|c| c.apply(xi)).collect();
    let mut total = ComplexMatrix::zeros(d, d);
    let mut laplace_symbol = ComplexMatrix::zeros(d, d);
    for (c, p) in set.components().iter().zip(&symbols) {
        let gram = p.adjoint_matmul(p);
        total += &gram;
        let m = c.descriptor.conformal_weight;
        if m != m0 {
            let hat = rational_to_f64(&(crate::Rational::from_integer(1) - m / m0));
            laplace_symbol.axpy(c64::new(hat, 0.0), &gram);
        }
    }
    let norm_sq: f64 = xi.iter().map(|x| x * x).sum();
    let target = ComplexMatrix::scalar(d, c64::new(norm_sq, 0.0));
    Ok(SymbolReport {
        xi: xi.to_vec(),
        total_residual: total.distance(&target),
        laplace_residual: laplace_symbol.distance(&target),
        symbols,
        total,
        laplace_symbol,
    })
}

/// `Σ_k p_k(ξ)† p_k(ξ) = |ξ|²` and `σ(Δ_ρ)(ξ) = |ξ|²` over seeded unit-scale
/// `ξ`, tolerance `tolerance·dim(V_ρ)` relative to `|ξ|²`.
pub fn verify_symbols(set: &CliffordHomSet, samples: usize, seed: u64, tolerance: f64) -> Result<Report> {
    if set.table().distinct_weights().len() < 2 {
        return Err(Error::NoBound(format!("V_{} ⊗ R^{} has a single component", set.rho().weight(), set.n())));
    }
    let n = set.n();
    let d = set.rho_dim() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut laplace, mut ellip) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..samples {
        let xi: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let s = dirac_symbols(set, &xi)?;
        let scale = s.norm_sq().max(f64::MIN_POSITIVE);
        total = total.max(s.total_residual / scale);
        laplace = laplace.max(s.laplace_residual / scale);
        ellip = ellip.min(s.ellipticity()?);
    }
    let w = set.rho().weight().to_string();
    let mut report = Report::new("symbols");
    report.push(Check::new("symbol_completeness", total, tolerance * d).with("weight", &w).with("samples", samples).with("seed", seed));
    report.push(Check::new("laplace_symbol", laplace, tolerance * d).with("weight", &w).with("samples", samples).with("seed", seed));
    report.push(Check::new("laplace_symbol_elliptic", (1.0 - ellip).abs(), tolerance * d).with("weight", &w).with("min_ratio", format!("{ellip:.16e}")));
    Ok(report)
}
