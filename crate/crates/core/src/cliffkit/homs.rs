use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report, DEFAULT_TOLERANCE};
use crate::repforge::{split_components, tensor_with_vector, RepBuilder, Representation, SplitResult, TensorRep};
use crate::weightcalc::{decompose, rational_to_f64, ComponentDescriptor, DecompositionTable, DominantWeight};

/// One Clifford homomorphism `p_λ: Rⁿ → Hom(V_ρ, V_λ)`, stored through the
/// orthonormal basis `B` of `V_λ ⊂ V_ρ ⊗ Rⁿ`; `p_λ(e_i)` is the adjoint of
/// the `i`-th row block of `B`.
#[derive(Clone, Debug)]
pub struct CliffordHom {
    pub descriptor: ComponentDescriptor,
    basis: ComplexMatrix,
    rho_dim: usize,
}

impl CliffordHom {
    pub fn new(descriptor: ComponentDescriptor, basis: ComplexMatrix, rho_dim: usize) -> Self {
        assert_eq!(basis.rows() % rho_dim.max(1), 0);
        CliffordHom { descriptor, basis, rho_dim }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn n(&self) -> usize {
        self.basis.rows() / self.rho_dim
    }

    pub fn rho_dim(&self) -> usize {
        self.rho_dim
    }

    pub fn conformal_weight(&self) -> f64 {
        rational_to_f64(&self.descriptor.conformal_weight)
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// `p_λ(e_i)`, a `dim(V_λ) × dim(V_ρ)` matrix.
    pub fn at(&self, i: usize) -> ComplexMatrix {
        let d = self.rho_dim;
        self.basis.block(i * d, 0, d, self.dim()).adjoint()
    }

    /// `p_λ(u) = Σ_i u_i p_λ(e_i)`.
    pub fn apply(&self, u: &[f64]) -> ComplexMatrix {
        assert_eq!(u.len(), self.n());
        let mut out = ComplexMatrix::zeros(self.dim(), self.rho_dim);
        for (i, &ui) in u.iter().enumerate() {
            if ui != 0.0 {
                out.axpy(c64::new(ui, 0.0), &self.at(i));
            }
        }
        out
    }

    /// All `p_λ(e_i)`.
    pub fn matrices(&self) -> Vec<ComplexMatrix> {
        (0..self.n()).map(|i| self.at(i)).collect()
    }

    /// `p_λ(u)† p_λ(v)`.
    pub fn gram(&self, u: &[f64], v: &[f64]) -> ComplexMatrix {
        self.apply(u).adjoint_matmul(&self.apply(v))
    }

    /// `p_λ(e_i)† p_λ(e_j)`.
    pub fn gram_basis(&self, i: usize, j: usize) -> ComplexMatrix {
        self.at(i).adjoint_matmul(&self.at(j))
    }
}

/// All Clifford homomorphisms of `V_ρ ⊗ Rⁿ`, ordered as the decomposition.
#[derive(Clone, Debug)]
pub struct CliffordHomSet {
    rho: Arc<Representation>,
    table: DecompositionTable,
    components: Vec<CliffordHom>,
    pair_span: Option<ComplexMatrix>,
    defining: Report,
}

impl CliffordHomSet {
    /// Builds `V_ρ` with `builder`, splits `V_ρ ⊗ Rⁿ`, and extracts the
    /// homomorphisms.
    pub fn build(builder: &RepBuilder, weight: &DominantWeight, tolerance: f64) -> Result<Self> {
        let rep = builder.build(weight)?;
        Self::from_rep(rep, builder.max_tensor_dim(), tolerance)
    }

    /// Uses a given matrix model of `V_ρ`.
    pub fn from_rep(rep: Arc<Representation>, max_tensor_dim: usize, tolerance: f64) -> Result<Self> {
        if rep.dim() * rep.n() > max_tensor_dim {
            return Err(Error::Capacity(format!(
                "dim(V_{})·n = {} exceeds the limit {max_tensor_dim}",
                rep.weight(),
                rep.dim() * rep.n()
            )));
        }
        let trep = tensor_with_vector(rep)?;
        let table = decompose(trep.base().weight());
        let split = split_components(&trep, &table)?;
        clifford_homs(&trep, &split, tolerance)
    }

    pub fn rho(&self) -> &Representation {
        &self.rho
    }

    pub fn rho_arc(&self) -> Arc<Representation> {
        Arc::clone(&self.rho)
    }

    pub fn n(&self) -> usize {
        self.rho.n()
    }

    pub fn rho_dim(&self) -> usize {
        self.rho.dim()
    }

    /// `dim(V_ρ)·n`.
    pub fn tensor_dim(&self) -> usize {
        self.rho.dim() * self.rho.n()
    }

    pub fn table(&self) -> &DecompositionTable {
        &self.table
    }

    pub fn components(&self) -> &[CliffordHom] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &CliffordHom {
        &self.components[k]
    }

    /// Index of the component with the given highest weight.
    pub fn find(&self, weight: &DominantWeight) -> Option<usize> {
        self.components.iter().position(|c| &c.descriptor.weight == weight)
    }

    /// The shared `Ĉ` eigenspace of the exceptional pair, as found before the
    /// Pfaffian separated it.
    pub fn pair_span(&self) -> Option<&ComplexMatrix> {
        self.pair_span.as_ref()
    }

    /// Residuals of completeness and contraction measured at extraction.
    pub fn defining_report(&self) -> &Report {
        &self.defining
    }

    #[cfg(test)]
    pub(crate) fn perturb_weight_for_test(&mut self, k: usize, delta: crate::Rational) {
        self.components[k].descriptor.conformal_weight += delta;
    }

    /// All component bases side by side; unitary up to rounding.
    pub fn stacked_basis(&self) -> ComplexMatrix {
        let parts: Vec<&ComplexMatrix> = self.components.iter().map(|c| &c.basis).collect();
        ComplexMatrix::hstack(&parts)
    }

    /// `Σ_k c_k p_k(e_i)† p_k(e_j)` as a dense block operator, for small cases.
    pub fn weighted_gram_operator(&self, weights: &[c64]) -> ComplexMatrix {
        assert_eq!(weights.len(), self.components.len());
        let dim = self.tensor_dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (c, w) in self.components.iter().zip(weights) {
            if *w != c64::new(0.0, 0.0) {
                out.axpy(*w, &c.basis.matmul_adjoint(&c.basis));
            }
        }
        out
    }
}

/// Extracts `p_k(e_i)` from the split of `V_ρ ⊗ Rⁿ` and checks completeness
/// `Σ_k p_k(e_i)† p_k(e_j) = δ_ij` and contraction
/// `−¼ Σ_i p_k(e_i) π_ρ([e_i, e_j]) = m_k p_k(e_j)`.
pub fn clifford_homs(trep: &TensorRep, split: &SplitResult, tolerance: f64) -> Result<CliffordHomSet> {
    let rho = trep.base_arc();
    let table = decompose(rho.weight());
    let d = rho.dim();
    if split.embeddings.len() != table.len() {
        return Err(Error::Precondition(format!(
            "{} embeddings for a decomposition with {} components",
            split.embeddings.len(),
            table.len()
        )));
    }
    let components: Vec<CliffordHom> = split
        .embeddings
        .iter()
        .zip(&table.components)
        .map(|(e, desc)| {
            if &e.descriptor.weight != &desc.weight {
                return Err(Error::Precondition(format!(
                    "embedding for {} where {} was expected",
                    e.descriptor.weight, desc.weight
                )));
            }
            Ok(CliffordHom::new(desc.clone(), e.basis.clone(), d))
        })
        .collect::<Result<_>>()?;
    let mut set = CliffordHomSet { rho, table, components, pair_span: split.pair_span.clone(), defining: Report::default() };
    let report = defining_identities(&set, tolerance);
    if let Some(bad) = report.failures().next() {
        return Err(Error::Integrity(format!(
            "{} residual {:.3e} exceeds {:.3e} ({:?})",
            bad.identity, bad.max_residual, bad.tolerance, bad.params
        )));
    }
    set.defining = report;
    Ok(set)
}

/// Completeness (one check over all `(i, j)`) and contraction (one check per
/// component), both evaluated literally from the `p_k(e_i)`.
pub fn defining_identities(set: &CliffordHomSet, tolerance: f64) -> Report {
    let n = set.n();
    let d = set.rho_dim();
    let dim = set.tensor_dim();
    let mut report = Report::new("clifford_homs");

    // Block (i, j) of Σ_k B_k B_k† is Σ_k p_k(e_i)† p_k(e_j).
    let mut total = ComplexMatrix::zeros(dim, dim);
    for c in &set.components {
        total = &total + &c.basis.matmul_adjoint(&c.basis);
    }
    let mut worst = (0.0f64, 0, 0);
    for i in 0..n {
        for j in 0..n {
            let mut block = total.block(i * d, j * d, d, d);
            if i == j {
                block = &block - &ComplexMatrix::identity(d);
            }
            let r = block.frobenius();
            if r > worst.0 {
                worst = (r, i, j);
            }
        }
    }
    report.push(
        Check::new("completeness", worst.0, tolerance * d as f64)
            .with("i", worst.1)
            .with("j", worst.2),
    );

    let brackets: Vec<Vec<ComplexMatrix>> = (0..n).map(|i| (0..n).map(|j| set.rho.bracket(i, j)).collect()).collect();
    for (k, c) in set.components.iter().enumerate() {
        let p: Vec<ComplexMatrix> = c.matrices();
        let m = c.conformal_weight();
        let mut worst = (0.0f64, 0);
        for j in 0..n {
            let mut lhs = ComplexMatrix::zeros(c.dim(), d);
            for i in 0..n {
                if i != j {
                    lhs.axpy(c64::new(-0.25, 0.0), &p[i].matmul(&brackets[i][j]));
                }
            }
            let r = lhs.distance(&p[j].scale_real(m));
            if r > worst.0 {
                worst = (r, j);
            }
        }
        let scale = (c.dim() as f64 * d as f64).sqrt() * m.abs().max(1.0);
        report.push(
            Check::new("contraction", worst.0, tolerance * scale)
                .with("component", k)
                .with("weight", &c.descriptor.weight)
                .with("j", worst.1),
        );
    }
    report
}

/// Builds the homomorphism set for `weight` with default limits.
pub fn homset_for(weight: &DominantWeight) -> Result<CliffordHomSet> {
    CliffordHomSet::build(&RepBuilder::default(), weight, DEFAULT_TOLERANCE)
}
