use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, I, ONE};
use crate::weightcalc::{format_rational, rational_to_f64, ComponentDescriptor, DecompositionTable, Rational};

use super::pfaffian::{pfaffian_recursive, pfaffian_scalar_exact};
use super::{Representation, TensorRep};

/// Largest allowed distance between an eigenvalue of `Ĉ` and ½ℤ.
pub const SNAP_TOLERANCE: f64 = 1e-8;

/// Relative tolerance for matching Pfaffian eigenvalues to their exact values.
const PFAFFIAN_RELATIVE_TOLERANCE: f64 = 1e-6;

/// Nearest element of ½ℤ.
pub fn snap_half_integer(x: f64) -> Rational {
    Rational::new((2.0 * x).round() as i64, 2)
}

/// One eigenvalue of `Ĉ` with an orthonormal basis of its eigenspace.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    pub value: Rational,
    pub multiplicity: usize,
    /// Largest distance of a raw eigenvalue in this cluster from `value`.
    pub max_deviation: f64,
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian matrix whose spectrum lies in ½ℤ,
/// grouped by snapped eigenvalue in ascending order.
pub fn spectral_clusters(h: &ComplexMatrix, tolerance: f64) -> Result<Vec<SpectralCluster>> {
    let (values, vectors) = h.hermitian_eigen()?;
    let mut clusters: Vec<SpectralCluster> = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let value = snap_half_integer(values[start]);
        let mut end = start;
        let mut dev = 0.0f64;
        while end < values.len() && snap_half_integer(values[end]) == value {
            dev = dev.max((values[end] - rational_to_f64(&value)).abs());
            end += 1;
        }
        if dev > tolerance {
            return Err(Error::Integrity(format!(
                "eigenvalue near {} deviates by {dev:.3e} from the half-integer lattice",
                format_rational(&value)
            )));
        }
        clusters.push(SpectralCluster {
            value,
            multiplicity: end - start,
            max_deviation: dev,
            vectors: vectors.columns(start, end - start),
        });
        start = end;
    }
    Ok(clusters)
}

/// Isometric embedding of one irreducible component `V_λ ⊂ V_ρ ⊗ Rⁿ`.
#[derive(Clone, Debug)]
pub struct ComponentEmbedding {
    /// Position of the component in its decomposition table.
    pub index: usize,
    pub descriptor: ComponentDescriptor,
    /// `dim(V_ρ)·n × dim(V_λ)` with orthonormal columns.
    pub basis: ComplexMatrix,
}

impl ComponentEmbedding {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `‖Ĉ·B − m(λ)·B‖_F`.
    pub fn eigen_residual(&self, chat: &ComplexMatrix) -> f64 {
        let m = rational_to_f64(&self.descriptor.conformal_weight);
        let mut r = chat.matmul(&self.basis);
        r.axpy(c64::new(-m, 0.0), &self.basis);
        r.frobenius()
    }

    /// The representation of `spin(n)` on this component.
    pub fn subrepresentation(&self, trep: &TensorRep) -> Representation {
        Representation::new(self.descriptor.weight.clone(), trep.restrict(&self.basis))
    }
}

/// Result of splitting `V_ρ ⊗ Rⁿ`.
#[derive(Clone, Debug)]
pub struct SplitResult {
    /// One embedding per table component, in table order.
    pub embeddings: Vec<ComponentEmbedding>,
    /// Snapped eigenvalues of `Ĉ` with multiplicities, ascending.
    pub spectrum: Vec<(Rational, usize)>,
    /// Largest distance of an eigenvalue of `Ĉ` from its snapped value.
    pub max_deviation: f64,
    /// Basis of the doubled eigenspace of the exceptional pair.
    pub pair_span: Option<ComplexMatrix>,
    /// Eigenvalues of `(−i)^m Pf` on the doubled eigenspace, ascending.
    pub pair_pfaffian_values: Vec<f64>,
    /// Largest relative error of those eigenvalues against the exact scalars.
    pub pair_pfaffian_error: f64,
}

/// Splits `V_ρ ⊗ Rⁿ` into the components listed in `table`.
///
/// Each distinct conformal weight is an eigenvalue of `Ĉ` whose eigenspace
/// is the corresponding component; the exceptional pair shares one
/// eigenspace and is separated by the Pfaffian Casimir, which takes values
/// of opposite sign on the two pieces.
pub fn split_components(trep: &TensorRep, table: &DecompositionTable) -> Result<SplitResult> {
    if &table.rho != trep.base().weight() {
        return Err(Error::Precondition(format!(
            "table for {} used with tensor of {}",
            table.rho,
            trep.base().weight()
        )));
    }
    let clusters = spectral_clusters(trep.chat(), SNAP_TOLERANCE)?;
    let groups = table.merged_groups();
    let spectrum: Vec<(Rational, usize)> = clusters.iter().map(|c| (c.value, c.multiplicity)).collect();
    let max_deviation = clusters.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    if clusters.len() != groups.len() {
        return Err(Error::Integrity(format!(
            "Ĉ has {} distinct eigenvalues, the decomposition predicts {}",
            clusters.len(),
            groups.len()
        )));
    }
    let mut embeddings: Vec<Option<ComponentEmbedding>> = vec![None; table.len()];
    let mut pair_span = None;
    let mut pair_pfaffian_values = Vec::new();
    let mut pair_pfaffian_error = 0.0;
    for (cluster, group) in clusters.into_iter().zip(&groups) {
        let expected_m = table.components[group[0]].conformal_weight;
        let expected_dim: u64 = group.iter().map(|&i| table.components[i].dimension).sum();
        if cluster.value != expected_m || cluster.multiplicity as u64 != expected_dim {
            return Err(Error::Integrity(format!(
                "eigenvalue {} with multiplicity {} does not match conformal weight {} of dimension {expected_dim}",
                format_rational(&cluster.value),
                cluster.multiplicity,
                format_rational(&expected_m)
            )));
        }
        match group.as_slice() {
            [i] => {
                embeddings[*i] = Some(ComponentEmbedding {
                    index: *i,
                    descriptor: table.components[*i].clone(),
                    basis: cluster.vectors,
                });
            }
            [a, b] => {
                let split = split_exceptional(trep, &cluster.vectors, table, *a, *b)?;
                pair_pfaffian_values = split.values;
                pair_pfaffian_error = split.relative_error;
                embeddings[*a] = Some(split.first);
                embeddings[*b] = Some(split.second);
                pair_span = Some(cluster.vectors);
            }
            _ => return Err(Error::Integrity("more than two components share a conformal weight".into())),
        }
    }
    Ok(SplitResult {
        embeddings: embeddings.into_iter().map(|e| e.expect("every group filled")).collect(),
        spectrum,
        max_deviation,
        pair_span,
        pair_pfaffian_values,
        pair_pfaffian_error,
    })
}

struct ExceptionalSplit {
    first: ComponentEmbedding,
    second: ComponentEmbedding,
    values: Vec<f64>,
    relative_error: f64,
}

fn split_exceptional(
    trep: &TensorRep,
    span: &ComplexMatrix,
    table: &DecompositionTable,
    a: usize,
    b: usize,
) -> Result<ExceptionalSplit> {
    let n = trep.n();
    let m = n / 2;
    let gens = trep.restrict(span);
    let pf = pfaffian_recursive(&gens)?;
    let phase = (0..m).fold(ONE, |acc, _| acc * -I);
    let h = pf.scale(phase);
    let (values, vectors) = h.hermitian_eigen()?;
    let target_a = rational_to_f64(&pfaffian_scalar_exact(&table.components[a].weight)?);
    let target_b = rational_to_f64(&pfaffian_scalar_exact(&table.components[b].weight)?);
    if target_a == target_b {
        return Err(Error::Integrity("Pfaffian scalars coincide on the exceptional pair".into()));
    }
    let scale = target_a.abs().max(target_b.abs()).max(1.0);
    let mut pick_a = Vec::new();
    let mut pick_b = Vec::new();
    let mut relative_error = 0.0f64;
    for (j, &v) in values.iter().enumerate() {
        let (da, db) = ((v - target_a).abs(), (v - target_b).abs());
        if da <= db {
            pick_a.push(j);
            relative_error = relative_error.max(da / scale);
        } else {
            pick_b.push(j);
            relative_error = relative_error.max(db / scale);
        }
    }
    if relative_error > PFAFFIAN_RELATIVE_TOLERANCE {
        return Err(Error::Integrity(format!(
            "Pfaffian eigenvalues on the exceptional pair miss their exact values by {relative_error:.3e} (relative)"
        )));
    }
    let (da, db) = (table.components[a].dimension as usize, table.components[b].dimension as usize);
    if pick_a.len() != da || pick_b.len() != db {
        return Err(Error::Integrity(format!(
            "Pfaffian split has ranks {}+{}, expected {da}+{db}",
            pick_a.len(),
            pick_b.len()
        )));
    }
    let select = |cols: &[usize]| {
        let parts: Vec<ComplexMatrix> = cols.iter().map(|&j| vectors.columns(j, 1)).collect();
        let refs: Vec<&ComplexMatrix> = parts.iter().collect();
        span.matmul(&ComplexMatrix::hstack(&refs))
    };
    Ok(ExceptionalSplit {
        first: ComponentEmbedding { index: a, descriptor: table.components[a].clone(), basis: select(&pick_a) },
        second: ComponentEmbedding { index: b, descriptor: table.components[b].clone(), basis: select(&pick_b) },
        values,
        relative_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repforge::{standard_rep, tensor_with_vector, StandardKind};
    use crate::weightcalc::decompose;
    use std::sync::Arc;

    fn split(n: usize, kind: StandardKind) -> (TensorRep, DecompositionTable, SplitResult) {
        let rep = Arc::new(standard_rep(n, kind).unwrap());
        let table = decompose(rep.weight());
        let trep = tensor_with_vector(rep).unwrap();
        let s = split_components(&trep, &table).unwrap();
        (trep, table, s)
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_half_integer(1.4999999), Rational::new(3, 2));
        assert_eq!(snap_half_integer(-0.26), Rational::new(-1, 2));
        assert_eq!(snap_half_integer(-0.24), Rational::from_integer(0));
    }

    #[test]
    fn spinor_five_ranks() {
        let (trep, _, s) = split(5, StandardKind::Spinor);
        let ranks: Vec<usize> = s.embeddings.iter().map(|e| e.dim()).collect();
        assert_eq!(ranks, vec![16, 4]);
        for e in &s.embeddings {
            assert!(e.basis.isometry_residual() < 1e-10);
            assert!(e.eigen_residual(trep.chat()) < 1e-10);
        }
        assert!(s.max_deviation < 1e-12);
    }

    #[test]
    fn trivial_five_is_identity() {
        let (_, _, s) = split(5, StandardKind::Trivial);
        assert_eq!(s.embeddings.len(), 1);
        let b = &s.embeddings[0].basis;
        let p = b.matmul_adjoint(b);
        assert!(p.distance(&ComplexMatrix::identity(5)) < 1e-12);
    }

    /// The doubled eigenspace of Λ²(R⁶) is split by the Pfaffian into two
    /// rank-10 pieces on which the Pfaffian is ± the exact scalar.
    #[test]
    fn two_forms_six_exceptional() {
        let (trep, table, s) = split(6, StandardKind::Exterior(2));
        assert_eq!(s.embeddings.len(), 4);
        let ranks: Vec<usize> = s.embeddings.iter().map(|e| e.dim()).collect();
        assert_eq!(ranks, vec![64, 10, 10, 6]);
        let span = s.pair_span.as_ref().unwrap();
        assert_eq!(span.cols(), 20);
        // Independent oracle: diagonalize the Pfaffian on the span directly.
        let pf = pfaffian_recursive(&trep.restrict(span)).unwrap();
        let h = pf.scale(c64::new(0.0, 1.0)); // (−i)³ = i
        let vals = h.hermitian_eigenvalues().unwrap();
        let expect = rational_to_f64(&pfaffian_scalar_exact(&table.components[1].weight).unwrap());
        assert!(expect > 0.0);
        assert!(vals[..10].iter().all(|v| (v + expect).abs() < 1e-6 * expect));
        assert!(vals[10..].iter().all(|v| (v - expect).abs() < 1e-6 * expect));
        for e in &s.embeddings {
            assert!(e.basis.isometry_residual() < 1e-10);
            let sub = e.subrepresentation(&trep);
            let c = rational_to_f64(&e.descriptor.casimir);
            assert!(sub.casimir().distance(&ComplexMatrix::scalar(e.dim(), c64::new(c, 0.0))) < 1e-9);
        }
        // the two pieces are orthogonal
        let cross = s.embeddings[1].basis.adjoint_matmul(&s.embeddings[2].basis);
        assert!(cross.frobenius() < 1e-10);
    }

    #[test]
    fn mismatched_table_rejected() {
        let rep = Arc::new(standard_rep(5, StandardKind::Spinor).unwrap());
        let other = decompose(&crate::weightcalc::DominantWeight::vector(5).unwrap());
        let trep = tensor_with_vector(rep).unwrap();
        assert!(matches!(split_components(&trep, &other), Err(Error::Precondition(_))));
    }
}
