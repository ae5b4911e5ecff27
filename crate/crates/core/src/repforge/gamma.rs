use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, I, ONE, ZERO};

use super::MAX_N;

/// Skew-Hermitian matrices `γ_0, …, γ_{n−1}` of size `2^⌊n/2⌋` with
/// `γ_iγ_j + γ_jγ_i = −2δ_ij`.
#[derive(Clone, Debug)]
pub struct GammaSet {
    n: usize,
    gammas: Vec<ComplexMatrix>,
}

fn pauli(which: u8) -> ComplexMatrix {
    match which {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_row_major(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => ComplexMatrix::from_row_major(2, 2, &[ZERO, -I, I, ZERO]),
        _ => ComplexMatrix::from_row_major(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

fn kron_all(factors: &[u8]) -> ComplexMatrix {
    factors
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, &f| acc.kron(&pauli(f)))
}

impl GammaSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Spinor dimension `2^⌊n/2⌋`.
    pub fn dim(&self) -> usize {
        1 << (self.n / 2)
    }

    pub fn gammas(&self) -> &[ComplexMatrix] {
        &self.gammas
    }

    pub fn gamma(&self, i: usize) -> &ComplexMatrix {
        &self.gammas[i]
    }

    /// Clifford action of `u = Σ u_i e_i`.
    pub fn clifford(&self, u: &[f64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for (g, &x) in self.gammas.iter().zip(u) {
            out.axpy(c64::new(x, 0.0), g);
        }
        out
    }

    /// `χ = (−i)^m γ_0 ⋯ γ_{2m−1}` for `n = 2m`; Hermitian with `χ² = 1`.
    pub fn chirality(&self) -> Option<ComplexMatrix> {
        if self.n % 2 == 1 {
            return None;
        }
        let m = self.n / 2;
        let product = self
            .gammas
            .iter()
            .fold(ComplexMatrix::identity(self.dim()), |acc, g| acc.matmul(g));
        let phase = (0..m).fold(ONE, |acc, _| acc * -I);
        Some(product.scale(phase))
    }

    /// Max over `i, j` of `‖γ_iγ_j + γ_jγ_i + 2δ_ij‖_F`.
    pub fn anticommutator_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.gammas.iter().enumerate() {
            for (j, b) in self.gammas.iter().enumerate() {
                let mut s = &a.matmul(b) + &b.matmul(a);
                if i == j {
                    s += &ComplexMatrix::scalar(self.dim(), c64::new(2.0, 0.0));
                }
                worst = worst.max(s.frobenius());
            }
        }
        worst
    }
}

/// Tensor-product construction from Pauli matrices:
/// `γ_{2j} = i·σ₃^{⊗j}⊗σ₁⊗1`, `γ_{2j+1} = i·σ₃^{⊗j}⊗σ₂⊗1`, and for odd `n`
/// the last one is `i·σ₃^{⊗m}`.
pub fn gamma_matrices(n: usize) -> Result<GammaSet> {
    if n == 0 || n > MAX_N {
        return Err(Error::Domain(format!("gamma matrices supported for 1 <= n <= {MAX_N}, got {n}")));
    }
    let m = n / 2;
    let mut gammas = Vec::with_capacity(n);
    for j in 0..m {
        for which in [1u8, 2] {
            let factors: Vec<u8> = (0..m)
                .map(|q| match q.cmp(&j) {
                    std::cmp::Ordering::Less => 3,
                    std::cmp::Ordering::Equal => which,
                    std::cmp::Ordering::Greater => 0,
                })
                .collect();
            gammas.push(kron_all(&factors).scale(I));
        }
    }
    if n % 2 == 1 {
        gammas.push(kron_all(&vec![3u8; m]).scale(I));
    }
    Ok(GammaSet { n, gammas })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations() {
        for n in 1..=MAX_N {
            let g = gamma_matrices(n).unwrap();
            assert_eq!(g.gammas().len(), n);
            assert!(g.anticommutator_residual() < 1e-12, "n = {n}");
            for x in g.gammas() {
                assert!(x.skew_hermitian_residual() < 1e-14);
                assert!(x.isometry_residual() < 1e-14);
            }
        }
        assert!(gamma_matrices(9).is_err());
    }

    #[test]
    fn rank_one_relations() {
        let g = gamma_matrices(2).unwrap();
        let (a, b) = (g.gamma(0), g.gamma(1));
        assert_eq!(a.rows(), 2);
        assert!((&a.matmul(b) + &b.matmul(a)).frobenius() < 1e-15);
        assert!(a.matmul(a).distance(&ComplexMatrix::scalar(2, -ONE)) < 1e-15);
    }

    /// The chirality operator has eigenvalues ±1 with equal multiplicity and
    /// anticommutes with every γ.
    #[test]
    fn chirality_six() {
        let g = gamma_matrices(6).unwrap();
        assert_eq!(g.dim(), 8);
        let chi = g.chirality().unwrap();
        assert!(chi.hermitian_residual() < 1e-14);
        assert!(chi.matmul(&chi).distance(&ComplexMatrix::identity(8)) < 1e-14);
        let vals = chi.hermitian_eigenvalues().unwrap();
        assert_eq!(vals.iter().filter(|&&v| (v - 1.0).abs() < 1e-12).count(), 4);
        assert_eq!(vals.iter().filter(|&&v| (v + 1.0).abs() < 1e-12).count(), 4);
        for x in g.gammas() {
            assert!((&chi.matmul(x) + &x.matmul(&chi)).frobenius() < 1e-14);
        }
        assert!(gamma_matrices(5).unwrap().chirality().is_none());
    }
}
