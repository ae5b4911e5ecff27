use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};

use super::{Generators, Representation, MAX_TENSOR_DIM};

/// `V_ρ ⊗ Rⁿ` together with the operator `Ĉ`.
///
/// Vectors are stacked by the `Rⁿ` index: `φ ⊗ e_i` lives in rows
/// `i·dim .. (i+1)·dim`. Tensor generators are never stored densely;
/// [`TensorRep::apply_generator`] applies `π_ρ ⊗ 1 + 1 ⊗ π_Ad` blockwise.
#[derive(Clone, Debug)]
pub struct TensorRep {
    base: Arc<Representation>,
    chat: ComplexMatrix,
}

impl TensorRep {
    pub fn base(&self) -> &Representation {
        &self.base
    }

    pub fn base_arc(&self) -> Arc<Representation> {
        Arc::clone(&self.base)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `dim(V_ρ)·n`.
    pub fn dim(&self) -> usize {
        self.base.dim() * self.base.n()
    }

    pub fn chat(&self) -> &ComplexMatrix {
        &self.chat
    }

    /// `(π_ρ ⊗ 1 + 1 ⊗ π_Ad)([e_k, e_l]) · B` for `k < l`.
    pub fn apply_generator(&self, k: usize, l: usize, b: &ComplexMatrix) -> ComplexMatrix {
        let d = self.base_dim();
        let n = self.n();
        assert_eq!(b.rows(), d * n);
        let cols = b.cols();
        let g = self.base.generator(k, l);
        let mut out = ComplexMatrix::zeros(d * n, cols);
        for i in 0..n {
            out.set_block(i * d, 0, &g.matmul(&b.block(i * d, 0, d, cols)));
        }
        // π_Ad([e_k,e_l]) = −4E_kl + 4E_lk acts on the Rⁿ index.
        out.add_block(k * d, 0, c64::new(-4.0, 0.0), &b.block(l * d, 0, d, cols));
        out.add_block(l * d, 0, c64::new(4.0, 0.0), &b.block(k * d, 0, d, cols));
        out
    }

    /// Generators of the subrepresentation on the orthonormal columns of `basis`.
    pub fn restrict(&self, basis: &ComplexMatrix) -> Generators {
        let n = self.n();
        Generators::from_fn(n, basis.cols(), |k, l| basis.adjoint_matmul(&self.apply_generator(k, l, basis)))
    }

    /// Dense `π_ρ ⊗ 1 + 1 ⊗ π_Ad` for `k < l`; intended for small checks.
    pub fn dense_generator(&self, k: usize, l: usize) -> ComplexMatrix {
        self.apply_generator(k, l, &ComplexMatrix::identity(self.dim()))
    }

    /// `Ĉ` assembled from the Casimir cross term,
    /// `(1/32) Σ_{i,j} π_Ad([e_i,e_j]) ⊗ π_ρ([e_i,e_j])`.
    pub fn chat_from_cross_term(&self) -> ComplexMatrix {
        let n = self.n();
        let d = self.base_dim();
        let mut out = ComplexMatrix::zeros(n * d, n * d);
        for k in 0..n {
            for l in (k + 1)..n {
                let mut ad = ComplexMatrix::zeros(n, n);
                ad.set(k, l, c64::new(-4.0, 0.0));
                ad.set(l, k, c64::new(4.0, 0.0));
                // Ordered pairs (k,l) and (l,k) contribute equally.
                out.axpy(c64::new(2.0 / 32.0, 0.0), &ad.kron(self.base.generator(k, l)));
            }
        }
        out
    }

    /// `C_{ρ⊗Ad} − C_ρ⊗1 − 1⊗C_Ad`, from dense tensor generators.
    pub fn chat_from_casimirs(&self) -> ComplexMatrix {
        let n = self.n();
        let d = self.base_dim();
        let mut total = ComplexMatrix::zeros(n * d, n * d);
        for k in 0..n {
            for l in (k + 1)..n {
                let t = self.dense_generator(k, l);
                total.axpy(c64::new(1.0 / 32.0, 0.0), &t.matmul(&t));
            }
        }
        let c_rho = ComplexMatrix::identity(n).kron(&self.base.casimir());
        let c_ad = ComplexMatrix::scalar(n * d, c64::new(-(n as f64 - 1.0) / 2.0, 0.0));
        &(&total - &c_rho) - &c_ad
    }
}

/// Forms `V_ρ ⊗ Rⁿ` and its operator `Ĉ`, with block `(t, s)` equal to
/// `¼ π_ρ([e_s, e_t])`.
pub fn tensor_with_vector(rep: Arc<Representation>) -> Result<TensorRep> {
    tensor_with_vector_limited(rep, MAX_TENSOR_DIM)
}

pub(crate) fn tensor_with_vector_limited(rep: Arc<Representation>, max_dim: usize) -> Result<TensorRep> {
    let n = rep.n();
    let d = rep.dim();
    if d * n > max_dim {
        return Err(Error::Capacity(format!(
            "dim(V_{})·n = {} exceeds the limit {max_dim}",
            rep.weight(),
            d * n
        )));
    }
    let mut chat = ComplexMatrix::zeros(n * d, n * d);
    for t in 0..n {
        for s in 0..n {
            if s != t {
                chat.add_block(t * d, s * d, c64::new(0.25, 0.0), &rep.bracket(s, t));
            }
        }
    }
    Ok(TensorRep { base: rep, chat })
}
