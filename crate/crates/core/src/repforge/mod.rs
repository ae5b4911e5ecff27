//! Explicit unitary matrix representations of `spin(n)`.
//!
//! A representation is stored through the images `π([e_k, e_l])`, `k < l`, of
//! the standard basis of `spin(n)`. Generators are skew-Hermitian. The vector
//! representation is `π([e_k,e_l]) = −4E_kl + 4E_lk`, so the Killing form
//! normalization is `⟨[e_k,e_l],[e_i,e_j]⟩ = 32δ_ik δ_jl`; nothing below
//! depends on it beyond that scaling.

mod build;
mod cache;
mod exterior;
mod gamma;
mod group;
mod pfaffian;
mod split;
mod standard;
mod tensor;
mod validate;

use crate::linalg::{c64, ComplexMatrix};
use crate::weightcalc::DominantWeight;

pub use build::{build_rep, cached_rep, clear_memory_cache, RepBuilder};
pub use cache::{default_cache_dir, read_bundle, write_bundle, DiskCache, GeneratorFile, Manifest, CACHE_ENV};
pub use exterior::ExteriorModel;
pub use gamma::{gamma_matrices, GammaSet};
pub use group::group_element;
pub(crate) use pfaffian::subset_pfaffian;
pub use pfaffian::{pfaffian_recursive, pfaffian_scalar_exact, pfaffian_scalar};
pub use split::{snap_half_integer, spectral_clusters, split_components, ComponentEmbedding, SpectralCluster, SplitResult, SNAP_TOLERANCE};
pub use standard::{standard_rep, StandardKind};
pub use tensor::{tensor_with_vector, TensorRep};
pub use validate::{structure_constants, validate_rep, validate_rep_strict, StructureConstants};

/// Largest supported `n`.
pub const MAX_N: usize = 8;
/// Largest supported `dim(V_ρ)·n`.
pub const MAX_TENSOR_DIM: usize = 4096;

/// Index of the pair `(k, l)`, `k < l`, in lexicographic order.
pub fn pair_index(n: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < n);
    k * n - k * (k + 1) / 2 + (l - k - 1)
}

/// All pairs `(k, l)` with `k < l < n`, lexicographically.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|k| ((k + 1)..n).map(move |l| (k, l))).collect()
}

/// The images `π([e_k, e_l])` of the basis of `spin(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    n: usize,
    dim: usize,
    mats: Vec<ComplexMatrix>,
}

impl Generators {
    pub fn new(n: usize, dim: usize, mats: Vec<ComplexMatrix>) -> Self {
        assert_eq!(mats.len(), n * (n - 1) / 2, "one generator per pair");
        assert!(mats.iter().all(|m| m.rows() == dim && m.cols() == dim));
        Generators { n, dim, mats }
    }

    pub fn from_fn(n: usize, dim: usize, mut f: impl FnMut(usize, usize) -> ComplexMatrix) -> Self {
        let mats = pairs(n).into_iter().map(|(k, l)| f(k, l)).collect();
        Self::new(n, dim, mats)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `π([e_k, e_l])` for `k < l`.
    pub fn get(&self, k: usize, l: usize) -> &ComplexMatrix {
        &self.mats[pair_index(self.n, k, l)]
    }

    /// `π([e_k, e_l])` for any `k, l`, using antisymmetry.
    pub fn bracket(&self, k: usize, l: usize) -> ComplexMatrix {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.get(k, l).clone(),
            std::cmp::Ordering::Greater => -self.get(l, k),
            std::cmp::Ordering::Equal => ComplexMatrix::zeros(self.dim, self.dim),
        }
    }

    /// Accumulates `factor · π([e_k, e_l])` into `dst`.
    pub fn add_bracket(&self, dst: &mut ComplexMatrix, k: usize, l: usize, factor: c64) {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => dst.axpy(factor, self.get(k, l)),
            std::cmp::Ordering::Greater => dst.axpy(-factor, self.get(l, k)),
            std::cmp::Ordering::Equal => {}
        }
    }

    pub fn as_slice(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn as_mut_slice(&mut self) -> &mut [ComplexMatrix] {
        &mut self.mats
    }

    /// `(1/32) Σ_{k<l} π([e_k,e_l])²`.
    pub fn casimir(&self) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(self.dim, self.dim);
        for g in &self.mats {
            c.axpy(c64::new(1.0 / 32.0, 0.0), &g.matmul(g));
        }
        c
    }

    /// Generators conjugated into the subspace spanned by the orthonormal
    /// columns of `basis`: `basis† π basis`.
    pub fn compress(&self, basis: &ComplexMatrix) -> Generators {
        let mats = self.mats.iter().map(|g| basis.adjoint_matmul(&g.matmul(basis))).collect();
        Generators { n: self.n, dim: basis.cols(), mats }
    }
}

/// An irreducible representation with highest weight `weight`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    weight: DominantWeight,
    generators: Generators,
}

impl Representation {
    pub fn new(weight: DominantWeight, generators: Generators) -> Self {
        assert_eq!(weight.n(), generators.n());
        Representation { weight, generators }
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.weight
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    pub fn generators_mut(&mut self) -> &mut Generators {
        &mut self.generators
    }

    pub fn generator(&self, k: usize, l: usize) -> &ComplexMatrix {
        self.generators.get(k, l)
    }

    pub fn bracket(&self, k: usize, l: usize) -> ComplexMatrix {
        self.generators.bracket(k, l)
    }

    pub fn casimir(&self) -> ComplexMatrix {
        self.generators.casimir()
    }
}
