use crate::linalg::{c64, ComplexMatrix};
use crate::repforge::Representation;

/// An operator on `V_ρ ⊗ Rⁿ` viewed as an `n × n` array of `dim(V_ρ)`-square
/// blocks. Block `(i, j)` of the `q`-th field is `r^q(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    n: usize,
    dim: usize,
    q: usize,
    matrix: ComplexMatrix,
}

impl BlockOperator {
    pub fn from_matrix(n: usize, dim: usize, q: usize, matrix: ComplexMatrix) -> Self {
        assert_eq!(matrix.rows(), n * dim);
        assert_eq!(matrix.cols(), n * dim);
        BlockOperator { n, dim, q, matrix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of each block, `dim(V_ρ)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        self.matrix.block(i * self.dim, j * self.dim, self.dim, self.dim)
    }

    /// `r^q(u, v) = Σ_{i,j} u_i v_j r^q(e_i, e_j)`.
    pub fn eval(&self, u: &[f64], v: &[f64]) -> ComplexMatrix {
        assert_eq!(u.len(), self.n);
        assert_eq!(v.len(), self.n);
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                let c = ui * vj;
                if c != 0.0 {
                    out.axpy(c64::new(c, 0.0), &self.block(i, j));
                }
            }
        }
        out
    }

    /// Block-matrix product; the fields compose as `r^a · r^b = r^{a+b}`.
    pub fn compose(&self, rhs: &BlockOperator) -> BlockOperator {
        assert_eq!((self.n, self.dim), (rhs.n, rhs.dim));
        BlockOperator { n: self.n, dim: self.dim, q: self.q + rhs.q, matrix: self.matrix.matmul(&rhs.matrix) }
    }
}

/// Dense `r¹`: block `(i, j)` is `−¼ π_ρ([e_i, e_j])`. This is the operator
/// `Ĉ` of the tensor product.
pub(crate) fn r1_matrix(rho: &Representation) -> ComplexMatrix {
    let n = rho.n();
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in (i + 1)..n {
            let g = rho.generator(i, j);
            out.add_block(i * d, j * d, c64::new(-0.25, 0.0), g);
            out.add_block(j * d, i * d, c64::new(0.25, 0.0), g);
        }
    }
    out
}

/// The field `r^q_ρ`, computed as the `q`-th block power of `r¹`.
pub fn rq_field(rho: &Representation, q: usize) -> BlockOperator {
    let n = rho.n();
    let d = rho.dim();
    if q == 0 {
        return BlockOperator { n, dim: d, q, matrix: ComplexMatrix::identity(n * d) };
    }
    let r1 = r1_matrix(rho);
    let mut acc = r1.clone();
    for _ in 1..q {
        acc = acc.matmul(&r1);
    }
    BlockOperator { n, dim: d, q, matrix: acc }
}

/// `‖r²(u,v) − r²(v,u) − (n−2) r¹(u,v)‖_F`.
pub fn r2_antisymmetry_residual(r1: &BlockOperator, r2: &BlockOperator, u: &[f64], v: &[f64]) -> f64 {
    let n = r1.n() as f64;
    let lhs = &r2.eval(u, v) - &r2.eval(v, u);
    lhs.distance(&r1.eval(u, v).scale_real(n - 2.0))
}
