//! Dense complex matrices backed by `faer`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use faer::{Mat, Side};

pub use faer::c64;

use crate::error::{Error, Result};

pub const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
pub const ONE: c64 = c64 { re: 1.0, im: 0.0 };
pub const I: c64 = c64 { re: 0.0, im: 1.0 };

/// Row-major view of a dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(Mat<c64>);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(Mat::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(Mat::identity(n, n))
    }

    pub fn scalar(n: usize, value: c64) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { value } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> c64) -> Self {
        ComplexMatrix(Mat::from_fn(rows, cols, f))
    }

    /// Builds from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| c64::new(entries[i * cols + j], 0.0))
    }

    /// Builds from row-major complex entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[c64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| entries[i * cols + j])
    }

    pub fn from_mat(mat: Mat<c64>) -> Self {
        ComplexMatrix(mat)
    }

    pub fn as_mat(&self) -> &Mat<c64> {
        &self.0
    }

    pub fn as_mat_mut(&mut self) -> &mut Mat<c64> {
        &mut self.0
    }

    pub fn into_mat(self) -> Mat<c64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: c64) {
        self.0[(i, j)] = value;
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: c64) {
        self.0[(i, j)] += value;
    }

    pub fn to_row_major(&self) -> Vec<c64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint().to_owned())
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose().to_owned())
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(self.cols(), rhs.rows(), "matmul shape mismatch");
        ComplexMatrix(&self.0 * &rhs.0)
    }

    /// `self† · rhs` without forming the adjoint.
    pub fn adjoint_matmul(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(self.rows(), rhs.rows(), "matmul shape mismatch");
        ComplexMatrix(self.0.adjoint() * &rhs.0)
    }

    /// `self · rhs†` without forming the adjoint.
    pub fn matmul_adjoint(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(self.cols(), rhs.cols(), "matmul shape mismatch");
        ComplexMatrix(&self.0 * rhs.0.adjoint())
    }

    pub fn scale(&self, factor: c64) -> Self {
        ComplexMatrix(Mat::from_fn(self.rows(), self.cols(), |i, j| self.0[(i, j)] * factor))
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c64::new(factor, 0.0))
    }

    /// `self += factor · other`.
    pub fn axpy(&mut self, factor: c64, other: &ComplexMatrix) {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()));
        faer::zip!(self.0.as_mut(), other.0.as_ref()).for_each(|faer::unzip!(a, b)| *a += factor * *b);
    }

    pub fn kron(&self, rhs: &ComplexMatrix) -> Self {
        ComplexMatrix(self.0.kron(&rhs.0))
    }

    pub fn commutator(&self, rhs: &ComplexMatrix) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm_l2()
    }

    pub fn frobenius_sq(&self) -> f64 {
        let f = self.frobenius();
        f * f
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        (self - other).frobenius()
    }

    pub fn max_abs(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                best = best.max(self.0[(i, j)].norm());
            }
        }
        best
    }

    pub fn trace(&self) -> c64 {
        assert!(self.is_square());
        (0..self.rows()).map(|i| self.0[(i, i)]).sum()
    }

    pub fn is_finite(&self) -> bool {
        (0..self.cols()).all(|j| (0..self.rows()).all(|i| self.0[(i, j)].re.is_finite() && self.0[(i, j)].im.is_finite()))
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        ComplexMatrix(self.0.as_ref().submatrix(row, col, rows, cols).to_owned())
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &ComplexMatrix) {
        self.0
            .as_mut()
            .submatrix_mut(row, col, block.rows(), block.cols())
            .copy_from(&block.0);
    }

    pub fn add_block(&mut self, row: usize, col: usize, factor: c64, block: &ComplexMatrix) {
        let mut dst = self.0.as_mut().submatrix_mut(row, col, block.rows(), block.cols());
        faer::zip!(dst.as_mut(), block.0.as_ref()).for_each(|faer::unzip!(a, b)| *a += factor * *b);
    }

    pub fn columns(&self, start: usize, count: usize) -> Self {
        self.block(0, start, self.rows(), count)
    }

    pub fn hstack(parts: &[&ComplexMatrix]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows());
        let cols = parts.iter().map(|p| p.cols()).sum();
        let mut out = Self::zeros(rows, cols);
        let mut at = 0;
        for p in parts {
            assert_eq!(p.rows(), rows);
            out.set_block(0, at, p);
            at += p.cols();
        }
        out
    }

    /// `½(A + A†)`.
    pub fn hermitian_part(&self) -> Self {
        (&*self + &self.adjoint()).scale_real(0.5)
    }

    /// Distance from `self` to `self†`.
    pub fn hermitian_residual(&self) -> f64 {
        self.distance(&self.adjoint())
    }

    /// Distance from `self` to `−self†`.
    pub fn skew_hermitian_residual(&self) -> f64 {
        (self + &self.adjoint()).frobenius()
    }

    /// Eigenvalues ascending, with orthonormal eigenvectors as columns. The
    /// Hermitian part of `self` is decomposed.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::Numerical("eigensolve of a non-square matrix".into()));
        }
        if self.rows() == 0 {
            return Ok((Vec::new(), ComplexMatrix::zeros(0, 0)));
        }
        let h = self.hermitian_part();
        let evd = h
            .0
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Numerical(format!("eigensolver failed: {e:?}")))?;
        let values: Vec<f64> = evd.S().column_vector().iter().map(|z| z.re).collect();
        Ok((values, ComplexMatrix(evd.U().to_owned())))
    }

    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if self.rows() == 0 {
            return Ok(Vec::new());
        }
        self.hermitian_part()
            .0
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Numerical(format!("eigensolver failed: {e:?}")))
    }

    /// `exp(t·X)` for skew-Hermitian `X`, via the eigendecomposition of `iX`.
    pub fn exp_skew(&self, t: f64) -> Result<ComplexMatrix> {
        let h = self.scale(I);
        let (values, vectors) = h.hermitian_eigen()?;
        // X = −iH, so exp(tX) = U diag(exp(−i t λ)) U†.
        let phases: Vec<c64> = values.iter().map(|&l| c64::cis(-t * l)).collect();
        let scaled = ComplexMatrix::from_fn(vectors.rows(), vectors.cols(), |i, j| vectors.get(i, j) * phases[j]);
        Ok(scaled.matmul_adjoint(&vectors))
    }

    /// `‖A†A − Id‖_F`.
    pub fn isometry_residual(&self) -> f64 {
        self.adjoint_matmul(self).distance(&ComplexMatrix::identity(self.cols()))
    }

    /// Distance from the nearest scalar multiple of the identity, and that scalar.
    pub fn scalar_fit(&self) -> (c64, f64) {
        let n = self.rows();
        if n == 0 {
            return (ZERO, 0.0);
        }
        let s = self.trace() / n as f64;
        (s, self.distance(&ComplexMatrix::scalar(n, s)))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows().min(8) {
            let row: Vec<String> = (0..self.cols().min(8))
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        self.0 -= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| c64::new((i * 3 + j) as f64 * 0.1, (i as f64) - (j as f64) * 0.5))
    }

    #[test]
    fn products_and_adjoints() {
        let a = sample(4);
        let b = sample(4).transpose();
        assert!(a.adjoint_matmul(&b).distance(&a.adjoint().matmul(&b)) < 1e-12);
        assert!(a.matmul_adjoint(&b).distance(&a.matmul(&b.adjoint())) < 1e-12);
        let mut c = a.clone();
        c.axpy(c64::new(0.0, 2.0), &b);
        assert!(c.distance(&(&a + &b.scale(c64::new(0.0, 2.0)))) < 1e-12);
    }

    #[test]
    fn kron_layout() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = ComplexMatrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 2), c64::new(2.0, 0.0));
        assert_eq!(k.get(3, 1), c64::new(3.0, 0.0));
        assert_eq!(k.get(0, 1), ZERO);
    }

    #[test]
    fn eigen_reconstructs() {
        let a = sample(6).hermitian_part();
        let (vals, vecs) = a.hermitian_eigen().unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(vecs.isometry_residual() < 1e-12);
        let d = ComplexMatrix::from_fn(6, 6, |i, j| if i == j { c64::new(vals[i], 0.0) } else { ZERO });
        assert!(vecs.matmul(&d).matmul_adjoint(&vecs).distance(&a) < 1e-12);
    }

    /// exp of the rotation generator in a 2-plane is the closed-form rotation.
    #[test]
    fn exp_skew_rotation() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let t = 0.7f64;
        let g = x.exp_skew(t).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        assert!(g.distance(&expect) < 1e-13);
        assert!(x.exp_skew(0.0).unwrap().distance(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn blocks_round_trip() {
        let a = sample(5);
        let b = a.block(1, 2, 3, 2);
        let mut z = ComplexMatrix::zeros(5, 5);
        z.set_block(1, 2, &b);
        assert_eq!(z.get(3, 3), a.get(3, 3));
        assert_eq!(z.get(0, 0), ZERO);
        let h = ComplexMatrix::hstack(&[&a.columns(0, 2), &a.columns(2, 3)]);
        assert_eq!(h, a);
    }

    #[test]
    fn scalar_fit_detects_scalars() {
        let s = ComplexMatrix::scalar(3, c64::new(2.0, -1.0));
        let (v, r) = s.scalar_fit();
        assert_eq!(v, c64::new(2.0, -1.0));
        assert!(r < 1e-15);
        assert!(sample(3).scalar_fit().1 > 0.1);
    }
}
