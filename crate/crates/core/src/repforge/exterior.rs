use crate::linalg::{c64, ComplexMatrix, ONE};

/// Real exterior algebra `Λ*(Rⁿ)` with the basis of each `Λ^k` indexed by
/// `k`-subsets in lexicographic order.
#[derive(Clone, Debug)]
pub struct ExteriorModel {
    n: usize,
}

impl ExteriorModel {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "exterior model limited to n <= 16");
        ExteriorModel { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmasks of the `k`-subsets, lexicographic in their sorted elements.
    pub fn basis(&self, k: usize) -> Vec<u32> {
        fn rec(n: usize, k: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
            if k == 0 {
                out.push(mask);
                return;
            }
            for i in start..n {
                rec(n, k - 1, i + 1, mask | (1 << i), out);
            }
        }
        let mut out = Vec::new();
        if k <= self.n {
            rec(self.n, k, 0, 0, &mut out);
        }
        out
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    fn position(&self, k: usize, mask: u32) -> usize {
        self.basis(k).iter().position(|&b| b == mask).expect("subset in basis")
    }

    /// `e_i ∧ : Λ^k → Λ^{k+1}`.
    pub fn wedge(&self, i: usize, k: usize) -> ComplexMatrix {
        let src = self.basis(k);
        let dst = self.basis(k + 1);
        let mut out = ComplexMatrix::zeros(dst.len(), src.len());
        for (col, &s) in src.iter().enumerate() {
            if s & (1 << i) != 0 {
                continue;
            }
            let sign = sign_below(s, i);
            let row = dst.iter().position(|&b| b == s | (1 << i)).expect("subset in basis");
            out.set(row, col, c64::new(sign, 0.0));
        }
        out
    }

    /// Interior product `i(e_i) : Λ^k → Λ^{k−1}`, the adjoint of `e_i ∧`.
    pub fn interior(&self, i: usize, k: usize) -> ComplexMatrix {
        assert!(k >= 1);
        self.wedge(i, k - 1).adjoint()
    }

    /// Hodge star `Λ^k → Λ^{n−k}`: `∗e_S = sgn(S, S^c) e_{S^c}`.
    pub fn hodge(&self, k: usize) -> ComplexMatrix {
        let src = self.basis(k);
        let full = (1u32 << self.n) - 1;
        let mut out = ComplexMatrix::zeros(self.dim(self.n - k), src.len());
        for (col, &s) in src.iter().enumerate() {
            let c = full & !s;
            let row = self.position(self.n - k, c);
            out.set(row, col, c64::new(shuffle_sign(s, c), 0.0));
        }
        out
    }

    /// `π([e_a, e_b]) = 4(e_b∧ i(e_a) − e_a∧ i(e_b))` on `Λ^k`.
    pub fn generator(&self, k: usize, a: usize, b: usize) -> ComplexMatrix {
        let d = self.dim(k);
        if k == 0 {
            return ComplexMatrix::zeros(d, d);
        }
        let t1 = self.wedge(b, k - 1).matmul(&self.interior(a, k));
        let t2 = self.wedge(a, k - 1).matmul(&self.interior(b, k));
        (&t1 - &t2).scale_real(4.0)
    }

    /// Clifford multiplication `e_i· = e_i∧ − i(e_i)` on the full algebra,
    /// in the graded basis `Λ^0 ⊕ Λ^1 ⊕ …`.
    pub fn clifford_full(&self, i: usize) -> ComplexMatrix {
        let offsets: Vec<usize> = (0..=self.n + 1)
            .scan(0, |acc, k| {
                let here = *acc;
                *acc += if k <= self.n { self.dim(k) } else { 0 };
                Some(here)
            })
            .collect();
        let total = 1usize << self.n;
        let mut out = ComplexMatrix::zeros(total, total);
        for k in 0..self.n {
            out.add_block(offsets[k + 1], offsets[k], ONE, &self.wedge(i, k));
            out.add_block(offsets[k], offsets[k + 1], -ONE, &self.interior(i, k + 1));
        }
        out
    }
}

/// `(−1)^{#{s ∈ S : s < i}}`.
fn sign_below(set: u32, i: usize) -> f64 {
    let below = set & ((1u32 << i) - 1);
    if below.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the permutation listing `S` then `C` (both sorted).
fn shuffle_sign(s: u32, c: u32) -> f64 {
    let mut inversions = 0u32;
    for i in 0..32 {
        if s & (1 << i) != 0 {
            inversions += (c & ((1u32 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order() {
        let e = ExteriorModel::new(4);
        assert_eq!(e.basis(2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(e.dim(0), 1);
        assert_eq!(e.dim(5), 0);
    }

    #[test]
    fn anticommutation() {
        let e = ExteriorModel::new(5);
        for k in 1..4 {
            for i in 0..5 {
                for j in 0..5 {
                    // i(e_j) e_i∧ + e_i∧ i(e_j) = δ_ij on Λ^k
                    let lhs = &e.interior(j, k + 1).matmul(&e.wedge(i, k)) + &e.wedge(i, k - 1).matmul(&e.interior(j, k));
                    let expect = if i == j { ComplexMatrix::identity(e.dim(k)) } else { ComplexMatrix::zeros(e.dim(k), e.dim(k)) };
                    assert!(lhs.distance(&expect) < 1e-14);
                    // e_i∧ e_j∧ = −e_j∧ e_i∧
                    let ww = &e.wedge(i, k + 1).matmul(&e.wedge(j, k)) + &e.wedge(j, k + 1).matmul(&e.wedge(i, k));
                    assert!(ww.frobenius() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn hodge_squares() {
        for n in 2..=6 {
            let e = ExteriorModel::new(n);
            for k in 0..=n {
                let s = e.hodge(n - k).matmul(&e.hodge(k));
                let sign = if (k * (n - k)) % 2 == 0 { 1.0 } else { -1.0 };
                assert!(s.distance(&ComplexMatrix::identity(e.dim(k)).scale_real(sign)) < 1e-14);
                assert!(e.hodge(k).isometry_residual() < 1e-14);
            }
        }
    }

    /// On Λ¹ the generators reproduce the vector representation.
    #[test]
    fn degree_one_is_vector() {
        let e = ExteriorModel::new(4);
        let g = e.generator(1, 0, 2);
        let mut expect = ComplexMatrix::zeros(4, 4);
        expect.set(0, 2, c64::new(-4.0, 0.0));
        expect.set(2, 0, c64::new(4.0, 0.0));
        assert!(g.distance(&expect) < 1e-14);
    }

    #[test]
    fn clifford_full_relations() {
        let e = ExteriorModel::new(3);
        for i in 0..3 {
            for j in 0..3 {
                let a = e.clifford_full(i);
                let b = e.clifford_full(j);
                let s = &a.matmul(&b) + &b.matmul(&a);
                let expect = if i == j { ComplexMatrix::scalar(8, c64::new(-2.0, 0.0)) } else { ComplexMatrix::zeros(8, 8) };
                assert!(s.distance(&expect) < 1e-14);
            }
        }
    }
}
