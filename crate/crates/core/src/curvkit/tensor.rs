use std::ops::{Add, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Entries below this are treated as zero when completing and validating
/// symmetries.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// `R_{ijkl} = ⟨R(e_i, e_j) e_k, e_l⟩` on `Rⁿ`, zero-based indices.
///
/// The sign is fixed so that `⟨R(u, v) v, u⟩` is the sectional curvature of
/// an orthonormal pair; the round sphere has `R_{ijkl} = δ_il δ_jk − δ_ik δ_jl`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCurvatureTensor {
    n: usize,
    entries: Vec<f64>,
}

/// Wire form `{n, entries: [[i, j, k, l, value], …]}`.
#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    entries: Vec<(usize, usize, usize, usize, f64)>,
}

impl AlgebraicCurvatureTensor {
    pub fn zero(n: usize) -> Self {
        AlgebraicCurvatureTensor { n, entries: vec![0.0; n * n * n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.entries[self.idx(i, j, k, l)]
    }

    /// Builds a tensor from a generating set of entries, filling in
    /// `R_{jikl} = −R_{ijkl}`, `R_{ijlk} = −R_{ijkl}` and `R_{klij} = R_{ijkl}`.
    /// Conflicting entries and violations of the first Bianchi identity are
    /// rejected.
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, usize, f64)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n = {n} is below 2")));
        }
        let mut t = Self::zero(n);
        let mut set = vec![false; t.entries.len()];
        for &(i, j, k, l, v) in entries {
            if [i, j, k, l].iter().any(|&x| x >= n) {
                return Err(Error::Format(format!("index ({i},{j},{k},{l}) out of range for n = {n}")));
            }
            if !v.is_finite() {
                return Err(Error::Format(format!("entry ({i},{j},{k},{l}) is not finite")));
            }
            for (a, b, c, d, s) in images(i, j, k, l) {
                let value = s * v;
                let at = t.idx(a, b, c, d);
                if (a == b || c == d) && v.abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::Validation(format!("entry ({i},{j},{k},{l}) must vanish by antisymmetry")));
                }
                if set[at] && (t.entries[at] - value).abs() > SYMMETRY_TOLERANCE * (1.0 + v.abs()) {
                    return Err(Error::Validation(format!(
                        "entry ({i},{j},{k},{l}) = {v} conflicts with ({a},{b},{c},{d}) = {}",
                        t.entries[at]
                    )));
                }
                set[at] = true;
                t.entries[at] = if a == b || c == d { 0.0 } else { value };
            }
        }
        t.validate(SYMMETRY_TOLERANCE)?;
        Ok(t)
    }

    /// Largest violation of the pair symmetries.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        worst = worst
                            .max((v + self.get(j, i, k, l)).abs())
                            .max((v + self.get(i, j, l, k)).abs())
                            .max((v - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest `|R_{ijkl} + R_{jkil} + R_{kijl}|`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l)).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Rejects tensors that fail the algebraic symmetries at `tolerance`
    /// relative to the largest entry.
    pub fn validate(&self, tolerance: f64) -> Result<()> {
        let scale = self.max_abs().max(1.0);
        let sym = self.symmetry_residual();
        if sym > tolerance * scale {
            return Err(Error::Validation(format!("pair symmetry violated by {sym:.3e}")));
        }
        let bianchi = self.bianchi_residual();
        if bianchi > tolerance * scale {
            return Err(Error::Validation(format!("first Bianchi identity violated by {bianchi:.3e}")));
        }
        Ok(())
    }

    /// `⟨R(u, v) v, u⟩`.
    pub fn sectional(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        s += self.get(i, j, k, l) * u[i] * v[j] * v[k] * u[l];
                    }
                }
            }
        }
        s
    }

    /// `Ric_{ab} = Σ_i ⟨R(e_a, e_i) e_i, e_b⟩`.
    pub fn ricci(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        (0..n).map(|a| (0..n).map(|b| (0..n).map(|i| self.get(a, i, i, b)).sum()).collect()).collect()
    }

    /// `κ = Σ_{i,j} ⟨R(e_i, e_j) e_j, e_i⟩`.
    pub fn scalar(&self) -> f64 {
        self.ricci().iter().enumerate().map(|(a, row)| row[a]).sum()
    }

    /// The curvature operator on `Λ²` in the basis `e_i ∧ e_j`, `i < j`:
    /// entry `(ij, kl)` is `⟨R(e_i, e_j) e_l, e_k⟩`.
    pub fn curvature_operator(&self) -> Vec<Vec<f64>> {
        let pairs = pairs(self.n);
        pairs.iter().map(|&(i, j)| pairs.iter().map(|&(k, l)| self.get(i, j, l, k)).collect()).collect()
    }

    /// Generating entries with `i < j`, `k < l`, `(i, j) ≤ (k, l)`.
    pub fn to_entries(&self) -> Vec<(usize, usize, usize, usize, f64)> {
        let pairs = pairs(self.n);
        let mut out = Vec::new();
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[p..] {
                let v = self.get(i, j, k, l);
                if v != 0.0 {
                    out.push((i, j, k, l, v));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Serialize for AlgebraicCurvatureTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire { n: self.n, entries: self.to_entries() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicCurvatureTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        Self::from_entries(wire.n, &wire.entries).map_err(serde::de::Error::custom)
    }
}

impl Add for &AlgebraicCurvatureTensor {
    type Output = AlgebraicCurvatureTensor;

    fn add(self, rhs: &AlgebraicCurvatureTensor) -> AlgebraicCurvatureTensor {
        assert_eq!(self.n, rhs.n);
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        AlgebraicCurvatureTensor { n: self.n, entries }
    }
}

impl Mul<f64> for &AlgebraicCurvatureTensor {
    type Output = AlgebraicCurvatureTensor;

    fn mul(self, rhs: f64) -> AlgebraicCurvatureTensor {
        AlgebraicCurvatureTensor { n: self.n, entries: self.entries.iter().map(|a| a * rhs).collect() }
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn images(i: usize, j: usize, k: usize, l: usize) -> [(usize, usize, usize, usize, f64); 8] {
    [
        (i, j, k, l, 1.0),
        (j, i, k, l, -1.0),
        (i, j, l, k, -1.0),
        (j, i, l, k, 1.0),
        (k, l, i, j, 1.0),
        (l, k, i, j, -1.0),
        (k, l, j, i, -1.0),
        (l, k, j, i, 1.0),
    ]
}

/// `R_{ijkl} = K(δ_il δ_jk − δ_ik δ_jl)`: sectional curvature `K` on every
/// plane, Ricci `(n−1)K`, scalar `n(n−1)K`.
pub fn constant_curvature(n: usize, k: f64) -> AlgebraicCurvatureTensor {
    let mut t = AlgebraicCurvatureTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let a = t.idx(i, j, j, i);
                t.entries[a] = k;
                let b = t.idx(i, j, i, j);
                t.entries[b] = -k;
            }
        }
    }
    t
}

/// `(h ⊙ g)_{ijkl} = h_il g_jk + h_jk g_il − h_ik g_jl − h_jl g_ik` for
/// symmetric `h`, `g`.
pub fn kulkarni_nomizu(h: &[Vec<f64>], g: &[Vec<f64>]) -> Result<AlgebraicCurvatureTensor> {
    let n = h.len();
    for m in [h, g] {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("Kulkarni–Nomizu factors must be square of equal size".into()));
        }
        for a in 0..n {
            for b in 0..a {
                if (m[a][b] - m[b][a]).abs() > SYMMETRY_TOLERANCE * (1.0 + m[a][b].abs()) {
                    return Err(Error::Validation("Kulkarni–Nomizu factors must be symmetric".into()));
                }
            }
        }
    }
    let mut t = AlgebraicCurvatureTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let at = t.idx(i, j, k, l);
                    t.entries[at] = h[i][l] * g[j][k] + h[j][k] * g[i][l] - h[i][k] * g[j][l] - h[j][l] * g[i][k];
                }
            }
        }
    }
    Ok(t)
}

/// `R_{ijkl} = ω_ij ω_lk` for a decomposable 2-form `ω = x ∧ y`; its
/// curvature operator is `ω ωᵀ ⪰ 0`.
pub fn decomposable_square(x: &[f64], y: &[f64]) -> AlgebraicCurvatureTensor {
    let n = x.len();
    let omega = |i: usize, j: usize| x[i] * y[j] - x[j] * y[i];
    let mut t = AlgebraicCurvatureTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let at = t.idx(i, j, k, l);
                    t.entries[at] = omega(i, j) * omega(l, k);
                }
            }
        }
    }
    t
}

/// `2r` times the round sphere plus a seeded nonnegative perturbation, so
/// that the curvature operator is at least `2r` and `⟨R(u, v) v, u⟩ ≥ 2r` for
/// every orthonormal pair.
pub fn random_positive(n: usize, r: f64, seed: u64) -> AlgebraicCurvatureTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = constant_curvature(n, 2.0 * r);
    for _ in 0..3 {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let c = rng.random_range(0.0..2.0);
        t = &t + &(&decomposable_square(&x, &y) * c);
    }
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let h: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * a[j][k]).sum::<f64>() / n as f64).collect()).collect();
    let g: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let kn = kulkarni_nomizu(&h, &g).expect("square symmetric factors");
    &t + &kn
}
