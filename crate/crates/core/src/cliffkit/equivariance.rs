use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{Check, Report};
use crate::repforge::{group_element, standard_rep, StandardKind};

use super::CliffordHomSet;

/// `‖p_k(Ad(g)u) − π_λ(g) p_k(u) π_ρ(g⁻¹)‖_F` for every component, with
/// `g = exp(t[e_k, e_l])`.
///
/// `Ad(g)` comes from the vector representation, `π_ρ(g⁻¹)` from the model of
/// `V_ρ`, and `π_λ(g)` from exponentiating the restriction of the tensor
/// generator to the component.
pub fn equivariance_residuals(set: &CliffordHomSet, k: usize, l: usize, t: f64, u: &[f64]) -> Result<Vec<f64>> {
    residuals_with(set, k, l, t, t, u)
}

fn residuals_with(set: &CliffordHomSet, k: usize, l: usize, t: f64, t_ad: f64, u: &[f64]) -> Result<Vec<f64>> {
    let n = set.n();
    if u.len() != n {
        return Err(Error::Domain(format!("vector of length {} for n = {n}", u.len())));
    }
    let vector = standard_rep(n, StandardKind::Vector)?;
    let ad = group_element(&vector, k, l, t_ad)?;
    let gu: Vec<f64> = (0..n).map(|i| (0..n).map(|j| ad.get(i, j).re * u[j]).sum()).collect();
    let rho_inv = group_element(set.rho(), k, l, -t)?;
    let d = set.rho_dim();
    let gen = set.rho().generator(k, l);
    set.components()
        .iter()
        .map(|c| {
            let b = c.basis();
            let cols = c.dim();
            let mut tb = ComplexMatrix::zeros(d * n, cols);
            for i in 0..n {
                tb.set_block(i * d, 0, &gen.matmul(&b.block(i * d, 0, d, cols)));
            }
            tb.add_block(k * d, 0, c64::new(-4.0, 0.0), &b.block(l * d, 0, d, cols));
            tb.add_block(l * d, 0, c64::new(4.0, 0.0), &b.block(k * d, 0, d, cols));
            let x = b.adjoint_matmul(&tb);
            let lambda_g = x.exp_skew(t)?;
            let rhs = lambda_g.matmul(&c.apply(u)).matmul(&rho_inv);
            Ok(c.apply(&gu).distance(&rhs))
        })
        .collect()
}

/// Samples `(k, l, t, u)` from a seeded generator and records the largest
/// residual per component.
pub fn verify_equivariance(set: &CliffordHomSet, samples: usize, seed: u64, tolerance: f64) -> Result<Report> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let n = set.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = vec![(0.0f64, 0usize); set.components().len()];
    for s in 0..samples {
        let k = rng.random_range(0..n - 1);
        let l = rng.random_range(k + 1..n);
        let t = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        for (w, r) in worst.iter_mut().zip(equivariance_residuals(set, k, l, t, &u)?) {
            if r > w.0 || r.is_nan() {
                *w = (r, s);
            }
        }
    }
    let mut report = Report::new("equivariance");
    for (c, (r, s)) in set.components().iter().zip(worst) {
        report.push(
            Check::new("equivariance", r, tolerance)
                .with("weight", &c.descriptor.weight)
                .with("sample", s)
                .with("seed", seed),
        );
    }
    Ok(report)
}
