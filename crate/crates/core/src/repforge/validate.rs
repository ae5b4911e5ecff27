use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::report::{frobenius_tolerance, Check, Report};
use crate::weightcalc::{casimir_constant, rational_to_f64, weyl_dimension};

use super::{gamma_matrices, pairs, Representation};

/// `[[e_i,e_j],[e_k,e_l]] = Σ f_r [e_a,e_b]_r`, computed in the gamma-matrix
/// model of the Clifford algebra, where `[e_i,e_j] ↦ 2γ_iγ_j`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub n: usize,
    /// Indexed by `(p, q)` pair indices with `p < q`: nonzero `(r, f_r)`.
    pub table: HashMap<(usize, usize), Vec<(usize, f64)>>,
    /// Residual of expressing each commutator in the basis.
    pub projection_residual: f64,
}

fn compute_structure_constants(n: usize) -> Result<StructureConstants> {
    let gamma = gamma_matrices(n)?;
    let basis: Vec<ComplexMatrix> = pairs(n)
        .into_iter()
        .map(|(i, j)| gamma.gamma(i).matmul(gamma.gamma(j)).scale_real(2.0))
        .collect();
    let norms: Vec<f64> = basis.iter().map(|b| b.frobenius_sq()).collect();
    let mut table = HashMap::new();
    let mut projection_residual = 0.0f64;
    for p in 0..basis.len() {
        for q in (p + 1)..basis.len() {
            let c = basis[p].commutator(&basis[q]);
            let mut recon = ComplexMatrix::zeros(c.rows(), c.cols());
            let mut coeffs = Vec::new();
            for (r, b) in basis.iter().enumerate() {
                let f = b.adjoint_matmul(&c).trace() / norms[r];
                if f.norm() > 1e-12 {
                    coeffs.push((r, f.re));
                    recon.axpy(c64::new(f.re, 0.0), b);
                }
            }
            projection_residual = projection_residual.max(recon.distance(&c));
            table.insert((p, q), coeffs);
        }
    }
    Ok(StructureConstants { n, table, projection_residual })
}

/// Structure constants of `spin(n)`, computed once per `n`.
pub fn structure_constants(n: usize) -> Result<Arc<StructureConstants>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StructureConstants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("structure constant cache").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let sc = Arc::new(compute_structure_constants(n)?);
    if sc.projection_residual > 1e-10 {
        return Err(Error::Integrity(format!(
            "commutators of spin({n}) leave the span of the basis (residual {:.3e})",
            sc.projection_residual
        )));
    }
    cache.lock().expect("structure constant cache").insert(n, Arc::clone(&sc));
    Ok(sc)
}

/// Dimension up to which bracket closure is checked on the full matrices;
/// above it, on a fixed random probe block.
const EXACT_BRACKET_DIM: usize = 48;
const PROBE_COLUMNS: usize = 6;

/// Checks skew-Hermitian generators, bracket closure against the Clifford
/// model, the Casimir scalar, and the Weyl dimension.
pub fn validate_rep(rep: &Representation, tolerance: f64) -> Result<Report> {
    let n = rep.n();
    let d = rep.dim();
    let gens = rep.generators().as_slice();
    let mut report = Report::new(format!("validate_rep n={n} weight={}", rep.weight()));

    let skew = gens.iter().map(|g| g.skew_hermitian_residual()).fold(0.0, f64::max);
    report.push(Check::new("skew_hermitian", skew, frobenius_tolerance(tolerance, d, d)));

    let sc = structure_constants(n)?;
    let (probe, estimate_scale) = if d <= EXACT_BRACKET_DIM {
        (ComplexMatrix::identity(d), 1.0)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let v = ComplexMatrix::from_fn(d, PROBE_COLUMNS, |_, _| c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        // Entries have variance 2/3, so ‖E V‖² ≈ (2/3)·k·‖E‖_F².
        (v, (1.5 / PROBE_COLUMNS as f64).sqrt())
    };
    let images: Vec<ComplexMatrix> = gens.iter().map(|g| g.matmul(&probe)).collect();
    let gmax = gens.iter().map(|g| g.frobenius()).fold(0.0, f64::max);
    let mut bracket = 0.0f64;
    let mut worst = (0, 0);
    for p in 0..gens.len() {
        for q in (p + 1)..gens.len() {
            let mut e = &gens[p].matmul(&images[q]) - &gens[q].matmul(&images[p]);
            for &(r, f) in &sc.table[&(p, q)] {
                e.axpy(c64::new(-f, 0.0), &images[r]);
            }
            let res = e.frobenius() * estimate_scale;
            if res > bracket {
                bracket = res;
                worst = (p, q);
            }
        }
    }
    let ps = pairs(n);
    report.push(
        Check::new("bracket_closure", bracket, tolerance * (d as f64).max(gmax * gmax))
            .with("worst", format!("[{:?},{:?}]", ps[worst.0], ps[worst.1]))
            .with("method", if d <= EXACT_BRACKET_DIM { "exact" } else { "probe" }),
    );

    report.push(casimir_check(rep, tolerance));

    let weyl = weyl_dimension(rep.weight());
    report.push(Check::new("dimension", (d as f64 - weyl as f64).abs(), 0.5).with("weyl", weyl));
    Ok(report)
}

/// `‖C − c(ρ)·Id‖_F ≤ tolerance·dim`.
pub(crate) fn casimir_check(rep: &Representation, tolerance: f64) -> Check {
    let d = rep.dim();
    let c = rational_to_f64(&casimir_constant(rep.weight()));
    let res = rep.casimir().distance(&ComplexMatrix::scalar(d, c64::new(c, 0.0)));
    Check::new("casimir", res, tolerance * d as f64).with("c", c)
}

/// As [`validate_rep`], failing with the offending relations.
pub fn validate_rep_strict(rep: &Representation, tolerance: f64) -> Result<Report> {
    let report = validate_rep(rep, tolerance)?;
    if report.pass() {
        Ok(report)
    } else {
        let failed: Vec<String> = report
            .failures()
            .map(|c| format!("{} (residual {:.3e} > {:.3e})", c.identity, c.max_residual, c.tolerance))
            .collect();
        Err(Error::Validation(format!("{}: {}", rep.weight(), failed.join(", "))))
    }
}
