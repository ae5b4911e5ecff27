//! One sweep over the components computing `r¹`-powers of each basis block.
//!
//! With `U = [B_0 | … | B_N]` the stacked component bases and
//! `G = U†U`, every identity `E = 0` between operators on `V_ρ ⊗ Rⁿ` is
//! measured through `E·U`, whose column block `j` only needs `E·B_j`. Since
//! `σ_min(U)² ≥ 1 − ‖G − Id‖`, the bound `‖E‖_F ≤ ‖E·U‖_F / √(1 − ‖G − Id‖)`
//! turns those measurements into residuals of `E` itself.

use crate::linalg::{c64, ComplexMatrix};
use crate::weightcalc::{rational_to_f64, VandermondeCoefficients};

use super::rq::r1_matrix;
use super::CliffordHomSet;

pub(crate) struct PassOutcome {
    /// `‖U†U − Id‖_F`.
    pub gram_deviation: f64,
    /// `max |m_k|`.
    pub max_weight: f64,
    /// `√Σ_j ‖r¹^q B_j − m_j^q B_j‖²` for `q = 0..=q_max`.
    pub frame_moments: Vec<f64>,
    /// Upper bounds on `‖r^q − Σ_k m_k^q Π_k‖_F`.
    pub moment_bounds: Vec<f64>,
    pub projectors: Option<ProjectorOutcome>,
    /// `‖r¹ − r¹†‖_F`.
    pub r1_hermitian: f64,
}

pub(crate) struct ProjectorOutcome {
    pub groups: Vec<Vec<usize>>,
    /// Bounds on the pairwise distances of the three constructions, per group.
    pub vandermonde_gram: Vec<f64>,
    pub spectral_gram: Vec<f64>,
    pub vandermonde_spectral: Vec<f64>,
    /// Traces of the Gram and Vandermonde projectors, per group.
    pub gram_trace: Vec<f64>,
    pub vandermonde_trace: Vec<f64>,
    /// Bounds on `‖Π_g² − Π_g‖_F` and `max_{g≠h} ‖Π_g Π_h‖_F`.
    pub idempotent: f64,
    pub orthogonal: f64,
    /// `‖Σ_g Π_g − Id‖_F`.
    pub complete: f64,
}

fn frame_factor(g: f64) -> f64 {
    if g < 1.0 {
        1.0 / (1.0 - g).sqrt()
    } else {
        f64::INFINITY
    }
}

pub(crate) fn run(set: &CliffordHomSet, q_max: usize, coeffs: Option<&VandermondeCoefficients>) -> PassOutcome {
    let comps = set.components();
    let dim = set.tensor_dim();
    let offsets: Vec<usize> = comps
        .iter()
        .scan(0, |acc, c| {
            let at = *acc;
            *acc += c.dim();
            Some(at)
        })
        .collect();
    let u = set.stacked_basis();
    let gram = u.adjoint_matmul(&u);
    drop(u);
    let gram_deviation = gram.distance(&ComplexMatrix::identity(dim));
    let factor = frame_factor(gram_deviation);
    let weights: Vec<f64> = comps.iter().map(|c| c.conformal_weight()).collect();
    let max_weight = weights.iter().fold(0.0f64, |a, w| a.max(w.abs()));

    let r1 = r1_matrix(set.rho());
    let r1_hermitian = r1.hermitian_residual();

    let groups = set.table().merged_groups();
    let coeff_rows: Option<Vec<Vec<f64>>> =
        coeffs.map(|c| c.matrix.iter().map(|row| row.iter().map(rational_to_f64).collect()).collect());
    // Spectral basis per group: the Ĉ eigenspace itself for the merged pair,
    // the component basis otherwise.
    let spectral_basis = |gi: usize| -> Option<&ComplexMatrix> {
        if groups[gi].len() > 1 {
            set.pair_span()
        } else {
            None
        }
    };

    let mut moment_sq = vec![0.0; q_max + 1];
    let ngroups = groups.len();
    let mut vg_sq = vec![0.0; ngroups];
    let mut sg_sq = vec![0.0; ngroups];
    let mut vs_sq = vec![0.0; ngroups];
    let mut v_trace = vec![0.0; ngroups];

    for (j, c) in comps.iter().enumerate() {
        let b = c.basis();
        let mj = weights[j];
        let mut y = b.clone();
        let mut z: Vec<ComplexMatrix> = match &coeff_rows {
            Some(_) => (0..ngroups).map(|_| ComplexMatrix::zeros(dim, c.dim())).collect(),
            None => Vec::new(),
        };
        for q in 0..=q_max {
            if q > 0 {
                y = r1.matmul(&y);
            }
            let mut diff = y.clone();
            diff.axpy(c64::new(-mj.powi(q as i32), 0.0), b);
            moment_sq[q] += diff.frobenius_sq();
            if let Some(rows) = &coeff_rows {
                for (gi, zg) in z.iter_mut().enumerate() {
                    if let Some(&coef) = rows[gi].get(q) {
                        if coef != 0.0 {
                            zg.axpy(c64::new(coef, 0.0), &y);
                        }
                    }
                }
            }
        }
        // The Vandermonde rows only reach q = N; finish the powers if q_max
        // stopped short.
        if let Some(rows) = &coeff_rows {
            let top = rows.first().map_or(0, |r| r.len());
            for q in (q_max + 1)..top {
                y = r1.matmul(&y);
                for (gi, zg) in z.iter_mut().enumerate() {
                    let coef = rows[gi][q];
                    if coef != 0.0 {
                        zg.axpy(c64::new(coef, 0.0), &y);
                    }
                }
            }
            for (gi, zg) in z.iter().enumerate() {
                let mut wg = ComplexMatrix::zeros(dim, c.dim());
                for &k in &groups[gi] {
                    let gkj = gram.block(offsets[k], offsets[j], comps[k].dim(), c.dim());
                    wg = &wg + &comps[k].basis().matmul(&gkj);
                }
                let ws = match spectral_basis(gi) {
                    Some(v) => v.matmul(&v.adjoint_matmul(b)),
                    None => wg.clone(),
                };
                vg_sq[gi] += zg.distance(&wg).powi(2);
                sg_sq[gi] += ws.distance(&wg).powi(2);
                vs_sq[gi] += zg.distance(&ws).powi(2);
                v_trace[gi] += b.adjoint_matmul(zg).trace().re;
            }
        }
    }

    let norm_u = (1.0 + gram_deviation).sqrt();
    let frame_moments: Vec<f64> = moment_sq.iter().map(|s| s.sqrt()).collect();
    let moment_bounds = frame_moments
        .iter()
        .enumerate()
        .map(|(q, a)| (a + norm_u * max_weight.powi(q as i32) * gram_deviation) * factor)
        .collect();

    let projectors = coeff_rows.map(|_| {
        let mut idempotent = 0.0f64;
        let mut orthogonal = 0.0f64;
        let mut gram_trace = vec![0.0; ngroups];
        for (gi, members) in groups.iter().enumerate() {
            for &k in members {
                gram_trace[gi] += gram.block(offsets[k], offsets[k], comps[k].dim(), comps[k].dim()).trace().re;
            }
            for (hi, others) in groups.iter().enumerate() {
                let mut sq = 0.0;
                for &k in members {
                    for &l in others {
                        let mut blk = gram.block(offsets[k], offsets[l], comps[k].dim(), comps[l].dim());
                        if k == l {
                            blk = &blk - &ComplexMatrix::identity(comps[k].dim());
                        }
                        sq += blk.frobenius_sq();
                    }
                }
                // Π_g Π_h − δ_gh Π_g = B_g (G_gh − δ_gh) B_h†.
                let bound = (1.0 + gram_deviation) * sq.sqrt();
                if gi == hi {
                    idempotent = idempotent.max(bound);
                } else {
                    orthogonal = orthogonal.max(bound);
                }
            }
        }
        ProjectorOutcome {
            groups: groups.clone(),
            vandermonde_gram: vg_sq.iter().map(|s| s.sqrt() * factor).collect(),
            spectral_gram: sg_sq.iter().map(|s| s.sqrt() * factor).collect(),
            vandermonde_spectral: vs_sq.iter().map(|s| s.sqrt() * factor).collect(),
            gram_trace,
            vandermonde_trace: v_trace,
            idempotent,
            orthogonal,
            // U U† − Id and U†U − Id share their singular values.
            complete: gram_deviation,
        }
    });

    PassOutcome { gram_deviation, max_weight, frame_moments, moment_bounds, projectors, r1_hermitian }
}
