use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, I};
use crate::report::{Check, Report};
use crate::repforge::{gamma_matrices, standard_rep, ExteriorModel, StandardKind, MAX_TENSOR_DIM};
use crate::weightcalc::{format_rational, vandermonde_coefficients, DominantWeight, HalfInt, Rational};

use super::rq::rq_field;
use super::CliffordHomSet;

/// The closed-form examples checked by [`specialization_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecializationKind {
    /// Spinors of odd `n`.
    Spinor,
    /// `Λ^k(Rⁿ)`, `2k < n`.
    Exterior(usize),
    /// `Λ^{m−1}(R^{2m})`, whose middle component splits by the Hodge star.
    HodgeSplit,
}

impl fmt::Display for SpecializationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecializationKind::Spinor => write!(f, "spinor"),
            SpecializationKind::Exterior(k) => write!(f, "exterior({k})"),
            SpecializationKind::HodgeSplit => write!(f, "hodge_split"),
        }
    }
}

/// Runs the checks of `kind` on the standard matrix model for `n`.
pub fn specialization_suite(n: usize, kind: SpecializationKind, tolerance: f64) -> Result<Report> {
    match kind {
        SpecializationKind::Spinor => spinor_suite(n, tolerance),
        SpecializationKind::Exterior(k) => exterior_suite(n, k, tolerance),
        SpecializationKind::HodgeSplit => hodge_suite(n, tolerance),
    }
}

/// The specializations whose model representation is `V_weight`: spinors of
/// odd `n`, `Λ^k` with `2k < n`, and the Hodge split for `Λ^{m−1}(R^{2m})`.
pub fn specializations_for(weight: &DominantWeight) -> Vec<SpecializationKind> {
    let n = weight.n();
    let coords = weight.coords();
    let mut out = Vec::new();
    if n % 2 == 1 && coords.iter().all(|c| *c == HalfInt::HALF) {
        out.push(SpecializationKind::Spinor);
    }
    let k = coords.iter().take_while(|c| **c == HalfInt::ONE).count();
    if k >= 1 && coords[k..].iter().all(|c| *c == HalfInt::ZERO) && 2 * k < n {
        out.push(SpecializationKind::Exterior(k));
        if n % 2 == 0 && k == n / 2 - 1 {
            out.push(SpecializationKind::HodgeSplit);
        }
    }
    out
}

fn model_set(n: usize, kind: StandardKind, tolerance: f64) -> Result<CliffordHomSet> {
    CliffordHomSet::from_rep(Arc::new(standard_rep(n, kind)?), MAX_TENSOR_DIM, tolerance)
}

/// Gram bilinears `P(j, i) = Σ_{k∈group} p_k(e_j)† p_k(e_i)` as a dense block
/// operator, block `(j, i)`.
fn group_gram(set: &CliffordHomSet, members: &[usize]) -> ComplexMatrix {
    let weights: Vec<c64> = (0..set.components().len())
        .map(|k| if members.contains(&k) { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) })
        .collect();
    set.weighted_gram_operator(&weights)
}

fn blk(m: &ComplexMatrix, d: usize, i: usize, j: usize) -> ComplexMatrix {
    m.block(i * d, j * d, d, d)
}

fn max_over_pairs(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max(f(i, j));
        }
    }
    worst
}

fn spinor_suite(n: usize, tolerance: f64) -> Result<Report> {
    if n % 2 == 0 {
        return Err(Error::Domain(format!("the spinor specialization needs odd n, got {n}")));
    }
    let set = model_set(n, StandardKind::Spinor, tolerance)?;
    let d = set.rho_dim();
    let nf = n as f64;
    let tol = tolerance * d as f64;
    let delta_w = DominantWeight::spinor(n)?;
    let delta = set.find(&delta_w).ok_or_else(|| Error::Integrity("no V_Δ component".into()))?;
    let top = 1 - delta;
    let p_t = group_gram(&set, &[top]);
    let p_d = group_gram(&set, &[delta]);
    let gamma = gamma_matrices(n)?;
    let rho = set.rho();
    let id = ComplexMatrix::identity(d);
    let zero = ComplexMatrix::zeros(d, d);
    let delta_ij = |i: usize, j: usize| if i == j { id.clone() } else { zero.clone() };
    let mut report = Report::new(format!("specialization spinor n={n}"));

    let r = max_over_pairs(n, |i, j| (&blk(&p_t, d, i, j) + &blk(&p_d, d, i, j)).distance(&delta_ij(i, j)));
    report.push(Check::new("spinor_completeness", r, tol).with("n", n));

    let r = max_over_pairs(n, |i, j| {
        let lhs = &blk(&p_t, d, i, j).scale_real(-0.5) + &blk(&p_d, d, i, j).scale_real((nf - 1.0) / 2.0);
        lhs.distance(&rho.bracket(i, j).scale_real(-0.25))
    });
    report.push(Check::new("spinor_first_moment", r, tol).with("n", n));

    // Clifford relation p(u)†p(v) + p(v)†p(u) = c⟨u,v⟩ with c fitted.
    let sym = |i: usize, j: usize| &blk(&p_d, d, i, j) + &blk(&p_d, d, j, i);
    let c_fit = (0..n).map(|i| sym(i, i).trace().re).sum::<f64>() / (nf * d as f64);
    let r = max_over_pairs(n, |i, j| sym(i, j).distance(&delta_ij(i, j).scale_real(c_fit)));
    report.push(Check::new("clifford_relation", r, tol).with("n", n));
    report.push(
        Check::new("clifford_constant", (c_fit - 2.0 / nf).abs(), 1e-10)
            .with("n", n)
            .with("fitted", format!("{c_fit:.17e}"))
            .with("expected", format!("2/{n}")),
    );

    // p_Δ(u) = W·(u·)/√n for one unitary W; the Gram bilinear is W-free.
    let r = max_over_pairs(n, |i, j| {
        blk(&p_d, d, i, j).distance(&gamma.gamma(i).matmul(gamma.gamma(j)).scale_real(-1.0 / nf))
    });
    report.push(Check::new("clifford_gram", r, tol).with("n", n));
    let hom = set.component(delta);
    let w = hom.at(0).matmul(gamma.gamma(0)).scale_real(-nf.sqrt());
    report.push(Check::new("clifford_intertwiner_unitary", w.isometry_residual(), tol).with("n", n));
    let r = (0..n)
        .map(|i| hom.at(i).distance(&w.matmul(gamma.gamma(i)).scale_real(1.0 / nf.sqrt())))
        .fold(0.0, f64::max);
    report.push(Check::new("clifford_action", r, tol).with("n", n));

    // Projector blocks a·δ_ij + b·π([e_i,e_j]).
    let coeffs = vandermonde_coefficients(set.table())?;
    for (k, name, a_exact, b_exact) in [
        (delta, "delta", Rational::new(1, n as i64), Rational::new(-1, 2 * n as i64)),
        (top, "top", Rational::new(n as i64 - 1, n as i64), Rational::new(1, 2 * n as i64)),
    ] {
        let g = set.table().distinct_weights().iter().position(|m| *m == set.component(k).descriptor.conformal_weight).expect("group");
        let row = &coeffs.matrix[g];
        let exact_a = row[0];
        let exact_b = -row[1] / Rational::from_integer(4);
        report.push(
            Check::new("projector_coefficients_exact", if exact_a == a_exact && exact_b == b_exact { 0.0 } else { 1.0 }, 0.0)
                .with("component", name)
                .with("delta_coefficient", format_rational(&exact_a))
                .with("bracket_coefficient", format_rational(&exact_b)),
        );
        let p = if k == delta { &p_d } else { &p_t };
        let a_fit = (0..n).map(|i| blk(p, d, i, i).trace().re).sum::<f64>() / (nf * d as f64);
        let mut num = c64::new(0.0, 0.0);
        let mut den = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let br = rho.bracket(i, j);
                    num += br.adjoint_matmul(&blk(p, d, i, j)).trace();
                    den += br.frobenius_sq();
                }
            }
        }
        let b_fit = num.re / den;
        let a_ref = crate::weightcalc::rational_to_f64(&a_exact);
        let b_ref = crate::weightcalc::rational_to_f64(&b_exact);
        report.push(
            Check::new("projector_coefficients_fit", (a_fit - a_ref).abs().max((b_fit - b_ref).abs()), 1e-10)
                .with("component", name)
                .with("delta_fit", format!("{a_fit:.17e}"))
                .with("bracket_fit", format!("{b_fit:.17e}")),
        );
        let r = max_over_pairs(n, |i, j| {
            let model = &delta_ij(i, j).scale_real(a_ref) + &rho.bracket(i, j).scale_real(b_ref);
            blk(p, d, i, j).distance(&model)
        });
        report.push(Check::new("projector_closed_form", r, tol).with("component", name));
    }
    // Π_T = Id + (1/n) Σ e_i·u· ⊗ e_i.
    let r = max_over_pairs(n, |i, j| {
        let model = &delta_ij(i, j) + &gamma.gamma(i).matmul(gamma.gamma(j)).scale_real(1.0 / nf);
        blk(&p_t, d, i, j).distance(&model)
    });
    report.push(Check::new("twistor_projector", r, tol).with("n", n));
    Ok(report)
}

/// Conformal weight groups of `Λ^k ⊗ Rⁿ`: `λ₀ = (2,1_{k−1})` at `−1`,
/// `λ₁ = (1_{k+1})` at `k` (the exceptional pair when `n = 2k+2`), and
/// `λ₂ = (1_{k−1})` at `n−k`.
struct FormGroups {
    top: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
}

fn form_groups(set: &CliffordHomSet, n: usize, k: usize) -> Result<FormGroups> {
    let pick = |m: i64| -> Vec<usize> {
        set.components()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.descriptor.conformal_weight == Rational::from_integer(m))
            .map(|(i, _)| i)
            .collect()
    };
    let groups = FormGroups { top: pick(-1), up: pick(k as i64), down: pick((n - k) as i64) };
    if groups.top.len() != 1 || groups.up.is_empty() || groups.down.len() != 1 {
        return Err(Error::Integrity(format!("unexpected decomposition of Λ^{k}(R^{n}) ⊗ R^{n}")));
    }
    Ok(groups)
}

fn exterior_suite(n: usize, k: usize, tolerance: f64) -> Result<Report> {
    if k == 0 || 2 * k >= n {
        return Err(Error::Domain(format!("the exterior specialization needs 1 ≤ k < n/2, got k = {k}, n = {n}")));
    }
    let set = model_set(n, StandardKind::Exterior(k), tolerance)?;
    let model = ExteriorModel::new(n);
    let d = set.rho_dim();
    let tol = tolerance * d as f64;
    let (nf, kf) = (n as f64, k as f64);
    let (ni, ki) = (n as i64, k as i64);
    let groups = form_groups(&set, n, k)?;
    let p0 = group_gram(&set, &groups.top);
    let p1 = group_gram(&set, &groups.up);
    let p2 = group_gram(&set, &groups.down);
    let r1 = rq_field(set.rho(), 1);
    let r2 = rq_field(set.rho(), 2);
    let id = ComplexMatrix::identity(d);
    let zero = ComplexMatrix::zeros(d, d);
    let delta_ij = |i: usize, j: usize| if i == j { id.clone() } else { zero.clone() };
    let wedge: Vec<ComplexMatrix> = (0..n).map(|i| model.wedge(i, k)).collect();
    let interior: Vec<ComplexMatrix> = (0..n).map(|i| model.interior(i, k)).collect();
    let mut report = Report::new(format!("specialization exterior n={n} k={k}"));

    // Printed rows (δ, r¹, r²) and their denominators.
    let printed: [(&str, &ComplexMatrix, [i64; 3], i64); 3] = [
        ("lambda0", &p0, [ki * (ni - ki), -ni, 1], (ki + 1) * (ni - ki + 1)),
        ("lambda1", &p1, [ni - ki, ni - ki - 1, -1], (ki + 1) * (ni - 2 * ki)),
        ("lambda2", &p2, [-ki, -(ki - 1), 1], (ni - 2 * ki) * (ni - ki + 1)),
    ];
    let coeffs = vandermonde_coefficients(set.table())?;
    let weights = set.table().distinct_weights();
    for ((name, p, num, den), m) in printed.iter().zip([-1, ki, ni - ki]) {
        let row = weights.iter().position(|w| *w == Rational::from_integer(m)).map(|g| &coeffs.matrix[g]);
        let expected: Vec<Rational> = num.iter().map(|&x| Rational::new(x, *den)).collect();
        let exact = row.is_some_and(|r| r.as_slice() == expected.as_slice());
        report.push(
            Check::new("form_coefficients_exact", if exact { 0.0 } else { 1.0 }, 0.0)
                .with("component", name)
                .with("denominator", den)
                .with(
                    "derived",
                    row.map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(",")).unwrap_or_default(),
                ),
        );
        let c: Vec<f64> = num.iter().map(|&x| x as f64 / *den as f64).collect();
        let r = max_over_pairs(n, |j, i| {
            let mut model = delta_ij(j, i).scale_real(c[0]);
            model.axpy(c64::new(c[1], 0.0), &r1.block(j, i));
            model.axpy(c64::new(c[2], 0.0), &r2.block(j, i));
            blk(p, d, j, i).distance(&model)
        });
        report.push(Check::new("form_gram_bilinear", r, tol).with("component", name));
    }

    // Normalizations p_{λ₁}(e_i) ≙ e_i∧/√(k+1), p_{λ₂}(e_i) ≙ i(e_i)/√(n−k+1).
    let r = max_over_pairs(n, |j, i| {
        blk(&p1, d, j, i).distance(&wedge[j].adjoint_matmul(&wedge[i]).scale_real(1.0 / (kf + 1.0)))
    });
    report.push(Check::new("wedge_normalization", r, tol));
    let r = max_over_pairs(n, |j, i| {
        blk(&p2, d, j, i).distance(&interior[j].adjoint_matmul(&interior[i]).scale_real(1.0 / (nf - kf + 1.0)))
    });
    report.push(Check::new("interior_normalization", r, tol));
    if let [up] = groups.up.as_slice() {
        let hom = set.component(*up);
        let mut w = ComplexMatrix::zeros(hom.dim(), model.dim(k + 1));
        for i in 0..n {
            w = &w + &hom.at(i).matmul(&model.interior(i, k + 1));
        }
        let w = w.scale_real(1.0 / (kf + 1.0).sqrt());
        let r = (0..n).map(|i| hom.at(i).distance(&w.matmul(&wedge[i]).scale_real(1.0 / (kf + 1.0).sqrt()))).fold(0.0, f64::max);
        report.push(Check::new("wedge_intertwiner_unitary", w.isometry_residual(), tol));
        report.push(Check::new("wedge_action", r, tol));
    }
    {
        let hom = set.component(groups.down[0]);
        let mut w = ComplexMatrix::zeros(hom.dim(), model.dim(k - 1));
        for i in 0..n {
            w = &w + &hom.at(i).matmul(&model.wedge(i, k - 1));
        }
        let w = w.scale_real(1.0 / (nf - kf + 1.0).sqrt());
        let r = (0..n)
            .map(|i| hom.at(i).distance(&w.matmul(&interior[i]).scale_real(1.0 / (nf - kf + 1.0).sqrt())))
            .fold(0.0, f64::max);
        report.push(Check::new("interior_intertwiner_unitary", w.isometry_residual(), tol));
        report.push(Check::new("interior_action", r, tol));
    }

    // (k+1) P₁(j,i) + (n−k+1) P₂(i,j) = δ_ij.
    let r = max_over_pairs(n, |j, i| {
        (&blk(&p1, d, j, i).scale_real(kf + 1.0) + &blk(&p2, d, i, j).scale_real(nf - kf + 1.0)).distance(&delta_ij(i, j))
    });
    report.push(Check::new("form_completeness", r, tol));
    // Both antisymmetrizations equal r¹(e_j, e_i).
    let r = max_over_pairs(n, |j, i| {
        (&blk(&p1, d, j, i) - &blk(&p1, d, i, j)).scale_real(kf + 1.0).distance(&r1.block(j, i))
    });
    report.push(Check::new("form_antisymmetric_up", r, tol));
    let r = max_over_pairs(n, |j, i| {
        (&blk(&p2, d, j, i) - &blk(&p2, d, i, j)).scale_real(nf - kf + 1.0).distance(&r1.block(j, i))
    });
    report.push(Check::new("form_antisymmetric_down", r, tol));
    let r = max_over_pairs(n, |j, i| r1.block(j, i).distance(&set.rho().bracket(j, i).scale_real(-0.25)));
    report.push(Check::new("form_first_field", r, tol));

    // i(e_j) e_i∧ + e_i∧ i(e_j) = δ_ij on Λ^k, and the variant with e_j∧ i(e_i).
    let up_down = |j: usize, i: usize| model.interior(j, k + 1).matmul(&wedge[i]);
    let r = max_over_pairs(n, |j, i| (&up_down(j, i) + &model.wedge(i, k - 1).matmul(&interior[j])).distance(&delta_ij(i, j)));
    report.push(Check::new("interior_wedge_anticommutator", r, tol));
    let printed_variant =
        max_over_pairs(n, |j, i| (&up_down(j, i) + &model.wedge(j, k - 1).matmul(&interior[i])).distance(&delta_ij(i, j)));
    report.push(Check::info("interior_wedge_printed_variant", printed_variant));

    // Projectors by the wedge/interior formulas against the Gram forms.
    let dim = set.tensor_dim();
    let mut pi1 = ComplexMatrix::zeros(dim, dim);
    let mut pi2 = ComplexMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            pi1.set_block(i * d, j * d, &model.interior(i, k + 1).matmul(&wedge[j]).scale_real(1.0 / (kf + 1.0)));
            pi2.set_block(i * d, j * d, &model.wedge(i, k - 1).matmul(&interior[j]).scale_real(1.0 / (nf - kf + 1.0)));
        }
    }
    let pi0 = &(&ComplexMatrix::identity(dim) - &pi1) - &pi2;
    let dtol = tolerance * dim as f64;
    for (name, formula, gram, members) in
        [("lambda0", &pi0, &p0, &groups.top), ("lambda1", &pi1, &p1, &groups.up), ("lambda2", &pi2, &p2, &groups.down)]
    {
        let rank: u64 = members.iter().map(|&c| set.table().components[c].dimension).sum();
        report.push(Check::new("form_projector", formula.distance(gram), dtol).with("component", name));
        report.push(
            Check::new("form_projector_rank", (formula.trace().re - rank as f64).abs(), dtol)
                .with("component", name)
                .with("rank", rank),
        );
    }
    Ok(report)
}

fn hodge_suite(n: usize, tolerance: f64) -> Result<Report> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::Domain(format!("the Hodge split needs even n ≥ 4, got {n}")));
    }
    let m = n / 2;
    let k = m - 1;
    let set = model_set(n, StandardKind::Exterior(k), tolerance)?;
    let model = ExteriorModel::new(n);
    let d = set.rho_dim();
    let dim = set.tensor_dim();
    let (a, b) = set
        .table()
        .exceptional_pair()
        .ok_or_else(|| Error::Integrity(format!("Λ^{k}(R^{n}) ⊗ R^{n} has no exceptional pair")))?;
    let star = model.hodge(m);
    let square = star.matmul(&star);
    let dm = model.dim(m);
    // (1 ± c∗)/2 is a projector when (c∗)² = 1.
    let c = if square.distance(&ComplexMatrix::identity(dm)) < 1e-12 { c64::new(1.0, 0.0) } else { I };
    let mut report = Report::new(format!("specialization hodge_split n={n}"));
    report.push(Check::info("hodge_square", square.get(0, 0).re).with("factor", if c == I { "i" } else { "1" }));

    let grams = [group_gram(&set, &[a]), group_gram(&set, &[b])];
    let dtol = tolerance * dim as f64;
    for sign in [1.0, -1.0] {
        let mut h = ComplexMatrix::identity(dm);
        h.axpy(c * sign, &star);
        let h = h.scale_real(0.5);
        let mut pi = ComplexMatrix::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                let blk = model.interior(i, m).matmul(&h).matmul(&model.wedge(j, k)).scale_real(1.0 / m as f64);
                pi.set_block(i * d, j * d, &blk);
            }
        }
        let distances = [pi.distance(&grams[0]), pi.distance(&grams[1])];
        let which = if distances[0] <= distances[1] { 0 } else { 1 };
        let comp = if which == 0 { a } else { b };
        let label = if sign > 0.0 { "plus" } else { "minus" };
        report.push(
            Check::new("hodge_projector", distances[which], dtol)
                .with("sign", label)
                .with("weight", &set.component(comp).descriptor.weight),
        );
        let rank = set.table().components[comp].dimension;
        report.push(
            Check::new("hodge_projector_rank", (pi.trace().re - rank as f64).abs(), dtol)
                .with("sign", label)
                .with("rank", rank),
        );
        report.push(Check::new("hodge_projector_idempotent", pi.matmul(&pi).distance(&pi), dtol).with("sign", label));
    }
    Ok(report)
}
