use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::weightcalc::{
    casimir_constant, decompose, format_rational, rational_str, rational_vec_str, vandermonde_coefficients, DecompositionTable,
    DominantWeight, HalfInt, Rational, weyl_dimension,
};

/// Coefficients of the Bochner identities on the bundle of `V_ρ`.
///
/// Everything is indexed by the groups of equal conformal weight (the
/// exceptional pair is one group), ascending, so group 0 is the top term
/// with `m₀ = −ρ¹`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BochnerCoefficients {
    pub table: DecompositionTable,
    pub groups: Vec<Vec<usize>>,
    /// `Σ_k D_k* D_k = ∇*∇`.
    #[serde(serialize_with = "rational_vec_str::serialize")]
    pub laplacian_row: Vec<Rational>,
    /// `Σ_k m_k D_k* D_k = R¹`.
    #[serde(serialize_with = "rational_vec_str::serialize")]
    pub weighted_row: Vec<Rational>,
    /// `1 − m_k/m₀` for `k ≥ 1`.
    #[serde(serialize_with = "rational_vec_str::serialize")]
    pub hatted: Vec<Rational>,
    /// Row `k`: `D_k* D_k = Σ_q n_{kq} R^q`.
    #[serde(serialize_with = "rational_vec_str::serialize_rows")]
    pub explicit_rows: Vec<Vec<Rational>>,
    /// `Δ_ρ = ∇*∇ + curvature_coefficient · R¹`.
    #[serde(with = "rational_str")]
    pub curvature_coefficient: Rational,
    /// `R¹_ρ / κ` at constant curvature, `−2c(ρ)/(n(n−1))`.
    #[serde(with = "rational_str")]
    pub constant_curvature_ratio: Rational,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn pow(base: Rational, exp: usize) -> Rational {
    (0..exp).fold(int(1), |acc, _| acc * base)
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return int(0);
    }
    (0..k).fold(int(1), |acc, i| acc * int(n - i) / int(i + 1))
}

/// Coefficient rows for `ρ`; needs at least two conformal weights.
pub fn bochner_report(rho: &DominantWeight) -> Result<BochnerCoefficients> {
    let table = decompose(rho);
    let weights = table.distinct_weights();
    if weights.len() < 2 {
        return Err(Error::NoBound(format!("V_{rho} ⊗ R^{} has a single component", rho.n())));
    }
    let coeffs = vandermonde_coefficients(&table)?;
    let m0 = weights[0];
    let n = rho.n() as i64;
    Ok(BochnerCoefficients {
        groups: table.merged_groups(),
        laplacian_row: vec![int(1); weights.len()],
        weighted_row: weights.clone(),
        hatted: weights[1..].iter().map(|&m| int(1) - m / m0).collect(),
        explicit_rows: coeffs.matrix,
        curvature_coefficient: -int(1) / m0,
        constant_curvature_ratio: int(-2) * casimir_constant(rho) / int(n * (n - 1)),
        table,
    })
}

impl BochnerCoefficients {
    pub fn rho(&self) -> &DominantWeight {
        &self.table.rho
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weighted_row
    }

    /// `dim V_λ` summed over a group.
    pub fn group_dimension(&self, g: usize) -> u64 {
        self.groups[g].iter().map(|&k| self.table.components[k].dimension).sum()
    }

    /// `Σ_k n_{kq} m_k^j`: row `q`, column `j`. Equals the identity exactly.
    pub fn moment_transfer(&self) -> Vec<Vec<Rational>> {
        let size = self.weighted_row.len();
        (0..size)
            .map(|q| (0..size).map(|j| (0..size).map(|k| self.explicit_rows[k][q] * pow(self.weighted_row[k], j)).sum()).collect())
            .collect()
    }

    /// Exact checks of the general identities plus every classical
    /// specialization that applies to `ρ`.
    pub fn checks(&self) -> Report {
        let mut report = Report::new("bochner");
        let w = self.rho().to_string();
        let exact = |identity: &str, got: Rational, want: Rational| {
            Check::new(identity, if got == want { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("derived", format_rational(&got))
                .with("expected", format_rational(&want))
        };

        let size = self.weighted_row.len();
        let transfer = self.moment_transfer();
        let identity = (0..size).all(|q| (0..size).all(|j| transfer[q][j] == int(i64::from(q == j))));
        report.push(Check::new("explicit_rows_invert", if identity { 0.0 } else { 1.0 }, 0.0).with("weight", &w));
        // Summing the explicit rows against 1 and m_k gives back ∇*∇ and R¹.
        let sum_rows: Vec<Rational> = (0..size).map(|q| (0..size).map(|k| self.explicit_rows[k][q]).sum()).collect();
        let lap_ok = sum_rows.iter().enumerate().all(|(q, v)| *v == int(i64::from(q == 0)));
        report.push(Check::new("laplacian_row", if lap_ok { 0.0 } else { 1.0 }, 0.0).with("weight", &w));
        let weighted: Vec<Rational> =
            (0..size).map(|q| (0..size).map(|k| self.weighted_row[k] * self.explicit_rows[k][q]).sum()).collect();
        let r1_ok = weighted.iter().enumerate().all(|(q, v)| *v == int(i64::from(q == 1)));
        report.push(Check::new("weighted_row", if r1_ok { 0.0 } else { 1.0 }, 0.0).with("weight", &w));
        let positive = self.hatted.iter().filter(|h| **h <= int(0)).count();
        report.push(Check::new("hatted_positive", positive as f64, 0.0).with("weight", &w));
        let rho1 = self.rho().coords()[0].to_rational();
        report.push(exact("top_weight", self.weighted_row[0], -rho1));
        report.push(exact("laplace_curvature_coefficient", self.curvature_coefficient, int(1) / rho1));

        if let Some(checks) = self.spinor_checks() {
            checks.into_iter().for_each(|c| report.push(c));
        }
        if let Some(checks) = self.form_checks() {
            checks.into_iter().for_each(|c| report.push(c));
        }
        if let Some(checks) = self.self_dual_checks() {
            checks.into_iter().for_each(|c| report.push(c));
        }
        report
    }

    /// `dim V_λ / (n dim V_ρ)`: the scalar `p(e)† p(e)` when it is one.
    fn clifford_scale(&self, g: usize) -> Rational {
        let n = self.rho().n() as i64;
        let d = weyl_dimension(&self.table.rho);
        int(self.group_dimension(g) as i64) / int(n * d as i64)
    }

    fn spinor_checks(&self) -> Option<Vec<Check>> {
        let rho = self.rho();
        if !rho.coords().iter().all(|c| c.abs() == HalfInt::HALF) {
            return None;
        }
        let n = rho.n() as i64;
        let w = rho.to_string();
        // Groups: twistor (m = −1/2) and Dirac ((n−1)/2).
        let (t, d) = (0, 1);
        let kappa = self.constant_curvature_ratio;
        let row = |g: usize| &self.explicit_rows[g];
        // D² = (1/s_D) D_Δ* D_Δ and T*T = (1/s_T) D_T* D_T.
        let s_d = self.clifford_scale(d);
        let s_t = self.clifford_scale(t);
        let lich = (row(d)[0] / s_d, row(d)[1] / s_d * kappa);
        let twist = (row(t)[0] / s_t, row(t)[1] / s_t * kappa);
        let mk = |id: &str, got: Rational, want: Rational| {
            Check::new(id, if got == want { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("derived", format_rational(&got))
                .with("expected", format_rational(&want))
        };
        Some(vec![
            mk("spinor_curvature_ratio", kappa, Rational::new(1, 8)),
            mk("dirac_normalization", s_d, Rational::new(1, n)),
            mk("lichnerowicz_laplacian", lich.0, int(1)),
            mk("lichnerowicz_scalar", lich.1, Rational::new(1, 4)),
            mk("twistor_laplacian", twist.0, int(1)),
            mk("twistor_scalar", twist.1, Rational::new(-1, 4 * (n - 1))),
            mk("dirac_minus_twistor", lich.1 - twist.1, Rational::new(n, 4 * (n - 1))),
        ])
    }

    /// `Λ^k`, `2k < n`: `C = D₀`, `d = √(k+1) D₁`, `d* = −√(n−k+1) D₂`.
    fn form_checks(&self) -> Option<Vec<Check>> {
        let rho = self.rho();
        let n = rho.n() as i64;
        let coords = rho.coords();
        let k = coords.iter().take_while(|c| **c == HalfInt::ONE).count();
        if k == 0 || coords[k..].iter().any(|c| *c != HalfInt::ZERO) || 2 * k as i64 >= n {
            return None;
        }
        let k = k as i64;
        let w = rho.to_string();
        // p₁(e)†p₁(e) = s₁ i(e) e∧ and p₂(e)†p₂(e) = s₂ e∧ i(e); traces fix s.
        let s1 = int(self.group_dimension(1) as i64) / (int(n) * binomial(n - 1, k));
        let s2 = int(self.group_dimension(2) as i64) / (int(n) * binomial(n - 1, k - 1));
        let mut out = vec![
            Check::new("form_wedge_scale", if s1 == Rational::new(1, k + 1) { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("derived", format_rational(&s1)),
            Check::new("form_interior_scale", if s2 == Rational::new(1, n - k + 1) { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("derived", format_rational(&s2)),
        ];
        // Coefficients of C*C, d*d, dd* in the R^q identity: m_g^q s_g.
        let printed: [[Rational; 3]; 3] = [
            [int(1), Rational::new(1, k + 1), Rational::new(1, n - k + 1)],
            [int(-1), Rational::new(k, k + 1), Rational::new(n - k, n - k + 1)],
            [int(1), Rational::new(k * k, k + 1), Rational::new((n - k) * (n - k), n - k + 1)],
        ];
        let scales = [int(1), s1, s2];
        for (q, row) in printed.iter().enumerate() {
            let derived: Vec<Rational> = (0..3).map(|g| pow(self.weighted_row[g], q) * scales[g]).collect();
            let ok = derived.iter().zip(row).all(|(a, b)| a == b);
            out.push(
                Check::new("form_bochner_row", if ok { 0.0 } else { 1.0 }, 0.0)
                    .with("weight", &w)
                    .with("q", q)
                    .with("derived", derived.iter().map(format_rational).collect::<Vec<_>>().join(",")),
            );
        }
        out.push(
            Check::new(
                "form_curvature_ratio",
                if self.constant_curvature_ratio * int(n * (n - 1)) == int(k * (n - k)) { 0.0 } else { 1.0 },
                0.0,
            )
            .with("weight", &w)
            .with("derived", format_rational(&self.constant_curvature_ratio)),
        );
        Some(out)
    }

    /// `n = 4`, `ρ = (k, k)`: weights `−k`, `k+1`; `R¹/κ = k(k+1)/6` at
    /// constant curvature; `((2k+1)/k) D₁* D₁ = ∇*∇ + ((k+1)/6) κ`.
    fn self_dual_checks(&self) -> Option<Vec<Check>> {
        let rho = self.rho();
        let c = rho.coords();
        if rho.n() != 4 || c[0] != c[1] || c[0] == HalfInt::ZERO {
            return None;
        }
        let k = c[0].to_rational();
        let w = rho.to_string();
        let mk = |id: &str, got: Rational, want: Rational| {
            Check::new(id, if got == want { 0.0 } else { 1.0 }, 0.0)
                .with("weight", &w)
                .with("derived", format_rational(&got))
                .with("expected", format_rational(&want))
        };
        let one = int(1);
        let ratio = self.constant_curvature_ratio;
        let expected_ratio = k * (k + one) / int(6);
        let scale = (int(2) * k + one) / k;
        let row = &self.explicit_rows[1];
        Some(vec![
            mk("self_dual_top_weight", self.weighted_row[0], -k),
            mk("self_dual_bottom_weight", self.weighted_row[1], k + one),
            mk("self_dual_curvature_ratio", ratio, expected_ratio),
            Check::info("self_dual_fitted_factor", crate::weightcalc::rational_to_f64(&(ratio / expected_ratio))).with("weight", &w),
            mk("self_dual_laplacian", row[0] * scale, one),
            mk("self_dual_scalar", row[1] * scale * ratio, (k + one) / int(6)),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> DominantWeight {
        DominantWeight::parse(n, s).unwrap()
    }

    #[test]
    fn spinor_five_lichnerowicz() {
        let b = bochner_report(&w(5, "1/2,1/2")).unwrap();
        assert_eq!(b.explicit_rows[1], vec![Rational::new(1, 5), Rational::new(2, 5)]);
        let report = b.checks();
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.find("lichnerowicz_scalar").unwrap().params["derived"], "1/4");
        assert_eq!(report.find("twistor_scalar").unwrap().params["derived"], "-1/16");
    }

    #[test]
    fn spinors_all_n() {
        for n in 3..=8 {
            let rho = DominantWeight::spinor(n).unwrap();
            let report = bochner_report(&rho).unwrap().checks();
            assert!(report.pass(), "n = {n}: {report:?}");
            assert!(report.find("lichnerowicz_scalar").is_some());
        }
    }

    #[test]
    fn forms_rows() {
        for (n, k) in [(5, 1), (5, 2), (6, 1), (6, 2), (7, 3), (8, 3)] {
            let report = bochner_report(&DominantWeight::fundamental_form(n, k).unwrap()).unwrap().checks();
            assert!(report.pass(), "n={n} k={k}: {report:?}");
            assert_eq!(report.checks.iter().filter(|c| c.identity == "form_bochner_row").count(), 3);
        }
    }

    #[test]
    fn self_dual_four() {
        for s in ["1/2,1/2", "1,1", "3/2,3/2", "2,2"] {
            let report = bochner_report(&w(4, s)).unwrap().checks();
            assert!(report.pass(), "{s}: {report:?}");
            assert_eq!(report.find("self_dual_fitted_factor").unwrap().max_residual, 1.0);
        }
    }

    #[test]
    fn general_weights() {
        for (n, s) in [(5, "3/2,1/2"), (6, "2,1,-1"), (7, "2,1,1"), (4, "2,-1")] {
            let b = bochner_report(&w(n, s)).unwrap();
            assert!(b.checks().pass());
            assert_eq!(b.hatted.len(), b.weighted_row.len() - 1);
        }
    }

    #[test]
    fn single_component_refused() {
        assert!(matches!(bochner_report(&w(5, "0,0")), Err(Error::NoBound(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
    }
}
