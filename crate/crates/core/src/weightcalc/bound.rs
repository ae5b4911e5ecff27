use serde::Serialize;

use super::{casimir_constant, decompose, is_positive, DominantWeight, Rational};
use crate::error::{Error, Result};

/// Lower bound for the eigenvalues of the second-order operator built from the
/// top and bottom Bochner coefficients, on a manifold whose curvature is
/// bounded below by `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub rho: DominantWeight,
    #[serde(with = "super::rational_str")]
    pub r: Rational,
    #[serde(with = "super::rational_str")]
    pub m_top: Rational,
    #[serde(with = "super::rational_str")]
    pub m_bottom: Rational,
    #[serde(with = "super::rational_str")]
    pub casimir: Rational,
    #[serde(with = "super::rational_str")]
    pub bound: Rational,
}

/// `bound = (m₀ − m_N)/(m₀·m_N) · (−2·r·c(ρ))` with `m_N` the largest
/// conformal weight after merging the exceptional pair.
pub fn eigenvalue_bound(rho: &DominantWeight, r: Rational) -> Result<BoundReport> {
    if !is_positive(&r) {
        return Err(Error::Domain(format!("r = {r} must be positive")));
    }
    let table = decompose(rho);
    let weights = table.distinct_weights();
    if weights.len() < 2 {
        return Err(Error::NoBound(format!(
            "V_{rho} ⊗ R^{} has a single component",
            rho.n()
        )));
    }
    let m_top = weights[0];
    let m_bottom = *weights.last().expect("at least two weights");
    if !is_positive(&m_bottom) {
        return Err(Error::Integrity(format!("largest conformal weight {m_bottom} is not positive")));
    }
    let casimir = casimir_constant(rho);
    let bound = (m_top - m_bottom) / (m_top * m_bottom) * (Rational::from_integer(-2) * r * casimir);
    Ok(BoundReport { rho: rho.clone(), r, m_top, m_bottom, casimir, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> DominantWeight {
        DominantWeight::parse(n, s).unwrap()
    }

    #[test]
    fn two_forms_six() {
        let b = eigenvalue_bound(&w(6, "1,1,0"), Rational::from_integer(1)).unwrap();
        assert_eq!(b.bound, Rational::from_integer(10));
    }

    #[test]
    fn spinor_five() {
        let b = eigenvalue_bound(&w(5, "1/2,1/2"), Rational::from_integer(1)).unwrap();
        assert_eq!((b.m_top, b.m_bottom, b.casimir), (Rational::new(-1, 2), Rational::from_integer(2), Rational::new(-5, 4)));
        // (−1/2 − 2)/(−1/2 · 2) · (5/2) = 5/2 · 5/2
        assert_eq!(b.bound, Rational::new(25, 4));
    }

    #[test]
    fn forms_closed_form() {
        for n in 3..=8usize {
            for k in 1..=n / 2 {
                let rho = DominantWeight::fundamental_form(n, k).unwrap();
                for r in [Rational::from_integer(1), Rational::new(3, 7)] {
                    let b = eigenvalue_bound(&rho, r).unwrap();
                    assert_eq!(b.bound, Rational::from_integer((k * (n - k + 1)) as i64) * r, "n={n} k={k}");
                }
            }
        }
    }

    /// For `n = 4`, `ρ = (k, k)` the bound is `(2k+1)/6·κ₀` with `κ₀ = r·n(n−1)`.
    #[test]
    fn four_dim_self_dual() {
        for twice_k in 1..=6i64 {
            let k = Rational::new(twice_k, 2);
            let rho = DominantWeight::from_twice(4, &[twice_k, twice_k]).unwrap();
            let r = Rational::from_integer(1);
            let kappa0 = r * Rational::from_integer(12);
            let b = eigenvalue_bound(&rho, r).unwrap();
            assert_eq!(b.bound, (Rational::from_integer(2) * k + 1) / 6 * kappa0);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(eigenvalue_bound(&w(5, "0,0"), Rational::from_integer(1)), Err(Error::NoBound(_))));
        assert!(matches!(eigenvalue_bound(&w(5, "1,0"), Rational::from_integer(0)), Err(Error::Domain(_))));
    }
}
