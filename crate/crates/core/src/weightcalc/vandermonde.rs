use serde::Serialize;

use super::{DecompositionTable, Rational};
use crate::error::{Error, Result};

/// Inverse of the Vandermonde matrix `M_{qj} = m_j^q` on distinct conformal
/// weights `m_0 < … < m_N`.
///
/// Row `k` holds the coefficients of the Lagrange polynomial that is 1 at
/// `m_k` and 0 at the other weights, so `Σ_q n_{kq} Ĉ^q` is the projector
/// onto the `m_k` eigenspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VandermondeCoefficients {
    #[serde(serialize_with = "super::rational_vec_str::serialize")]
    pub weights: Vec<Rational>,
    #[serde(serialize_with = "super::rational_vec_str::serialize_rows")]
    pub matrix: Vec<Vec<Rational>>,
}

impl VandermondeCoefficients {
    pub fn from_weights(weights: &[Rational]) -> Result<Self> {
        for (i, a) in weights.iter().enumerate() {
            if weights[..i].contains(a) {
                return Err(Error::Singular(super::format_rational(a)));
            }
        }
        let size = weights.len();
        let matrix = (0..size)
            .map(|k| {
                let others: Vec<Rational> =
                    weights.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &w)| w).collect();
                let denom: Rational = others.iter().map(|&w| weights[k] - w).product();
                let e = elementary_symmetric(&others);
                (0..size)
                    .map(|q| {
                        let d = size - 1 - q;
                        let sign = if d % 2 == 0 { 1 } else { -1 };
                        e[d] * Rational::from_integer(sign) / denom
                    })
                    .collect()
            })
            .collect();
        let coeffs = VandermondeCoefficients { weights: weights.to_vec(), matrix };
        if !coeffs.inverts_exactly() {
            return Err(Error::Integrity("Vandermonde closed form is not an inverse".into()));
        }
        Ok(coeffs)
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    /// `m_{qj} = m_j^q`.
    pub fn vandermonde(&self) -> Vec<Vec<Rational>> {
        let size = self.size();
        (0..size)
            .map(|q| self.weights.iter().map(|&w| pow(w, q)).collect())
            .collect()
    }

    /// Exact check `N · M = Id` (with `M` square this implies `M · N = Id`).
    pub fn inverts_exactly(&self) -> bool {
        let m = self.vandermonde();
        let size = self.size();
        (0..size).all(|k| {
            (0..size).all(|j| {
                let s: Rational = (0..size).map(|q| self.matrix[k][q] * m[q][j]).sum();
                s == Rational::from_integer(i64::from(k == j))
            })
        })
    }
}

/// `e_0, …, e_len` of the given values.
pub(crate) fn elementary_symmetric(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::from_integer(0); values.len() + 1];
    e[0] = Rational::from_integer(1);
    for (count, &v) in values.iter().enumerate() {
        for d in (1..=count + 1).rev() {
            e[d] = e[d] + e[d - 1] * v;
        }
    }
    e
}

pub(crate) fn pow(base: Rational, exp: usize) -> Rational {
    (0..exp).fold(Rational::from_integer(1), |acc, _| acc * base)
}

/// Coefficients over the distinct conformal weights of `table`; the
/// exceptional pair shares one column.
pub fn vandermonde_coefficients(table: &DecompositionTable) -> Result<VandermondeCoefficients> {
    VandermondeCoefficients::from_weights(&table.distinct_weights())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weightcalc::{decompose, DominantWeight};
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    /// Gauss–Jordan inverse over the rationals, independent of the closed form.
    fn gauss_jordan_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
        let size = a.len();
        let zero = r(0, 1);
        let mut aug: Vec<Vec<Rational>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut row = row.clone();
                row.extend((0..size).map(|j| r(i64::from(i == j), 1)));
                row
            })
            .collect();
        for col in 0..size {
            let pivot = (col..size).find(|&i| aug[i][col] != zero)?;
            aug.swap(col, pivot);
            let p = aug[col][col];
            for x in aug[col].iter_mut() {
                *x /= p;
            }
            for i in 0..size {
                if i != col {
                    let f = aug[i][col];
                    let pivot_row = aug[col].clone();
                    for (x, y) in aug[i].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|row| row[size..].to_vec()).collect())
    }

    #[test]
    fn spinor_five_coefficients() {
        let t = decompose(&DominantWeight::parse(5, "1/2,1/2").unwrap());
        let v = vandermonde_coefficients(&t).unwrap();
        assert_eq!(v.matrix, vec![vec![r(4, 5), r(-2, 5)], vec![r(1, 5), r(2, 5)]]);
    }

    #[test]
    fn single_component() {
        let t = decompose(&DominantWeight::parse(5, "0,0").unwrap());
        let v = vandermonde_coefficients(&t).unwrap();
        assert_eq!(v.matrix, vec![vec![r(1, 1)]]);
    }

    #[test]
    fn vector_five_against_gauss_jordan() {
        let t = decompose(&DominantWeight::parse(5, "1,0").unwrap());
        assert_eq!(t.len(), 3);
        let v = vandermonde_coefficients(&t).unwrap();
        assert!(v.inverts_exactly());
        assert_eq!(Some(v.matrix.clone()), gauss_jordan_inverse(&v.vandermonde()));
    }

    #[test]
    fn repeated_weights_are_singular() {
        let t = decompose(&DominantWeight::parse(6, "1,1,0").unwrap());
        assert!(matches!(
            VandermondeCoefficients::from_weights(&t.conformal_weights()),
            Err(Error::Singular(_))
        ));
        assert_eq!(vandermonde_coefficients(&t).unwrap().size(), 3);
    }

    #[test]
    fn elementary_symmetric_small() {
        let e = elementary_symmetric(&[r(1, 1), r(2, 1), r(3, 1)]);
        assert_eq!(e, vec![r(1, 1), r(6, 1), r(11, 1), r(6, 1)]);
    }

    proptest! {
        #[test]
        fn closed_form_matches_gauss_jordan(raw in proptest::collection::btree_set(-20i64..20, 1..7)) {
            let weights: Vec<Rational> = raw.iter().map(|&t| r(t, 2)).collect();
            let v = VandermondeCoefficients::from_weights(&weights).unwrap();
            prop_assert_eq!(Some(v.matrix.clone()), gauss_jordan_inverse(&v.vandermonde()));
        }
    }
}
