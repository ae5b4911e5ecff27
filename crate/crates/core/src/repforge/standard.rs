use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::weightcalc::{DominantWeight, HalfInt};

use super::{gamma_matrices, ExteriorModel, Generators, Representation, MAX_N};

/// Representations with a direct matrix model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Trivial,
    Vector,
    Spinor,
    SpinorPlus,
    SpinorMinus,
    /// `Λ^k(Rⁿ)` for `k < n/2`.
    Exterior(usize),
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardKind::Trivial => write!(f, "trivial"),
            StandardKind::Vector => write!(f, "vector"),
            StandardKind::Spinor => write!(f, "spinor"),
            StandardKind::SpinorPlus => write!(f, "spinor_plus"),
            StandardKind::SpinorMinus => write!(f, "spinor_minus"),
            StandardKind::Exterior(k) => write!(f, "exterior({k})"),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::Domain(format!("n = {n} outside 3..={MAX_N}")));
    }
    Ok(())
}

/// Builds the representation of the given kind.
///
/// The full spinor representation of even `n` is reducible; it is returned
/// with the weight of its positive half, and is meant for Clifford-algebra
/// computations rather than as an irreducible module.
pub fn standard_rep(n: usize, kind: StandardKind) -> Result<Representation> {
    check_n(n)?;
    let m = n / 2;
    match kind {
        StandardKind::Trivial => {
            let gens = Generators::from_fn(n, 1, |_, _| ComplexMatrix::zeros(1, 1));
            Ok(Representation::new(DominantWeight::trivial(n)?, gens))
        }
        StandardKind::Vector => {
            let gens = Generators::from_fn(n, n, |k, l| {
                let mut g = ComplexMatrix::zeros(n, n);
                g.set(k, l, c64::new(-4.0, 0.0));
                g.set(l, k, c64::new(4.0, 0.0));
                g
            });
            Ok(Representation::new(DominantWeight::vector(n)?, gens))
        }
        StandardKind::Spinor => {
            let gamma = gamma_matrices(n)?;
            let gens = Generators::from_fn(n, gamma.dim(), |k, l| gamma.gamma(k).matmul(gamma.gamma(l)).scale_real(2.0));
            Ok(Representation::new(DominantWeight::spinor(n)?, gens))
        }
        StandardKind::SpinorPlus | StandardKind::SpinorMinus => {
            if n % 2 == 1 {
                return Err(Error::Domain(format!("chiral spinors need even n, got {n}")));
            }
            let positive = kind == StandardKind::SpinorPlus;
            let gamma = gamma_matrices(n)?;
            let chi = gamma.chirality().expect("even n");
            let target = if positive { 1.0 } else { -1.0 };
            let keep: Vec<usize> = (0..gamma.dim())
                .filter(|&b| (chi.get(b, b).re - target).abs() < 1e-12)
                .collect();
            debug_assert_eq!(keep.len(), gamma.dim() / 2);
            let select = ComplexMatrix::from_fn(gamma.dim(), keep.len(), |i, j| {
                if keep[j] == i {
                    c64::new(1.0, 0.0)
                } else {
                    c64::new(0.0, 0.0)
                }
            });
            let full = Generators::from_fn(n, gamma.dim(), |k, l| gamma.gamma(k).matmul(gamma.gamma(l)).scale_real(2.0));
            let mut coords = vec![HalfInt::HALF; m];
            if !positive {
                coords[m - 1] = -HalfInt::HALF;
            }
            Ok(Representation::new(DominantWeight::new(n, coords)?, full.compress(&select)))
        }
        StandardKind::Exterior(k) => {
            if 2 * k == n {
                return Err(Error::Domain(format!("Λ^{k}(R^{n}) is reducible")));
            }
            if 2 * k > n {
                return Err(Error::Domain(format!("Λ^{k}(R^{n}) is isomorphic to Λ^{}; use that degree", n - k)));
            }
            let ext = ExteriorModel::new(n);
            let gens = Generators::from_fn(n, ext.dim(k), |a, b| ext.generator(k, a, b));
            Ok(Representation::new(DominantWeight::fundamental_form(n, k)?, gens))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weightcalc::{casimir_constant, rational_to_f64, weyl_dimension};

    fn casimir_residual(rep: &Representation) -> f64 {
        let c = rational_to_f64(&casimir_constant(rep.weight()));
        rep.casimir().distance(&ComplexMatrix::scalar(rep.dim(), c64::new(c, 0.0)))
    }

    #[test]
    fn vector_five() {
        let v = standard_rep(5, StandardKind::Vector).unwrap();
        let g = v.generator(0, 1);
        assert_eq!(g.get(0, 1), c64::new(-4.0, 0.0));
        assert_eq!(g.get(1, 0), c64::new(4.0, 0.0));
        assert_eq!(g.frobenius(), 32f64.sqrt());
        assert!(casimir_residual(&v) < 1e-12);
    }

    #[test]
    fn trivial_five() {
        let t = standard_rep(5, StandardKind::Trivial).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.generators().as_slice().iter().all(|g| g.frobenius() == 0.0));
    }

    #[test]
    fn spinor_casimir() {
        let s = standard_rep(5, StandardKind::Spinor).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(casimir_residual(&s) < 1e-10);
    }

    #[test]
    fn all_kinds_have_right_casimir_and_dim() {
        for n in 3..=8 {
            let mut kinds = vec![StandardKind::Trivial, StandardKind::Vector];
            if n % 2 == 0 {
                kinds.extend([StandardKind::SpinorPlus, StandardKind::SpinorMinus]);
            } else {
                kinds.push(StandardKind::Spinor);
            }
            kinds.extend((0..).take_while(|k| 2 * k < n).map(StandardKind::Exterior));
            for kind in kinds {
                let rep = standard_rep(n, kind).unwrap();
                assert_eq!(rep.dim() as u64, weyl_dimension(rep.weight()), "{n} {kind}");
                assert!(casimir_residual(&rep) < 1e-10, "{n} {kind}");
            }
        }
    }

    #[test]
    fn refusals() {
        assert!(standard_rep(5, StandardKind::SpinorPlus).is_err());
        assert!(standard_rep(6, StandardKind::Exterior(3)).is_err());
        assert!(standard_rep(2, StandardKind::Vector).is_err());
    }
}
