use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

use super::Representation;

/// `π(exp(t[e_k, e_l])) = exp(t·π([e_k, e_l]))` for `k < l`.
pub fn group_element(rep: &Representation, k: usize, l: usize, t: f64) -> Result<ComplexMatrix> {
    if k >= l || l >= rep.n() {
        return Err(Error::Domain(format!("need k < l < {}, got ({k}, {l})", rep.n())));
    }
    rep.generator(k, l).exp_skew(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::repforge::{standard_rep, StandardKind};

    #[test]
    fn identity_at_zero() {
        let rep = standard_rep(5, StandardKind::Spinor).unwrap();
        let g = group_element(&rep, 0, 3, 0.0).unwrap();
        assert!(g.distance(&ComplexMatrix::identity(4)) < 1e-14);
    }

    /// exp(t(−4E₁₂+4E₂₁)) rotates the (1,2)-plane by 4t.
    #[test]
    fn vector_rotation() {
        let rep = standard_rep(5, StandardKind::Vector).unwrap();
        let t = std::f64::consts::FRAC_PI_4 / 2.0;
        let g = group_element(&rep, 0, 1, t).unwrap();
        let (c, s) = ((4.0 * t).cos(), (4.0 * t).sin());
        let mut expect = ComplexMatrix::identity(5);
        expect.set(0, 0, c64::new(c, 0.0));
        expect.set(0, 1, c64::new(-s, 0.0));
        expect.set(1, 0, c64::new(s, 0.0));
        expect.set(1, 1, c64::new(c, 0.0));
        assert!(g.distance(&expect) < 1e-13);
        let quarter = group_element(&rep, 0, 1, std::f64::consts::FRAC_PI_4).unwrap();
        assert!((quarter.get(0, 0).re + 1.0).abs() < 1e-13);
    }

    #[test]
    fn spinor_unitarity() {
        let rep = standard_rep(5, StandardKind::Spinor).unwrap();
        for t in [0.3, 1.1, -2.7] {
            let g = group_element(&rep, 1, 4, t).unwrap();
            assert!(g.isometry_residual() < 1e-10);
        }
        assert!(group_element(&rep, 2, 2, 0.1).is_err());
    }
}
