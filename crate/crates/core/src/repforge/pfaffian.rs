use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, I, ONE};
use crate::weightcalc::{DominantWeight, Rational};

use super::Generators;

/// `Pf = Σ_{σ∈S_{2m}} sgn(σ) π([e_σ1,e_σ2]) ⋯ π([e_σ(2m−1),e_σ(2m)])`,
/// evaluated by expanding over the leading pair with memoized subsets.
///
/// For a subset `S` listed increasingly, the leading pair `(a, b)` at
/// positions `p_a < p_b` contributes `2(−1)^{p_a+p_b+1} π([e_a,e_b]) F(S∖{a,b})`;
/// the factor 2 accounts for the two orders of the pair.
pub fn pfaffian_recursive(gens: &Generators) -> Result<ComplexMatrix> {
    let n = gens.n();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("the Pfaffian needs even n, got {n}")));
    }
    let mut memo: HashMap<u32, ComplexMatrix> = HashMap::new();
    Ok(subset_pfaffian(gens, (1u32 << n) - 1, &mut memo))
}

pub(crate) fn subset_pfaffian(gens: &Generators, set: u32, memo: &mut HashMap<u32, ComplexMatrix>) -> ComplexMatrix {
    if set == 0 {
        return ComplexMatrix::identity(gens.dim());
    }
    if let Some(hit) = memo.get(&set) {
        return hit.clone();
    }
    let elems: Vec<usize> = (0..32).filter(|&i| set & (1 << i) != 0).collect();
    let mut out = ComplexMatrix::zeros(gens.dim(), gens.dim());
    for (pa, &a) in elems.iter().enumerate() {
        for (pb, &b) in elems.iter().enumerate().skip(pa + 1) {
            let rest = subset_pfaffian(gens, set & !(1 << a) & !(1 << b), memo);
            let sign = if (pa + pb + 1) % 2 == 0 { 2.0 } else { -2.0 };
            out.axpy(c64::new(sign, 0.0), &gens.get(a, b).matmul(&rest));
        }
    }
    memo.insert(set, out.clone());
    out
}

/// `(−i)^m p(ρ) = 8^m m! (ρ¹+m−1)(ρ²+m−2)⋯ρ^m`, exact.
pub fn pfaffian_scalar_exact(weight: &DominantWeight) -> Result<Rational> {
    let n = weight.n();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("the Pfaffian needs even n, got {n}")));
    }
    let m = n / 2;
    let mut value = Rational::from_integer(8i64.pow(m as u32) * (1..=m as i64).product::<i64>());
    for (j, c) in weight.coords().iter().enumerate() {
        value *= c.to_rational() + Rational::from_integer((m - 1 - j) as i64);
    }
    Ok(value)
}

/// `p(ρ) = i^m · 8^m m! (ρ¹+m−1)⋯ρ^m`.
pub fn pfaffian_scalar(weight: &DominantWeight) -> Result<c64> {
    let real = pfaffian_scalar_exact(weight)?;
    let m = weight.n() / 2;
    let phase = (0..m).fold(ONE, |acc, _| acc * I);
    Ok(phase * crate::weightcalc::rational_to_f64(&real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repforge::{gamma_matrices, standard_rep, StandardKind};

    #[test]
    fn exact_scalars() {
        let w = |s: &str| DominantWeight::parse(4, s).unwrap();
        assert_eq!(pfaffian_scalar_exact(&w("1/2,1/2")).unwrap(), Rational::from_integer(96));
        assert_eq!(pfaffian_scalar(&w("1/2,1/2")).unwrap(), c64::new(-96.0, 0.0));
        assert_eq!(pfaffian_scalar(&w("1/2,-1/2")).unwrap(), c64::new(96.0, 0.0));
        assert_eq!(pfaffian_scalar_exact(&w("1,0")).unwrap(), Rational::from_integer(0));
    }

    /// On the full spinor module of R⁴, the 24-term sum collapses to
    /// 4·4!·γ₀γ₁γ₂γ₃: every permutation gives ±2^m γ₀γ₁γ₂γ₃ times the sign.
    #[test]
    fn spinor_four_equals_volume_element() {
        let rep = standard_rep(4, StandardKind::Spinor).unwrap();
        let pf = pfaffian_recursive(rep.generators()).unwrap();
        let g = gamma_matrices(4).unwrap();
        let vol = g.gamma(0).matmul(g.gamma(1)).matmul(g.gamma(2)).matmul(g.gamma(3));
        assert!(pf.distance(&vol.scale_real(96.0)) < 1e-12);
    }

    #[test]
    fn odd_n_refused() {
        let rep = standard_rep(5, StandardKind::Vector).unwrap();
        assert!(pfaffian_recursive(rep.generators()).is_err());
    }
}
