use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{HalfInt, Rational};
use crate::error::{Error, Result};

/// Highest weight `ρ = (ρ¹, …, ρ^m)` of an irreducible Spin(n) module,
/// `m = ⌊n/2⌋`, in the orthonormal basis of the standard Cartan subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    n: usize,
    coords: Vec<HalfInt>,
}

impl DominantWeight {
    /// Validates parity and dominance.
    ///
    /// For `n = 2m` the coordinates satisfy `ρ¹ ≥ … ≥ ρ^{m−1} ≥ |ρ^m|`;
    /// for `n = 2m+1` they satisfy `ρ¹ ≥ … ≥ ρ^m ≥ 0`.
    pub fn new(n: usize, coords: Vec<HalfInt>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("n = {n} is below 3")));
        }
        let m = n / 2;
        if coords.len() != m {
            return Err(Error::InvalidWeight(format!(
                "n = {n} needs {m} coordinates, got {}",
                coords.len()
            )));
        }
        let integral = coords[0].is_integer();
        if coords.iter().any(|c| c.is_integer() != integral) {
            return Err(Error::InvalidWeight(
                "coordinates mix integers and half-odd integers".into(),
            ));
        }
        for w in coords.windows(2).take(m.saturating_sub(2)) {
            if w[0] < w[1] {
                return Err(Error::InvalidWeight(format!("{} < {} breaks dominance", w[0], w[1])));
            }
        }
        let last = coords[m - 1];
        if n % 2 == 0 {
            if m >= 2 && coords[m - 2] < last.abs() {
                return Err(Error::InvalidWeight(format!(
                    "{} < |{}| breaks dominance",
                    coords[m - 2],
                    last
                )));
            }
        } else {
            if m >= 2 && coords[m - 2] < last {
                return Err(Error::InvalidWeight(format!("{} < {} breaks dominance", coords[m - 2], last)));
            }
            if last < HalfInt::ZERO {
                return Err(Error::InvalidWeight(format!("last coordinate {last} is negative")));
            }
        }
        Ok(DominantWeight { n, coords })
    }

    pub fn from_twice(n: usize, twice: &[i64]) -> Result<Self> {
        Self::new(n, twice.iter().map(|&t| HalfInt::from_twice(t)).collect())
    }

    /// Parses a comma separated list such as `"1/2,1/2"` or `"1,1,0"`.
    pub fn parse(n: usize, list: &str) -> Result<Self> {
        let coords = list
            .split(',')
            .map(|t| t.trim().parse::<HalfInt>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, coords)
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(n, vec![HalfInt::ZERO; n / 2])
    }

    pub fn vector(n: usize) -> Result<Self> {
        Self::fundamental_form(n, 1)
    }

    pub fn spinor(n: usize) -> Result<Self> {
        Self::new(n, vec![HalfInt::HALF; n / 2])
    }

    /// `(1_k, 0_{m−k})`, the highest weight of `Λ^k` for `k < n/2`.
    pub fn fundamental_form(n: usize, k: usize) -> Result<Self> {
        let m = n / 2;
        if k > m {
            return Err(Error::InvalidWeight(format!("k = {k} exceeds rank {m}")));
        }
        let coords = (0..m).map(|i| if i < k { HalfInt::ONE } else { HalfInt::ZERO }).collect();
        Self::new(n, coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords[0].is_integer()
    }

    pub fn is_even_dimension(&self) -> bool {
        self.n % 2 == 0
    }

    /// Weight with coordinate `i` shifted by `delta`, if still dominant.
    pub fn shifted(&self, i: usize, delta: HalfInt) -> Option<DominantWeight> {
        let mut coords = self.coords.clone();
        coords[i] = coords[i] + delta;
        DominantWeight::new(self.n, coords).ok()
    }

    /// Key used by the on-disk cache: `n5_w1_1` for `n = 5, ρ = (1/2, 1/2)`.
    pub fn cache_key(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.twice().to_string()).collect();
        format!("n{}_w{}", self.n, parts.join("_"))
    }

    pub fn twice_coords(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.twice()).collect()
    }

    /// `‖δ + ρ‖²`.
    pub fn shifted_norm_sq(&self) -> Rational {
        let delta = delta_vector(self.n).expect("n validated on construction");
        self.coords
            .iter()
            .zip(&delta)
            .map(|(&c, &d)| {
                let s = (c + d).to_rational();
                s * s
            })
            .sum()
    }
}

impl PartialOrd for DominantWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coordinates; weights of different `n` order by `n` first.
impl Ord for DominantWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DominantWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

#[derive(Deserialize)]
struct WeightRecord {
    n: usize,
    weight: Vec<HalfInt>,
}

/// Deserializes from `{"n": 5, "weight": ["1/2", "1/2"]}`.
impl<'de> Deserialize<'de> for DominantWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = WeightRecord::deserialize(deserializer)?;
        DominantWeight::new(rec.n, rec.weight).map_err(serde::de::Error::custom)
    }
}

/// Half the sum of the positive roots of `so(n)`.
pub fn delta_vector(n: usize) -> Result<Vec<HalfInt>> {
    if n < 3 {
        return Err(Error::Domain(format!("n = {n} is below 3")));
    }
    let m = n / 2;
    Ok((0..m)
        .map(|i| {
            let k = (m - 1 - i) as i64;
            if n % 2 == 0 {
                HalfInt::from_int(k)
            } else {
                HalfInt::from_twice(2 * k + 1)
            }
        })
        .collect())
}

/// `c(ρ) = −½(‖δ+ρ‖² − ‖δ‖²)`.
pub fn casimir_constant(rho: &DominantWeight) -> Rational {
    let delta = delta_vector(rho.n()).expect("n validated on construction");
    let delta_sq: Rational = delta
        .iter()
        .map(|d| {
            let d = d.to_rational();
            d * d
        })
        .sum();
    -(rho.shifted_norm_sq() - delta_sq) / 2
}

/// Weyl dimension formula over the positive roots of `B_m` or `D_m`.
pub fn weyl_dimension(rho: &DominantWeight) -> u64 {
    let n = rho.n();
    let delta: Vec<i128> = delta_vector(n)
        .expect("n validated on construction")
        .iter()
        .map(|d| d.twice() as i128)
        .collect();
    let shifted: Vec<i128> = rho
        .coords()
        .iter()
        .zip(&delta)
        .map(|(c, d)| c.twice() as i128 + d)
        .collect();
    let m = delta.len();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    let mut push = |a: i128, b: i128| {
        num *= a;
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    };
    for i in 0..m {
        for j in (i + 1)..m {
            push(shifted[i] - shifted[j], delta[i] - delta[j]);
            push(shifted[i] + shifted[j], delta[i] + delta[j]);
        }
        if n % 2 == 1 {
            push(shifted[i], delta[i]);
        }
    }
    debug_assert!(den == 1 || den == -1, "Weyl dimension is integral");
    (num / den) as u64
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Every dominant weight of Spin(n) with `ρ¹ ≤ max_first`, in ascending
/// lexicographic order.
pub fn dominant_weights(n: usize, max_first: HalfInt) -> Result<Vec<DominantWeight>> {
    if n < 3 {
        return Err(Error::Domain(format!("n = {n} is below 3")));
    }
    let m = n / 2;
    let top = max_first.twice();
    let mut out = Vec::new();
    let mut twice = vec![-top; m];
    loop {
        if let Ok(w) = DominantWeight::from_twice(n, &twice) {
            out.push(w);
        }
        let mut k = m;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            twice[k] += 1;
            if twice[k] <= top {
                break;
            }
            twice[k] = -top;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, s: &str) -> DominantWeight {
        DominantWeight::parse(n, s).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let two = HalfInt::from_int(2);
        let counts: Vec<usize> = (3..=5).map(|n| dominant_weights(n, two).unwrap().len()).collect();
        assert_eq!(counts, vec![5, 15, 9]);
        let four = dominant_weights(4, two).unwrap();
        assert!(four.contains(&w(4, "3/2,-3/2")));
        assert!(four.windows(2).all(|p| p[0] < p[1]));
    }

    fn halves(v: &[HalfInt]) -> Vec<i64> {
        v.iter().map(|h| h.twice()).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(halves(&delta_vector(5).unwrap()), vec![3, 1]);
        assert_eq!(halves(&delta_vector(4).unwrap()), vec![2, 0]);
        assert_eq!(halves(&delta_vector(7).unwrap()), vec![5, 3, 1]);
        assert!(matches!(delta_vector(2), Err(Error::Domain(_))));
    }

    #[test]
    fn validation() {
        assert!(DominantWeight::parse(5, "1/2,1/2").is_ok());
        assert!(DominantWeight::parse(5, "1,1/2").is_err());
        assert!(DominantWeight::parse(5, "0,1").is_err());
        assert!(DominantWeight::parse(5, "1/2,-1/2").is_err());
        assert!(DominantWeight::parse(6, "1,1,-1").is_ok());
        assert!(DominantWeight::parse(6, "1,0,-1").is_err());
        assert!(DominantWeight::parse(4, "1/2,-1/2").is_ok());
        assert!(DominantWeight::parse(4, "1/2").is_err());
        assert!(DominantWeight::parse(3, "1/2").is_ok());
        assert!(DominantWeight::parse(3, "-1").is_err());
        assert!(matches!(DominantWeight::parse(2, "1"), Err(Error::Domain(_))));
    }

    /// Casimir of the vector representation from the explicit matrices
    /// `π([e_k,e_l]) = −4E_kl + 4E_lk`: `(1/32) Σ_{i<j} π²` is diagonal with
    /// entry `(1/32)·(−16)·(n−1)`, computed here entry by entry.
    #[test]
    fn casimir_vector_against_matrix_oracle() {
        for n in 3..=8usize {
            let mut diag = vec![0i64; n];
            for k in 0..n {
                for l in (k + 1)..n {
                    // π² restricted to span{e_k, e_l} is −16·Id.
                    diag[k] -= 16;
                    diag[l] -= 16;
                }
            }
            let oracle = Rational::new(diag[0], 32);
            assert!(diag.iter().all(|&d| d == diag[0]));
            assert_eq!(casimir_constant(&DominantWeight::vector(n).unwrap()), oracle);
        }
        assert_eq!(casimir_constant(&w(5, "1,0")), Rational::from_integer(-2));
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_constant(&w(5, "0,0")), Rational::from_integer(0));
        assert_eq!(casimir_constant(&w(5, "1/2,1/2")), Rational::new(-5, 4));
        assert_eq!(casimir_constant(&w(6, "1,1,0")), Rational::from_integer(-4));
    }

    /// Spinor Casimir from Clifford relations: π([e_i,e_j]) = 2γ_iγ_j squares
    /// to −4, so (1/32)·C(n,2)·(−4) = −n(n−1)/16.
    #[test]
    fn casimir_spinor_against_clifford_count() {
        for n in 3..=8usize {
            let pairs = (n * (n - 1) / 2) as i64;
            let oracle = Rational::new(-4 * pairs, 32);
            assert_eq!(casimir_constant(&DominantWeight::spinor(n).unwrap()), oracle);
        }
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dimension(&w(5, "1/2,1/2")), 4);
        assert_eq!(weyl_dimension(&w(5, "1,0")), 5);
        assert_eq!(weyl_dimension(&w(5, "3/2,1/2")), 16);
        assert_eq!(weyl_dimension(&w(6, "1,1,0")), 15);
        assert_eq!(weyl_dimension(&w(6, "1,1,1")), 10);
        assert_eq!(weyl_dimension(&w(8, "1/2,1/2,1/2,-1/2")), 8);
        assert_eq!(weyl_dimension(&w(7, "1,1,1")), 35);
        assert_eq!(weyl_dimension(&w(3, "1")), 3);
        assert_eq!(weyl_dimension(&w(3, "2")), 5);
    }

    /// dim Λ^k(Rⁿ) = C(n,k) for k < n/2.
    #[test]
    fn weyl_exterior_powers() {
        for n in 3..=8usize {
            for k in 0..=((n - 1) / 2) {
                let expect = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(weyl_dimension(&DominantWeight::fundamental_form(n, k).unwrap()), expect);
            }
        }
    }

    #[test]
    fn cache_key_format() {
        assert_eq!(w(5, "1/2,1/2").cache_key(), "n5_w1_1");
        assert_eq!(w(6, "1,1,-1").cache_key(), "n6_w2_2_-2");
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&w(5, "3/2,1/2")).unwrap();
        assert_eq!(json, r#"["3/2","1/2"]"#);
        let back: DominantWeight = serde_json::from_str(r#"{"n":5,"weight":["3/2","1/2"]}"#).unwrap();
        assert_eq!(back, w(5, "3/2,1/2"));
    }

    proptest! {
        #[test]
        fn casimir_is_nonpositive(n in 3usize..=8, seed in proptest::collection::vec(0i64..4, 4), half in any::<bool>(), flip in any::<bool>()) {
            let m = n / 2;
            let mut twice: Vec<i64> = seed[..m].to_vec();
            twice.sort_unstable_by(|a, b| b.cmp(a));
            let mut twice: Vec<i64> = twice.iter().map(|t| 2 * t + i64::from(half)).collect();
            if n % 2 == 0 && flip {
                twice[m - 1] = -twice[m - 1];
            }
            let rho = DominantWeight::from_twice(n, &twice).unwrap();
            prop_assert!(casimir_constant(&rho) <= Rational::from_integer(0));
            prop_assert!(weyl_dimension(&rho) >= 1);
        }
    }
}
