use std::fmt;

use serde::{Serialize, Serializer};

use super::{casimir_constant, weyl_dimension, DominantWeight, HalfInt, Rational};

/// How a component `λ` of `V_ρ ⊗ Rⁿ` arises from `ρ`. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    PlusMu(usize),
    MinusMu(usize),
    Same,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::PlusMu(i) => write!(f, "plus_mu({i})"),
            ComponentKind::MinusMu(i) => write!(f, "minus_mu({i})"),
            ComponentKind::Same => write!(f, "same"),
        }
    }
}

impl Serialize for ComponentKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDescriptor {
    pub weight: DominantWeight,
    #[serde(with = "super::rational_str")]
    pub conformal_weight: Rational,
    #[serde(with = "super::rational_str")]
    pub casimir: Rational,
    pub dimension: u64,
    pub kind: ComponentKind,
    #[serde(skip)]
    pub exceptional_partner: Option<usize>,
}

/// Irreducible components of `V_ρ ⊗ Rⁿ`.
///
/// Components are sorted by conformal weight, ascending, with ties (only the
/// exceptional pair) broken by descending lexicographic weight. Component 0 is
/// always the top term `ρ + μ₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionTable {
    pub rho: DominantWeight,
    pub components: Vec<ComponentDescriptor>,
    pub exceptional: bool,
}

impl DecompositionTable {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn conformal_weights(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.conformal_weight).collect()
    }

    /// Component indices grouped by equal conformal weight, in ascending order.
    /// Every group is a singleton except the exceptional pair.
    pub fn merged_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if self.components[g[0]].conformal_weight == c.conformal_weight => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        groups
    }

    /// Distinct conformal weights, ascending.
    pub fn distinct_weights(&self) -> Vec<Rational> {
        self.merged_groups()
            .iter()
            .map(|g| self.components[g[0]].conformal_weight)
            .collect()
    }

    pub fn total_dimension(&self) -> u64 {
        self.components.iter().map(|c| c.dimension).sum()
    }

    pub fn exceptional_pair(&self) -> Option<(usize, usize)> {
        self.components
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.exceptional_partner.filter(|&j| j > i).map(|j| (i, j)))
    }
}

/// Conformal weight from the closed form, zero-based `i`.
fn closed_form_weight(n: usize, rho: &DominantWeight, kind: ComponentKind) -> Rational {
    match kind {
        ComponentKind::PlusMu(i) => Rational::from_integer(i as i64) - rho.coords()[i].to_rational(),
        ComponentKind::MinusMu(i) => {
            Rational::from_integer(n as i64 - i as i64 - 2) + rho.coords()[i].to_rational()
        }
        ComponentKind::Same => Rational::new(n as i64 - 1, 2),
    }
}

/// Conformal weight as `c(λ) − c(ρ) − c(Rⁿ)`.
fn casimir_weight(rho: &DominantWeight, lambda: &DominantWeight) -> Rational {
    let c_vec = Rational::new(-(rho.n() as i64 - 1), 2);
    casimir_constant(lambda) - casimir_constant(rho) - c_vec
}

/// Decomposes `V_ρ ⊗ Rⁿ` into irreducibles with their conformal weights.
pub fn decompose(rho: &DominantWeight) -> DecompositionTable {
    let n = rho.n();
    let m = rho.rank();
    let mut candidates: Vec<(DominantWeight, ComponentKind)> = Vec::new();
    for i in 0..m {
        if let Some(w) = rho.shifted(i, HalfInt::ONE) {
            candidates.push((w, ComponentKind::PlusMu(i)));
        }
        if let Some(w) = rho.shifted(i, -HalfInt::ONE) {
            candidates.push((w, ComponentKind::MinusMu(i)));
        }
    }
    if n % 2 == 1 && rho.coords()[m - 1] >= HalfInt::HALF {
        candidates.push((rho.clone(), ComponentKind::Same));
    }

    let mut components: Vec<ComponentDescriptor> = candidates
        .into_iter()
        .map(|(weight, kind)| {
            let conformal_weight = closed_form_weight(n, rho, kind);
            assert_eq!(
                conformal_weight,
                casimir_weight(rho, &weight),
                "conformal weight formulas disagree for {weight} in {rho}"
            );
            ComponentDescriptor {
                casimir: casimir_constant(&weight),
                dimension: weyl_dimension(&weight),
                weight,
                conformal_weight,
                kind,
                exceptional_partner: None,
            }
        })
        .collect();
    components.sort_by(|a, b| {
        a.conformal_weight
            .cmp(&b.conformal_weight)
            .then_with(|| b.weight.cmp(&a.weight))
    });

    let exceptional = n % 2 == 0
        && m >= 2
        && rho.coords()[m - 2] >= HalfInt::ONE
        && rho.coords()[m - 1] == HalfInt::ZERO;
    if exceptional {
        let find = |k: ComponentKind| components.iter().position(|c| c.kind == k);
        let plus = find(ComponentKind::PlusMu(m - 1)).expect("ρ+μ_m is dominant");
        let minus = find(ComponentKind::MinusMu(m - 1)).expect("ρ−μ_m is dominant");
        components[plus].exceptional_partner = Some(minus);
        components[minus].exceptional_partner = Some(plus);
    }

    DecompositionTable { rho: rho.clone(), components, exceptional }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, s: &str) -> DominantWeight {
        DominantWeight::parse(n, s).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn spinor_five() {
        let t = decompose(&w(5, "1/2,1/2"));
        assert!(!t.exceptional);
        assert_eq!(t.len(), 2);
        assert_eq!(t.components[0].weight, w(5, "3/2,1/2"));
        assert_eq!(t.components[0].conformal_weight, r(-1, 2));
        assert_eq!(t.components[1].weight, w(5, "1/2,1/2"));
        assert_eq!(t.components[1].conformal_weight, r(2, 1));
        assert_eq!(t.components[1].kind, ComponentKind::Same);
        assert_eq!(t.components[0].dimension, 16);
    }

    #[test]
    fn trivial_five() {
        let t = decompose(&w(5, "0,0"));
        assert_eq!(t.len(), 1);
        assert_eq!(t.components[0].weight, w(5, "1,0"));
        assert_eq!(t.components[0].conformal_weight, r(0, 1));
        assert_eq!(t.components[0].dimension, 5);
    }

    /// Worked by hand: candidates ρ±e_i for ρ = (1,1,0), keep the dominant ones.
    #[test]
    fn two_forms_six() {
        let t = decompose(&w(6, "1,1,0"));
        assert!(t.exceptional);
        let got: Vec<(DominantWeight, Rational)> = t
            .components
            .iter()
            .map(|c| (c.weight.clone(), c.conformal_weight))
            .collect();
        assert_eq!(
            got,
            vec![
                (w(6, "2,1,0"), r(-1, 1)),
                (w(6, "1,1,1"), r(2, 1)),
                (w(6, "1,1,-1"), r(2, 1)),
                (w(6, "1,0,0"), r(4, 1)),
            ]
        );
        assert_eq!(t.exceptional_pair(), Some((1, 2)));
        assert_eq!(t.merged_groups(), vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(t.distinct_weights(), vec![r(-1, 1), r(2, 1), r(4, 1)]);
        assert_eq!(t.total_dimension(), 90);
    }

    #[test]
    fn negative_last_coordinate_orders_by_conformal_weight() {
        let t = decompose(&w(4, "3/2,-1/2"));
        let ms = t.conformal_weights();
        assert_eq!(ms, vec![r(-3, 2), r(1, 2), r(3, 2), r(7, 2)]);
        assert_eq!(t.components[0].kind, ComponentKind::PlusMu(0));
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&decompose(&w(5, "1/2,1/2"))).unwrap();
        assert_eq!(
            json,
            r#"{"rho":["1/2","1/2"],"components":[{"weight":["3/2","1/2"],"conformal_weight":"-1/2","casimir":"-15/4","dimension":16,"kind":"plus_mu(0)"},{"weight":["1/2","1/2"],"conformal_weight":"2","casimir":"-5/4","dimension":4,"kind":"same"}],"exceptional":false}"#
        );
    }

    fn arb_weight() -> impl Strategy<Value = DominantWeight> {
        (3usize..=8, proptest::collection::vec(0i64..4, 4), any::<bool>(), any::<bool>()).prop_map(
            |(n, seed, half, flip)| {
                let m = n / 2;
                let mut s = seed[..m].to_vec();
                s.sort_unstable_by(|a, b| b.cmp(a));
                let mut twice: Vec<i64> = s.iter().map(|t| 2 * t + i64::from(half)).collect();
                if n % 2 == 0 && flip {
                    twice[m - 1] = -twice[m - 1];
                }
                DominantWeight::from_twice(n, &twice).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn table_invariants(rho in arb_weight()) {
            let t = decompose(&rho);
            let n = rho.n() as u64;
            prop_assert_eq!(t.total_dimension(), n * weyl_dimension(&rho));
            prop_assert_eq!(t.components[0].kind, ComponentKind::PlusMu(0));
            prop_assert_eq!(t.components[0].conformal_weight, -rho.coords()[0].to_rational());
            let ms = t.conformal_weights();
            for (i, pair) in ms.windows(2).enumerate() {
                if pair[0] == pair[1] {
                    prop_assert!(t.exceptional);
                    prop_assert_eq!(t.components[i].exceptional_partner, Some(i + 1));
                } else {
                    prop_assert!(pair[0] < pair[1]);
                }
            }
            prop_assert_eq!(t.exceptional, t.distinct_weights().len() + 1 == t.len());
            if rho.n() % 2 == 1 && rho.coords()[rho.rank() - 1] >= HalfInt::HALF {
                let same = t.components.iter().find(|c| c.kind == ComponentKind::Same).unwrap();
                prop_assert_eq!(same.conformal_weight, Rational::new(rho.n() as i64 - 1, 2));
                prop_assert_eq!(&same.weight, &rho);
            }
        }

        /// With a nonnegative last coordinate the conformal-weight order is the
        /// reverse of the lexicographic order.
        #[test]
        fn lex_order_when_last_coordinate_nonnegative(rho in arb_weight()) {
            prop_assume!(rho.coords()[rho.rank() - 1] >= HalfInt::ZERO);
            let t = decompose(&rho);
            for pair in t.components.windows(2) {
                prop_assert!(pair[0].weight > pair[1].weight);
            }
        }
    }
}
