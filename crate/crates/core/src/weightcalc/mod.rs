//! Exact arithmetic over dominant weights of `so(n)`.
//!
//! Nothing in this module touches floating point. Weights live in ½ℤ and are
//! stored doubled; derived quantities (Casimir constants, conformal weights,
//! projector coefficients) are exact rationals.

mod bound;
mod decompose;
mod halfint;
mod vandermonde;
mod weight;

use num_traits::Signed;

pub use bound::{eigenvalue_bound, BoundReport};
pub use decompose::{decompose, ComponentDescriptor, ComponentKind, DecompositionTable};
pub use halfint::HalfInt;
pub use vandermonde::{vandermonde_coefficients, VandermondeCoefficients};
pub use weight::{casimir_constant, delta_vector, dominant_weights, weyl_dimension, DominantWeight};

use crate::error::{Error, Result};

pub type Rational = num_rational::Rational64;

/// Parses `"a"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("cannot parse {s:?} as a rational"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"p/q"` in lowest terms, or `"p"` when integral.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational_to_f64(value: &Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

pub(crate) fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

/// Serde adapter writing rationals as strings.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` and nested rows.
pub mod rational_vec_str {
    use super::{format_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn serialize_rows<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let row: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new(-3, 2));
        assert_eq!(format_rational(&Rational::new(-3, 2)), "-3/2");
        assert_eq!(format_rational(&Rational::new(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
