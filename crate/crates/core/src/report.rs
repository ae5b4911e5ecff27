//! Residual reports shared by all verifiers.

use std::collections::BTreeMap;

use serde::Serialize;

/// Default absolute Frobenius tolerance per unit of `√(rows·cols)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(identity: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Check {
            identity: identity.into(),
            params: BTreeMap::new(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// A check that records a value without a pass criterion of its own.
    pub fn info(identity: impl Into<String>, value: f64) -> Self {
        Check {
            identity: identity.into(),
            params: BTreeMap::new(),
            max_residual: value,
            tolerance: f64::INFINITY,
            pass: true,
        }
    }
}

/// A named list of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.tolerance.is_finite())
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Worst failing check, by ratio of residual to tolerance.
    pub fn worst(&self) -> Option<&Check> {
        let ratio = |c: &Check| {
            let r = c.max_residual / c.tolerance;
            if r.is_nan() {
                f64::INFINITY
            } else {
                r
            }
        };
        self.failures().max_by(|a, b| ratio(a).total_cmp(&ratio(b)))
    }

    pub fn find(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}

/// Scales the per-entry tolerance to a `rows × cols` Frobenius residual.
pub fn frobenius_tolerance(base: f64, rows: usize, cols: usize) -> f64 {
    base * ((rows * cols) as f64).sqrt().max(1.0)
}

/// Serializes `value` as JSON with sorted object keys and every
/// non-integer number written as `{:.16e}`; non-finite numbers become `null`.
/// Equal inputs give byte-identical output.
pub fn canonical_json(value: &impl Serialize) -> crate::Result<String> {
    let value = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&value, &mut out)?;
    Ok(out)
}

fn write_value(value: &serde_json::Value, out: &mut String) -> crate::Result<()> {
    use serde_json::Value;
    match value {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&serde_json::to_string(value)?),
        Value::Number(num) => match (num.as_i64(), num.as_u64(), num.as_f64()) {
            (Some(i), _, _) => out.push_str(&i.to_string()),
            (_, Some(u), _) => out.push_str(&u.to_string()),
            (_, _, Some(f)) if f.is_finite() => out.push_str(&format!("{f:.16e}")),
            _ => out.push_str("null"),
        },
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out)?;
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key)?);
                out.push(':');
                write_value(&map[key], out)?;
            }
            out.push('}');
        }
    }
    Ok(())
}
