//! The outcome of one identity check.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Acceptance thresholds of a check. A check passes when either bound holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn rel(rel: f64) -> Self {
        Self { abs: 0.0, rel }
    }

    pub const fn abs(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }
}

/// One comparison `lhs` against `rhs`.
///
/// `pass` holds exactly when `abs_err <= tol_abs` or `rel_err <= tol_rel`.
/// A check that could not be evaluated carries the error text in `error`,
/// NaN in its numeric fields, and `pass = false`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(with = "f17")]
    pub lhs: f64,
    #[serde(with = "f17")]
    pub rhs: f64,
    #[serde(with = "f17")]
    pub abs_err: f64,
    #[serde(with = "f17")]
    pub rel_err: f64,
    #[serde(with = "f17")]
    pub tol_abs: f64,
    #[serde(with = "f17")]
    pub tol_rel: f64,
    pub pass: bool,
    pub evaluations: u64,
    #[serde(with = "f17")]
    pub wall_time_s: f64,
    pub error: Option<String>,
}

impl CheckReport {
    /// `lhs ≈ rhs`.
    pub fn compare(name: impl Into<String>, lhs: f64, rhs: f64, tol: Tolerance) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs != 0.0 { abs_err / rhs.abs() } else if abs_err == 0.0 { 0.0 } else { f64::INFINITY };
        Self::build(name.into(), lhs, rhs, abs_err, rel_err, tol)
    }

    /// `value >= bound`, allowing a relative shortfall of `slack`.
    pub fn at_least(name: impl Into<String>, value: f64, bound: f64, slack: f64) -> Self {
        let abs_err = if value.is_nan() { f64::NAN } else { (bound - value).max(0.0) };
        let rel_err = if abs_err == 0.0 { 0.0 } else { abs_err / bound.abs() };
        Self::build(name.into(), value, bound, abs_err, rel_err, Tolerance { abs: 0.0, rel: slack })
    }

    /// `value <= bound`, allowing a relative excess of `slack`.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64, slack: f64) -> Self {
        let abs_err = if value.is_nan() { f64::NAN } else { (value - bound).max(0.0) };
        let rel_err = if abs_err == 0.0 { 0.0 } else { abs_err / bound.abs() };
        Self::build(name.into(), value, bound, abs_err, rel_err, Tolerance { abs: 0.0, rel: slack })
    }

    /// A check whose evaluation failed.
    pub fn failed(name: impl Into<String>, err: impl fmt::Display) -> Self {
        Self {
            name: name.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol_abs: f64::NAN,
            tol_rel: f64::NAN,
            pass: false,
            evaluations: 0,
            wall_time_s: 0.0,
            error: Some(err.to_string()),
        }
    }

    fn build(name: String, lhs: f64, rhs: f64, abs_err: f64, rel_err: f64, tol: Tolerance) -> Self {
        Self {
            name,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol_abs: tol.abs,
            tol_rel: tol.rel,
            pass: abs_err <= tol.abs || rel_err <= tol.rel,
            evaluations: 1,
            wall_time_s: 0.0,
            error: None,
        }
    }

    pub fn with_evaluations(mut self, n: u64) -> Self {
        self.evaluations = n;
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_s = start.elapsed().as_secs_f64();
        self
    }

    /// Field-wise equality with NaN equal to itself; wall time is ignored.
    pub fn same_numbers(&self, other: &Self) -> bool {
        let eq = |a: f64, b: f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
        self.name == other.name
            && eq(self.lhs, other.lhs)
            && eq(self.rhs, other.rhs)
            && eq(self.abs_err, other.abs_err)
            && eq(self.rel_err, other.rel_err)
            && eq(self.tol_abs, other.tol_abs)
            && eq(self.tol_rel, other.tol_rel)
            && self.pass == other.pass
            && self.evaluations == other.evaluations
            && self.error == other.error
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "{verdict} {}: {e}", self.name),
            None => write!(
                f,
                "{verdict} {}: lhs={:.10e} rhs={:.10e} rel_err={:.2e}",
                self.name, self.lhs, self.rhs, self.rel_err
            ),
        }
    }
}

/// 17 significant digits, the shortest width that round-trips every `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Parses what [`format_f64`] writes.
pub fn parse_f64(s: &str) -> Result<f64, std::num::ParseFloatError> {
    s.trim().parse()
}

/// Serde adapter writing floats as JSON numbers with 17 significant digits,
/// and non-finite values as the strings "NaN", "inf", "-inf".
pub mod f17 {
    use serde::de::{self, Deserializer, Visitor};
    use serde::ser::{Error as _, Serializer};
    use serde_json::value::RawValue;

    use super::format_f64;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            let raw = RawValue::from_string(format_f64(*x)).map_err(S::Error::custom)?;
            serde::Serialize::serialize(&raw, s)
        } else {
            s.serialize_str(&format_f64(*x))
        }
    }

    struct F64Visitor;

    impl Visitor<'_> for F64Visitor {
        type Value = f64;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a number or one of \"NaN\", \"inf\", \"-inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            super::parse_f64(v).map_err(E::custom)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(F64Visitor)
    }
}
