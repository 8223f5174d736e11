//! Fixed catalog of operator monotone functions. Keeping the catalog closed
//! guarantees monotonicity by construction instead of trusting user-supplied
//! callables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OpIneqError, Result};

/// Identifier of a catalog function on (0, inf).
///
/// Increasing entries map (0, inf) into (0, inf): `pow:r` (`t^r`, 0 < r <= 1),
/// `moebius:c` (`t/(t+c)`, c > 0) and `log1p` (`ln(1+t)`). Decreasing
/// entries stay positive on (0, inf): `invpow:r` (`t^{-r}`, 0 < r <= 1) and
/// `resolvent:c` (`1/(t+c)`, c > 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MonotoneFunctionId {
    Pow(f64),
    Moebius(f64),
    Log1p,
    InvPow(f64),
    Resolvent(f64),
}

impl MonotoneFunctionId {
    pub fn pow(r: f64) -> Result<Self> {
        if !(0.0 < r && r <= 1.0) {
            return Err(OpIneqError::InvalidParameter(format!(
                "pow exponent must lie in (0,1], got {r}"
            )));
        }
        Ok(MonotoneFunctionId::Pow(r))
    }

    pub fn moebius(c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(OpIneqError::InvalidParameter(format!(
                "moebius shift must be positive, got {c}"
            )));
        }
        Ok(MonotoneFunctionId::Moebius(c))
    }

    pub fn inv_pow(r: f64) -> Result<Self> {
        if !(0.0 < r && r <= 1.0) {
            return Err(OpIneqError::InvalidParameter(format!(
                "invpow exponent must lie in (0,1], got {r}"
            )));
        }
        Ok(MonotoneFunctionId::InvPow(r))
    }

    pub fn resolvent(c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(OpIneqError::InvalidParameter(format!(
                "resolvent shift must be positive, got {c}"
            )));
        }
        Ok(MonotoneFunctionId::Resolvent(c))
    }

    pub fn is_increasing(&self) -> bool {
        matches!(
            self,
            MonotoneFunctionId::Pow(_) | MonotoneFunctionId::Moebius(_) | MonotoneFunctionId::Log1p
        )
    }

    /// Evaluates the function at `t > 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(OpIneqError::DomainViolation {
                value: t,
                domain: "(0, inf)".into(),
            });
        }
        Ok(match *self {
            MonotoneFunctionId::Pow(r) => t.powf(r),
            MonotoneFunctionId::Moebius(c) => t / (t + c),
            MonotoneFunctionId::Log1p => t.ln_1p(),
            MonotoneFunctionId::InvPow(r) => t.powf(-r),
            MonotoneFunctionId::Resolvent(c) => 1.0 / (t + c),
        })
    }
}

impl fmt::Display for MonotoneFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MonotoneFunctionId::Pow(r) => write!(f, "pow:{r}"),
            MonotoneFunctionId::Moebius(c) => write!(f, "moebius:{c}"),
            MonotoneFunctionId::Log1p => write!(f, "log1p"),
            MonotoneFunctionId::InvPow(r) => write!(f, "invpow:{r}"),
            MonotoneFunctionId::Resolvent(c) => write!(f, "resolvent:{c}"),
        }
    }
}

impl FromStr for MonotoneFunctionId {
    type Err = OpIneqError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OpIneqError::InvalidParameter(format!("unrecognized function `{s}`"));
        if s == "log1p" {
            return Ok(MonotoneFunctionId::Log1p);
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let x: f64 = arg.parse().map_err(|_| bad())?;
        match name {
            "pow" => MonotoneFunctionId::pow(x),
            "moebius" => MonotoneFunctionId::moebius(x),
            "invpow" => MonotoneFunctionId::inv_pow(x),
            "resolvent" => MonotoneFunctionId::resolvent(x),
            _ => Err(bad()),
        }
    }
}

/// Default increasing catalog used by the suite runner.
pub fn increasing_catalog() -> Vec<MonotoneFunctionId> {
    vec![
        MonotoneFunctionId::Pow(0.5),
        MonotoneFunctionId::Pow(1.0),
        MonotoneFunctionId::Moebius(1.0),
        MonotoneFunctionId::Log1p,
    ]
}

/// Default decreasing catalog used by the suite runner.
pub fn decreasing_catalog() -> Vec<MonotoneFunctionId> {
    vec![
        MonotoneFunctionId::InvPow(1.0),
        MonotoneFunctionId::InvPow(0.5),
        MonotoneFunctionId::Resolvent(1.0),
    ]
}
