//! Unitarily invariant norms on Hermitian matrices: Schatten-p and Ky Fan-k
//! families, plus the trace functional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OpIneqError, Result};
use crate::hermitian::HermitianMatrix;

/// A unitarily invariant norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormDescriptor {
    /// Schatten p-norm, `p >= 1`; `p = None` means the spectral norm (p = inf).
    Schatten(Option<f64>),
    /// Ky Fan k-norm: sum of the k largest singular values.
    KyFan(usize),
}

impl NormDescriptor {
    pub fn schatten(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(OpIneqError::InvalidParameter(format!(
                "Schatten exponent must satisfy p >= 1, got {p}"
            )));
        }
        Ok(NormDescriptor::Schatten(Some(p)))
    }

    pub fn spectral() -> Self {
        NormDescriptor::Schatten(None)
    }

    pub fn ky_fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(OpIneqError::InvalidParameter("Ky Fan index must be >= 1".into()));
        }
        Ok(NormDescriptor::KyFan(k))
    }

    /// Same norm with the Ky Fan index clamped to `dim` so the descriptor is
    /// evaluable on matrices of that dimension.
    pub fn clamped(&self, dim: usize) -> NormDescriptor {
        match *self {
            NormDescriptor::KyFan(k) => NormDescriptor::KyFan(k.min(dim)),
            other => other,
        }
    }
}

impl fmt::Display for NormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormDescriptor::Schatten(None) => write!(f, "schatten:inf"),
            NormDescriptor::Schatten(Some(p)) => write!(f, "schatten:{p}"),
            NormDescriptor::KyFan(k) => write!(f, "kyfan:{k}"),
        }
    }
}

impl FromStr for NormDescriptor {
    type Err = OpIneqError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OpIneqError::InvalidParameter(format!("unrecognized norm `{s}`"));
        let (family, arg) = s.split_once(':').ok_or_else(bad)?;
        match family {
            "schatten" => {
                if arg == "inf" {
                    Ok(NormDescriptor::spectral())
                } else {
                    let p: f64 = arg.parse().map_err(|_| bad())?;
                    NormDescriptor::schatten(p)
                }
            }
            "kyfan" => {
                let k: usize = arg.parse().map_err(|_| bad())?;
                NormDescriptor::ky_fan(k)
            }
            _ => Err(bad()),
        }
    }
}

/// Singular values of a Hermitian matrix: |eigenvalues|, descending.
pub fn singular_values(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let dec = a.eigh()?;
    let mut s: Vec<f64> = dec.eigenvalues.iter().map(|l| l.abs()).collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(s)
}

/// Evaluates a norm through the singular values.
pub fn norm_value(a: &HermitianMatrix, n: &NormDescriptor) -> Result<f64> {
    let s = singular_values(a)?;
    match *n {
        NormDescriptor::Schatten(None) => Ok(s[0]),
        NormDescriptor::Schatten(Some(p)) => {
            Ok(s.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p))
        }
        NormDescriptor::KyFan(k) => {
            if k > s.len() {
                return Err(OpIneqError::KExceedsDim { k, dim: s.len() });
            }
            Ok(s[..k].iter().sum())
        }
    }
}

/// Real trace of a Hermitian matrix.
pub fn trace_of(a: &HermitianMatrix) -> f64 {
    a.trace_re()
}
