//! Weighted Kubo-Ando operator means: arithmetic, geometric, harmonic and the
//! power family, with extended weights outside [0,1] where the representing
//! function stays positive.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OpIneqError, Result};
use crate::hermitian::{HermitianMatrix, TolerancePolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    /// Power mean with exponent `r` in [-1,1], r != 0. r=1 is arithmetic,
    /// r=-1 harmonic; the geometric mean is kept as its own kind instead of
    /// the fragile r -> 0 limit.
    Power(f64),
}

/// A weighted two-variable operator mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanDescriptor {
    pub kind: MeanKind,
    pub weight: f64,
}

impl MeanDescriptor {
    pub fn arithmetic(v: f64) -> Self {
        MeanDescriptor {
            kind: MeanKind::Arithmetic,
            weight: v,
        }
    }

    pub fn geometric(v: f64) -> Self {
        MeanDescriptor {
            kind: MeanKind::Geometric,
            weight: v,
        }
    }

    pub fn harmonic(v: f64) -> Self {
        MeanDescriptor {
            kind: MeanKind::Harmonic,
            weight: v,
        }
    }

    pub fn power(r: f64, v: f64) -> Result<Self> {
        if r == 0.0 || !(-1.0..=1.0).contains(&r) {
            return Err(OpIneqError::InvalidParameter(format!(
                "power mean exponent must lie in [-1,1] and be nonzero, got {r}"
            )));
        }
        Ok(MeanDescriptor {
            kind: MeanKind::Power(r),
            weight: v,
        })
    }
}

impl fmt::Display for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.weight;
        match self.kind {
            MeanKind::Arithmetic => write!(f, "arithmetic:v={v}"),
            MeanKind::Geometric => write!(f, "geometric:v={v}"),
            MeanKind::Harmonic => write!(f, "harmonic:v={v}"),
            MeanKind::Power(r) => write!(f, "power:r={r},v={v}"),
        }
    }
}

impl FromStr for MeanDescriptor {
    type Err = OpIneqError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OpIneqError::InvalidParameter(format!("unrecognized mean `{s}`"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let parse_kv = |kv: &str, key: &str| -> Result<f64> {
            let (k, val) = kv.split_once('=').ok_or_else(bad)?;
            if k != key {
                return Err(bad());
            }
            val.parse().map_err(|_| bad())
        };
        match kind {
            "arithmetic" => Ok(MeanDescriptor::arithmetic(parse_kv(args, "v")?)),
            "geometric" => Ok(MeanDescriptor::geometric(parse_kv(args, "v")?)),
            "harmonic" => Ok(MeanDescriptor::harmonic(parse_kv(args, "v")?)),
            "power" => {
                let (r_part, v_part) = args.split_once(',').ok_or_else(bad)?;
                MeanDescriptor::power(parse_kv(r_part, "r")?, parse_kv(v_part, "v")?)
            }
            _ => Err(bad()),
        }
    }
}

/// Representing function value `f(t)` of the mean at `t > 0`, so that
/// `a sigma_v b = a * f(b/a)` for scalars.
pub fn rep_value(mean: &MeanDescriptor, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(OpIneqError::DomainViolation {
            value: t,
            domain: "(0, inf)".into(),
        });
    }
    let v = mean.weight;
    match mean.kind {
        MeanKind::Arithmetic => Ok((1.0 - v) + v * t),
        MeanKind::Geometric => Ok(t.powf(v)),
        MeanKind::Harmonic => {
            let d = (1.0 - v) + v / t;
            if d <= 0.0 {
                return Err(OpIneqError::DomainViolation {
                    value: d,
                    domain: "(0, inf) for (1-v)+v/t".into(),
                });
            }
            Ok(1.0 / d)
        }
        MeanKind::Power(r) => {
            let d = (1.0 - v) + v * t.powf(r);
            if d <= 0.0 {
                return Err(OpIneqError::DomainViolation {
                    value: d,
                    domain: "(0, inf) for (1-v)+v*t^r".into(),
                });
            }
            Ok(d.powf(1.0 / r))
        }
    }
}

/// Scalar mean `a sigma_v b` for positive scalars.
pub fn scalar_mean(mean: &MeanDescriptor, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(OpIneqError::DomainViolation {
            value: a,
            domain: "(0, inf)".into(),
        });
    }
    Ok(a * rep_value(mean, b / a)?)
}

/// `A sigma_v B` through the Kubo-Ando conjugation formula.
pub fn evaluate_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    mean: &MeanDescriptor,
    tol: &TolerancePolicy,
) -> Result<HermitianMatrix> {
    a.mean_conjugation(b, |t| rep_value(mean, t), tol)
}

/// Adjoint mean: `A tau* B = (A^{-1} tau B^{-1})^{-1}`. Arithmetic and
/// harmonic are mutually adjoint, geometric is self-adjoint, Power(r)
/// maps to Power(-r); the weight is preserved.
pub fn adjoint_mean(mean: &MeanDescriptor) -> MeanDescriptor {
    let kind = match mean.kind {
        MeanKind::Arithmetic => MeanKind::Harmonic,
        MeanKind::Harmonic => MeanKind::Arithmetic,
        MeanKind::Geometric => MeanKind::Geometric,
        MeanKind::Power(r) => MeanKind::Power(-r),
    };
    MeanDescriptor {
        kind,
        weight: mean.weight,
    }
}

/// Default betweenness grid: 41 log-spaced points on [1e-3, 1e3].
pub fn default_betweenness_grid() -> Vec<f64> {
    (0..41).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 40.0)).collect()
}

/// True iff the mean's representing function lies between the harmonic and
/// arithmetic representing functions at every grid point. Only meaningful
/// for weights in [0,1].
pub fn verify_betweenness(mean: &MeanDescriptor, grid: &[f64]) -> Result<bool> {
    if grid.is_empty() {
        return Err(OpIneqError::InvalidParameter("betweenness grid is empty".into()));
    }
    let v = mean.weight;
    let har = MeanDescriptor::harmonic(v);
    let ari = MeanDescriptor::arithmetic(v);
    // Tiny slack for the equality cases (power r=1 vs arithmetic).
    let eps = 1e-12;
    for &t in grid {
        let f = rep_value(mean, t)?;
        let lo = rep_value(&har, t)?;
        let hi = rep_value(&ari, t)?;
        if f < lo - eps * (1.0 + hi) || f > hi + eps * (1.0 + hi) {
            return Ok(false);
        }
    }
    Ok(true)
}
