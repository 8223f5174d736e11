//! Normalized (unital) positive linear maps and Ando's inequality
//! `Phi(A sigma B) <= Phi(A) sigma Phi(B)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{OpIneqError, Result};
use crate::hermitian::{loewner_compare, C64, HermitianMatrix, TolerancePolicy};
use crate::means::{evaluate_mean, MeanDescriptor};
use crate::report::{CheckResult, Side};
use crate::sampling::{haar_unitary, SamplerSeed};

/// A unital positive linear map with certifiable unitality and positivity.
#[derive(Debug, Clone)]
pub enum PositiveLinearMap {
    Identity,
    DiagonalPinching,
    /// `A -> V* A V` for an n-by-k isometry V (output dimension k).
    Compression(DMatrix<C64>),
    /// `A -> (1/N) sum U_i* A U_i` for unitaries with equal weights.
    UnitaryMixture(Vec<DMatrix<C64>>),
}

impl PositiveLinearMap {
    /// Validates `V* V = I_k` and builds a compression map.
    pub fn compression(v: DMatrix<C64>) -> Result<Self> {
        let k = v.ncols();
        let gram = v.adjoint() * &v;
        let dev = (&gram - DMatrix::<C64>::identity(k, k)).norm();
        if dev > 1e-10 * k as f64 {
            return Err(OpIneqError::NotIsometry { deviation: dev });
        }
        Ok(PositiveLinearMap::Compression(v))
    }

    /// Compression onto a Haar-random k-dimensional subspace of C^n.
    pub fn haar_compression(n: usize, k: usize, seed: &SamplerSeed) -> Result<Self> {
        if k == 0 || k > n {
            return Err(OpIneqError::InvalidParameter(format!(
                "compression rank must satisfy 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        let u = haar_unitary(n, seed);
        PositiveLinearMap::compression(u.columns(0, k).into_owned())
    }

    /// Equal-weight mixture of `count` Haar-random unitary conjugations.
    pub fn haar_unitary_mixture(n: usize, count: usize, seed: &SamplerSeed) -> Result<Self> {
        if count == 0 {
            return Err(OpIneqError::InvalidParameter(
                "unitary mixture needs at least one unitary".into(),
            ));
        }
        let us = (0..count)
            .map(|i| haar_unitary(n, &SamplerSeed::new(seed.master, seed.trial_index ^ (1 << 32) ^ i as u64)))
            .collect();
        Ok(PositiveLinearMap::UnitaryMixture(us))
    }

    /// Output dimension for inputs of dimension `n`.
    pub fn output_dim(&self, n: usize) -> usize {
        match self {
            PositiveLinearMap::Compression(v) => v.ncols(),
            _ => n,
        }
    }

    /// Parses a CLI token: `identity`, `pinch`, `compress:k`, `umix:N`.
    pub fn descriptor_token(&self) -> String {
        match self {
            PositiveLinearMap::Identity => "identity".into(),
            PositiveLinearMap::DiagonalPinching => "pinch".into(),
            PositiveLinearMap::Compression(v) => format!("compress:{}", v.ncols()),
            PositiveLinearMap::UnitaryMixture(us) => format!("umix:{}", us.len()),
        }
    }
}

/// CLI-level selector for a map; realized against a dimension and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Pinch,
    Compress(usize),
    UnitaryMixture(usize),
}

impl MapKind {
    /// Instantiates the map for input dimension `n`, sampling frames from
    /// `seed` where needed. A compression rank larger than `n` is clamped.
    pub fn realize(&self, n: usize, seed: &SamplerSeed) -> Result<PositiveLinearMap> {
        match *self {
            MapKind::Identity => Ok(PositiveLinearMap::Identity),
            MapKind::Pinch => Ok(PositiveLinearMap::DiagonalPinching),
            MapKind::Compress(k) => PositiveLinearMap::haar_compression(n, k.min(n), seed),
            MapKind::UnitaryMixture(count) => {
                PositiveLinearMap::haar_unitary_mixture(n, count, seed)
            }
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MapKind::Identity => write!(f, "identity"),
            MapKind::Pinch => write!(f, "pinch"),
            MapKind::Compress(k) => write!(f, "compress:{k}"),
            MapKind::UnitaryMixture(n) => write!(f, "umix:{n}"),
        }
    }
}

impl FromStr for MapKind {
    type Err = OpIneqError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OpIneqError::InvalidParameter(format!("unrecognized map `{s}`"));
        match s {
            "identity" => return Ok(MapKind::Identity),
            "pinch" => return Ok(MapKind::Pinch),
            _ => {}
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let k: usize = arg.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match name {
            "compress" => Ok(MapKind::Compress(k)),
            "umix" => Ok(MapKind::UnitaryMixture(k)),
            _ => Err(bad()),
        }
    }
}

/// Applies the map to a Hermitian matrix.
pub fn apply_map(phi: &PositiveLinearMap, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let n = a.dim();
    match phi {
        PositiveLinearMap::Identity => Ok(a.clone()),
        PositiveLinearMap::DiagonalPinching => {
            let diag: Vec<f64> = (0..n).map(|i| a.matrix()[(i, i)].re).collect();
            Ok(HermitianMatrix::from_real_diag(&diag))
        }
        PositiveLinearMap::Compression(v) => {
            if v.nrows() != n {
                return Err(OpIneqError::DimensionMismatch {
                    left: v.nrows(),
                    right: n,
                });
            }
            Ok(HermitianMatrix::from_nearly_hermitian(
                v.adjoint() * a.matrix() * v,
            ))
        }
        PositiveLinearMap::UnitaryMixture(us) => {
            let mut acc = DMatrix::<C64>::zeros(n, n);
            for u in us {
                if u.nrows() != n {
                    return Err(OpIneqError::DimensionMismatch {
                        left: u.nrows(),
                        right: n,
                    });
                }
                acc += u.adjoint() * a.matrix() * u;
            }
            Ok(HermitianMatrix::from_nearly_hermitian(
                acc / C64::new(us.len() as f64, 0.0),
            ))
        }
    }
}

/// Ando's inequality `Phi(A sigma B) <= Phi(A) sigma Phi(B)` as a Loewner
/// check, for weights in [0,1].
pub fn check_ando(
    phi: &PositiveLinearMap,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    mean: &MeanDescriptor,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let mut params = BTreeMap::new();
    params.insert("mean".into(), mean.to_string());
    params.insert("map".into(), phi.descriptor_token());
    params.insert("dim_in".into(), a.dim().to_string());
    params.insert("dim_out".into(), phi.output_dim(a.dim()).to_string());

    let lhs = apply_map(phi, &evaluate_mean(a, b, mean, tol)?)?;
    let phi_a = apply_map(phi, a)?;
    let phi_b = apply_map(phi, b)?;
    // Unital Phi on PD input stays PD; evaluate_mean re-checks and errors
    // rather than silently clipping.
    let rhs = evaluate_mean(&phi_a, &phi_b, mean, tol)?;
    let (_, margin) = loewner_compare(&lhs, &rhs, tol)?;
    let scale = lhs.spectral_norm()?.max(rhs.spectral_norm()?);
    let (ls, rs) = if lhs.dim() == 1 {
        (Side::Scalar(lhs.scalar()), Side::Scalar(rhs.scalar()))
    } else {
        (Side::Operator, Side::Operator)
    };
    Ok(CheckResult::from_margin(
        "ando", params, ls, rs, margin, None, scale, tol,
    ))
}
