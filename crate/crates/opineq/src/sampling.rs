//! Seeded, order-independent random generation of Hermitian matrices and
//! pairs satisfying the spectral hypotheses of the inequalities.
//!
//! PRNG contract: every draw comes from a ChaCha8 stream keyed by the master
//! seed, with the trial index selecting the stream. Identical
//! `(master, trial_index)` therefore reproduce bit-identical matrices no
//! matter how trials are scheduled. This generator choice is part of the
//! reproducibility contract and must not change silently.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::constants::{FourPointBounds, RatioBounds};
use crate::error::{OpIneqError, Result};
use crate::hermitian::{C64, HermitianMatrix};

/// Identifies one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSeed {
    pub master: u64,
    pub trial_index: u64,
}

impl SamplerSeed {
    pub fn new(master: u64, trial_index: u64) -> Self {
        SamplerSeed {
            master,
            trial_index,
        }
    }

    /// The ChaCha8 stream for this (master, trial) pair.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the R
/// diagonal phases folded into Q so R's diagonal is positive.
pub fn haar_unitary(n: usize, seed: &SamplerSeed) -> DMatrix<C64> {
    let mut rng = seed.rng();
    haar_unitary_from_rng(n, &mut rng)
}

pub(crate) fn haar_unitary_from_rng(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let scale = 1.0 / 2f64.sqrt();
    let g = DMatrix::from_fn(n, n, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal) * scale,
            rng.sample::<f64, _>(StandardNormal) * scale,
        )
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Hermitian matrix with eigenvalues drawn uniformly from `[lo, hi]` in a
/// Haar-random frame. With `force_endpoints` (and n >= 2) the extreme
/// eigenvalues are pinned to `lo` and `hi` exactly.
pub fn hermitian_with_spectrum(
    n: usize,
    lo: f64,
    hi: f64,
    force_endpoints: bool,
    seed: &SamplerSeed,
) -> Result<HermitianMatrix> {
    let mut rng = seed.rng();
    hermitian_with_spectrum_from_rng(n, lo, hi, force_endpoints, &mut rng)
}

pub(crate) fn hermitian_with_spectrum_from_rng(
    n: usize,
    lo: f64,
    hi: f64,
    force_endpoints: bool,
    rng: &mut ChaCha8Rng,
) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(OpIneqError::InvalidParameter("dimension must be >= 1".into()));
    }
    if !(lo <= hi) {
        return Err(OpIneqError::InvalidParameter(format!(
            "spectrum interval requires lo <= hi, got [{lo}, {hi}]"
        )));
    }
    let mut eigs: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if force_endpoints && n >= 2 {
        eigs[0] = lo;
        eigs[n - 1] = hi;
    }
    if n == 1 {
        return Ok(HermitianMatrix::from_real_diag(&eigs));
    }
    let u = haar_unitary_from_rng(n, rng);
    let mut scaled = u.clone();
    for (col, &l) in eigs.iter().enumerate() {
        for row in 0..n {
            scaled[(row, col)] *= C64::new(l, 0.0);
        }
    }
    Ok(HermitianMatrix::from_nearly_hermitian(&scaled * u.adjoint()))
}

/// Pair with `A` spectrum in `[m2, m1]` and `B` spectrum in `[M1, M2]`, in
/// independent Haar frames.
pub fn sandwich_pair(
    n: usize,
    bounds: &FourPointBounds,
    force_endpoints: bool,
    seed: &SamplerSeed,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let mut rng = seed.rng();
    let a = hermitian_with_spectrum_from_rng(n, bounds.m2, bounds.m1, force_endpoints, &mut rng)?;
    let b =
        hermitian_with_spectrum_from_rng(n, bounds.big_m1, bounds.big_m2, force_endpoints, &mut rng)?;
    Ok((a, b))
}

/// Pair with `s A <= B <= t A` by construction: `B = A^{1/2} C A^{1/2}` with
/// `C` spectrum in `[s, t]` and `A` spectrum in `[a_lo, a_hi]`.
pub fn ratio_pair(
    n: usize,
    bounds: &RatioBounds,
    a_spec: (f64, f64),
    force_endpoints: bool,
    seed: &SamplerSeed,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let (a_lo, a_hi) = a_spec;
    if !(0.0 < a_lo && a_lo <= a_hi) {
        return Err(OpIneqError::InvalidParameter(format!(
            "A spectrum must satisfy 0 < lo <= hi, got [{a_lo}, {a_hi}]"
        )));
    }
    let mut rng = seed.rng();
    let a = hermitian_with_spectrum_from_rng(n, a_lo, a_hi, force_endpoints, &mut rng)?;
    let c = hermitian_with_spectrum_from_rng(n, bounds.s, bounds.t, force_endpoints, &mut rng)?;
    let a_half = a.powm(0.5)?;
    let b = HermitianMatrix::from_nearly_hermitian(a_half.matrix() * c.matrix() * a_half.matrix());
    Ok((a, b))
}
