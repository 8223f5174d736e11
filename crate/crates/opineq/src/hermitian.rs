//! Validated Hermitian matrices, spectral decomposition, functional calculus
//! and Loewner-order comparison. Everything else in the crate is built on top
//! of this module.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{OpIneqError, Result};

pub type C64 = Complex<f64>;

/// Absolute/relative tolerance pair used by comparisons throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        }
    }
}

impl TolerancePolicy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !abs_tol.is_finite() || !rel_tol.is_finite() || abs_tol < 0.0 || rel_tol < 0.0 {
            return Err(OpIneqError::InvalidParameter(format!(
                "tolerances must be finite and non-negative, got abs={abs_tol}, rel={rel_tol}"
            )));
        }
        Ok(TolerancePolicy { abs_tol, rel_tol })
    }

    /// Allowed slack for quantities of magnitude `scale`.
    pub fn slack(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }
}

/// Real-line domain restriction for scalar functions lifted to matrices.
#[derive(Debug, Clone, Copy)]
pub enum Domain {
    All,
    /// Open half line (0, inf).
    Positive,
    /// Open half line (lo, inf).
    GreaterThan(f64),
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Domain::All => x.is_finite(),
            Domain::Positive => x > 0.0,
            Domain::GreaterThan(lo) => x > lo,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Domain::All => "(-inf, inf)".to_string(),
            Domain::Positive => "(0, inf)".to_string(),
            Domain::GreaterThan(lo) => format!("({lo}, inf)"),
        }
    }
}

fn symmetrize(m: &DMatrix<C64>) -> DMatrix<C64> {
    let mut s = (m + m.adjoint()) * C64::new(0.5, 0.0);
    // Diagonal of a Hermitian matrix is real; drop the roundoff residue.
    for i in 0..s.nrows() {
        s[(i, i)] = C64::new(s[(i, i)].re, 0.0);
    }
    s
}

/// A complex Hermitian matrix. The stored entries are exactly Hermitian
/// (the constructor symmetrizes), so spectral routines never see drift.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: DMatrix<C64>,
}

impl HermitianMatrix {
    /// Validates a raw complex matrix as Hermitian within
    /// `1e-12 * max |entry|` (absolute on top of the policy's abs_tol floor)
    /// and returns the symmetrized matrix.
    pub fn validate(raw: &DMatrix<C64>, tol: &TolerancePolicy) -> Result<Self> {
        if raw.nrows() != raw.ncols() {
            return Err(OpIneqError::NotSquare {
                rows: raw.nrows(),
                cols: raw.ncols(),
            });
        }
        if raw.nrows() == 0 {
            return Err(OpIneqError::InvalidParameter("dimension must be >= 1".into()));
        }
        let max_abs = raw.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        let mut asym = 0.0_f64;
        for i in 0..raw.nrows() {
            for j in 0..raw.ncols() {
                let d = (raw[(i, j)] - raw[(j, i)].conj()).norm();
                asym = asym.max(d);
            }
        }
        let allowed = 1e-12 * max_abs + tol.abs_tol;
        if asym > allowed {
            return Err(OpIneqError::NotHermitian {
                asymmetry: asym,
                tolerance: allowed,
            });
        }
        Ok(HermitianMatrix {
            data: symmetrize(raw),
        })
    }

    /// Wraps a matrix that is Hermitian by construction, symmetrizing to
    /// suppress roundoff drift.
    pub fn from_nearly_hermitian(m: DMatrix<C64>) -> Self {
        HermitianMatrix {
            data: symmetrize(&m),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            data: DMatrix::identity(n, n),
        }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        HermitianMatrix { data: m }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    /// Value at (0,0); the scalar view of a 1x1 matrix.
    pub fn scalar(&self) -> f64 {
        self.data[(0, 0)].re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace_re(&self) -> f64 {
        (0..self.dim()).map(|i| self.data[(i, i)].re).sum()
    }

    /// Full spectral decomposition with eigenvalues sorted ascending.
    pub fn eigh(&self) -> Result<SpectralDecomposition> {
        let n = self.dim();
        let (raw_values, raw_vectors) =
            jacobi_eigh(&self.data, 64).ok_or(OpIneqError::ConvergenceFailure { dim: n })?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| raw_values[a].partial_cmp(&raw_values[b]).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
        let mut eigenvectors = DMatrix::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            eigenvectors.set_column(col, &raw_vectors.column(i));
        }
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Smallest and largest eigenvalue.
    pub fn spectrum_bounds(&self) -> Result<(f64, f64)> {
        let dec = self.eigh()?;
        Ok((dec.eigenvalues[0], dec.eigenvalues[dec.eigenvalues.len() - 1]))
    }

    /// Spectral (operator) norm: largest |eigenvalue|.
    pub fn spectral_norm(&self) -> Result<f64> {
        let (lo, hi) = self.spectrum_bounds()?;
        Ok(lo.abs().max(hi.abs()))
    }

    /// Lifts a scalar function through the spectral decomposition:
    /// `U diag(f(lambda)) U*`. Every eigenvalue must lie in `domain`.
    pub fn apply_scalar_function(
        &self,
        f: impl Fn(f64) -> f64,
        domain: Domain,
    ) -> Result<HermitianMatrix> {
        let dec = self.eigh()?;
        for &l in &dec.eigenvalues {
            if !domain.contains(l) {
                return Err(OpIneqError::DomainViolation {
                    value: l,
                    domain: domain.describe(),
                });
            }
        }
        Ok(HermitianMatrix::from_nearly_hermitian(
            dec.reconstruct_with(|l| f(l)),
        ))
    }

    /// `exp(A)` through the eigendecomposition.
    pub fn expm(&self) -> Result<HermitianMatrix> {
        self.apply_scalar_function(f64::exp, Domain::All)
    }

    /// `A^p` for positive definite A.
    pub fn powm(&self, p: f64) -> Result<HermitianMatrix> {
        self.apply_scalar_function(|l| l.powf(p), Domain::Positive)
    }

    pub fn scale(&self, c: f64) -> HermitianMatrix {
        HermitianMatrix {
            data: &self.data * C64::new(c, 0.0),
        }
    }

    /// Weighted arithmetic combination `(1-v) A + v B` (defined for all
    /// Hermitian operands, no positivity needed).
    pub fn weighted_sum(&self, other: &HermitianMatrix, v: f64) -> Result<HermitianMatrix> {
        if self.dim() != other.dim() {
            return Err(OpIneqError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(HermitianMatrix {
            data: &self.data * C64::new(1.0 - v, 0.0) + &other.data * C64::new(v, 0.0),
        })
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim() != other.dim() {
            return Err(OpIneqError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(HermitianMatrix {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim() != other.dim() {
            return Err(OpIneqError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(HermitianMatrix {
            data: &self.data - &other.data,
        })
    }

    /// `A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}` for positive definite A, B.
    ///
    /// The square roots come from one eigendecomposition of A, keeping the
    /// conjugation symmetric to machine precision. `g` is applied to the
    /// spectrum of `A^{-1/2} B A^{-1/2}` and may reject a point with
    /// `DomainViolation`.
    pub fn mean_conjugation(
        &self,
        b: &HermitianMatrix,
        g: impl Fn(f64) -> Result<f64>,
        tol: &TolerancePolicy,
    ) -> Result<HermitianMatrix> {
        if self.dim() != b.dim() {
            return Err(OpIneqError::DimensionMismatch {
                left: self.dim(),
                right: b.dim(),
            });
        }
        let dec_a = self.eigh()?;
        let min_a = dec_a.eigenvalues[0];
        if min_a <= tol.abs_tol {
            return Err(OpIneqError::NotPositiveDefinite {
                min_eigenvalue: min_a,
            });
        }
        let (min_b, _) = b.spectrum_bounds()?;
        if min_b <= tol.abs_tol {
            return Err(OpIneqError::NotPositiveDefinite {
                min_eigenvalue: min_b,
            });
        }
        let a_half = dec_a.reconstruct_with(|l| l.sqrt());
        let a_neg_half = dec_a.reconstruct_with(|l| 1.0 / l.sqrt());
        let w = HermitianMatrix::from_nearly_hermitian(&a_neg_half * b.matrix() * &a_neg_half);
        let dec_w = w.eigh()?;
        let gl: Vec<f64> = dec_w
            .eigenvalues
            .iter()
            .map(|&l| g(l))
            .collect::<Result<_>>()?;
        let gw = dec_w.reconstruct_from_values(&gl);
        Ok(HermitianMatrix::from_nearly_hermitian(&a_half * gw * &a_half))
    }
}

/// Cyclic complex Jacobi diagonalization: returns unsorted eigenvalues and
/// a unitary eigenvector frame. Rotations are applied until every
/// off-diagonal entry is below machine epsilon relative to the matrix
/// scale, so reconstruction error stays at machine precision even for
/// clustered spectra (where QR-iteration solvers can lose ~1e-9).
fn jacobi_eigh(m: &DMatrix<C64>, max_sweeps: usize) -> Option<(Vec<f64>, DMatrix<C64>)> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let diag = |a: &DMatrix<C64>| (0..n).map(|i| a[(i, i)].re).collect::<Vec<f64>>();
    if n == 1 {
        return Some((diag(&a), v));
    }
    let scale = a
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let stop = f64::EPSILON * scale;
    for _ in 0..max_sweeps {
        let mut max_off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                max_off = max_off.max(a[(p, q)].norm());
            }
        }
        if max_off <= stop {
            return Some((diag(&a), v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Phase-rotate the (p,q) plane so the pivot becomes real,
                // then apply the classical symmetric Jacobi rotation.
                let phase = apq / C64::new(r, 0.0);
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let g00 = C64::new(c, 0.0);
                let g01 = C64::new(s, 0.0);
                let g10 = -C64::new(s, 0.0) * phase.conj();
                let g11 = C64::new(c, 0.0) * phase.conj();
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * g00 + aiq * g10;
                    a[(i, q)] = aip * g01 + aiq * g11;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = g00.conj() * apj + g10.conj() * aqj;
                    a[(q, j)] = g01.conj() * apj + g11.conj() * aqj;
                }
                // The pivot is annihilated exactly and the diagonal stays real.
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * g00 + viq * g10;
                    v[(i, q)] = vip * g01 + viq * g11;
                }
            }
        }
    }
    None
}

/// Loewner-order comparison `X <= Y`. Returns `(holds, margin)` where
/// `margin = lambda_min(Y - X)` and `holds` allows the policy slack scaled by
/// the larger spectral norm of the two sides.
pub fn loewner_compare(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    tol: &TolerancePolicy,
) -> Result<(bool, f64)> {
    let diff = y.sub(x)?;
    let (margin, _) = diff.spectrum_bounds()?;
    let scale = x.spectral_norm()?.max(y.spectral_norm()?);
    Ok((margin >= -tol.slack(scale), margin))
}

/// Eigenvalues (ascending) and a unitary eigenvector frame.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

impl SpectralDecomposition {
    /// `U diag(f(lambda)) U*`, symmetrized.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.reconstruct_from_values(&values)
    }

    /// `U diag(values) U*`, symmetrized. `values[i]` replaces eigenvalue i.
    pub fn reconstruct_from_values(&self, values: &[f64]) -> DMatrix<C64> {
        assert_eq!(values.len(), self.eigenvalues.len());
        let n = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (col, &fl) in values.iter().enumerate() {
            let fl = C64::new(fl, 0.0);
            for row in 0..n {
                scaled[(row, col)] *= fl;
            }
        }
        symmetrize(&(scaled * self.eigenvectors.adjoint()))
    }
}
