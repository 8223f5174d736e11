//! Scalar constants appearing in the inequalities: the generalized
//! Kantorovich constant, mean-ratio constants, the xi/psi pair, L(m,M), the
//! exponential ratio gamma_p and the Mond-Pecaric maximum.

use serde::{Deserialize, Serialize};

use crate::error::{OpIneqError, Result};
use crate::means::{scalar_mean, MeanDescriptor};

/// Two-sided spectral sandwich `m I <= A <= M I` with `0 < m < M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichBounds {
    pub m: f64,
    pub big_m: f64,
}

impl SandwichBounds {
    pub fn new(m: f64, big_m: f64) -> Result<Self> {
        if !(0.0 < m && m < big_m) {
            return Err(OpIneqError::InvalidParameter(format!(
                "sandwich bounds require 0 < m < M, got m={m}, M={big_m}"
            )));
        }
        Ok(SandwichBounds { m, big_m })
    }
}

/// Ratio sandwich `s A <= B <= t A` with `0 < s <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBounds {
    pub s: f64,
    pub t: f64,
}

impl RatioBounds {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !(0.0 < s && s <= t) {
            return Err(OpIneqError::InvalidParameter(format!(
                "ratio bounds require 0 < s <= t, got s={s}, t={t}"
            )));
        }
        Ok(RatioBounds { s, t })
    }
}

/// Four-point sandwich `0 < m2 I <= A <= m1 I < M1 I <= B <= M2 I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourPointBounds {
    pub m2: f64,
    pub m1: f64,
    pub big_m1: f64,
    pub big_m2: f64,
}

impl FourPointBounds {
    pub fn new(m2: f64, m1: f64, big_m1: f64, big_m2: f64) -> Result<Self> {
        if !(0.0 < m2 && m2 <= m1 && m1 < big_m1 && big_m1 <= big_m2) {
            return Err(OpIneqError::InvalidParameter(format!(
                "four-point bounds require 0 < m2 <= m1 < M1 <= M2, got ({m2}, {m1}, {big_m1}, {big_m2})"
            )));
        }
        Ok(FourPointBounds {
            m2,
            m1,
            big_m1,
            big_m2,
        })
    }
}

/// Secant line `a_f t + b_f` of a function over `[m, M]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecantCoefficients {
    pub a_f: f64,
    pub b_f: f64,
    pub m: f64,
    pub big_m: f64,
}

/// Generalized Kantorovich constant
/// `K(h,v) = (h^v - h)/((v-1)(h-1)) * ((v-1)/v * (h^v-1)/(h^v-h))^v`
/// with the limit value 1 at v in {0, 1}.
pub fn kantorovich_k(h: f64, v: f64) -> Result<f64> {
    if !(h > 0.0) || h == 1.0 {
        return Err(OpIneqError::DomainViolation {
            value: h,
            domain: "(0, inf) \\ {1}".into(),
        });
    }
    if v == 0.0 || v == 1.0 {
        return Ok(1.0);
    }
    let hv = h.powf(v);
    let front = (hv - h) / ((v - 1.0) * (h - 1.0));
    let inner = (v - 1.0) / v * (hv - 1.0) / (hv - h);
    Ok(front * inner.powf(v))
}

/// `C(m, M, v) = (m #_v M) / (m nabla_v M)` for `v >= 1`; the ratio constant
/// of the reversed arithmetic-geometric comparison.
pub fn ratio_c(m: f64, big_m: f64, v: f64) -> Result<f64> {
    if !(0.0 < m && m < big_m) {
        return Err(OpIneqError::InvalidParameter(format!(
            "ratio_c requires 0 < m < M, got m={m}, M={big_m}"
        )));
    }
    if v < 1.0 {
        return Err(OpIneqError::InvalidParameter(format!(
            "ratio_c requires v >= 1, got {v}"
        )));
    }
    let geo = m * (big_m / m).powf(v);
    let ari = (1.0 - v) * m + v * big_m;
    // For v >= 1 the denominator is at least M > 0.
    debug_assert!(ari > 0.0);
    Ok(geo / ari)
}

/// The constants of the two-sided ratio sandwich:
/// `xi  = max{ ((1-v)+vs)/s^v, ((1-v)+vt)/t^v }` and
/// `psi = max{ s^v((1-v)+v/s), t^v((1-v)+v/t) }`.
pub fn xi_psi(bounds: &RatioBounds, v: f64) -> (f64, f64) {
    let (s, t) = (bounds.s, bounds.t);
    let xi_at = |x: f64| ((1.0 - v) + v * x) / x.powf(v);
    let psi_at = |x: f64| x.powf(v) * ((1.0 - v) + v / x);
    let xi = xi_at(s).max(xi_at(t));
    let psi = psi_at(s).max(psi_at(t));
    (xi, psi)
}

/// `L(m, M) = (m nabla_lambda M)(m #_mu M) / ((m #_lambda M)(m !_mu M))`
/// with `lambda = min{v, 1-v}` and `mu = max{v, 1-v}`.
pub fn l_constant(bounds: &SandwichBounds, v: f64) -> Result<f64> {
    let (m, big_m) = (bounds.m, bounds.big_m);
    let lambda = v.min(1.0 - v);
    let mu = v.max(1.0 - v);
    let ari = scalar_mean(&MeanDescriptor::arithmetic(lambda), m, big_m)?;
    let geo_mu = scalar_mean(&MeanDescriptor::geometric(mu), m, big_m)?;
    let geo_lambda = scalar_mean(&MeanDescriptor::geometric(lambda), m, big_m)?;
    let har = scalar_mean(&MeanDescriptor::harmonic(mu), m, big_m)?;
    Ok((ari * geo_mu) / (geo_lambda * har))
}

/// `gamma_p = (e^{p m2} #_v e^{p M2}) / (e^{p m2} nabla_v e^{p M2})`,
/// evaluated through `ratio_c` at the exponential scale.
pub fn gamma_p(bounds: &FourPointBounds, p: f64, v: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(OpIneqError::InvalidParameter(format!("gamma_p requires p > 0, got {p}")));
    }
    if p * bounds.big_m2 > 700.0 {
        return Err(OpIneqError::Overflow {
            what: "p * M2".into(),
            value: p * bounds.big_m2,
            limit: 700.0,
        });
    }
    ratio_c((p * bounds.m2).exp(), (p * bounds.big_m2).exp(), v)
}

/// Secant coefficients of `f` over `[m, M]`.
pub fn secant_coeffs(f: impl Fn(f64) -> f64, bounds: &SandwichBounds) -> SecantCoefficients {
    let (m, big_m) = (bounds.m, bounds.big_m);
    let (fm, fbm) = (f(m), f(big_m));
    SecantCoefficients {
        a_f: (fbm - fm) / (big_m - m),
        b_f: (big_m * fm - m * fbm) / (big_m - m),
        m,
        big_m,
    }
}

const MOND_PECARIC_GRID: usize = 1024;

/// Mond-Pecaric constant `K(m, M, f) = max{ (a_f t + b_f)/f(t) : t in [m,M] }`,
/// located on a 1024-point grid and refined by golden-section search to an
/// interval of width 1e-12.
pub fn k_mond_pecaric(f: impl Fn(f64) -> f64, bounds: &SandwichBounds) -> Result<f64> {
    let sec = secant_coeffs(&f, bounds);
    let g = |t: f64| (sec.a_f * t + sec.b_f) / f(t);
    let (m, big_m) = (bounds.m, bounds.big_m);
    let step = (big_m - m) / (MOND_PECARIC_GRID - 1) as f64;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..MOND_PECARIC_GRID {
        let t = m + step * i as f64;
        let ft = f(t);
        if !(ft > 0.0) {
            return Err(OpIneqError::DomainViolation {
                value: t,
                domain: format!("f > 0 on [{m}, {big_m}]"),
            });
        }
        let gt = g(t);
        if gt > best {
            best = gt;
            best_i = i;
        }
    }
    // Golden-section refinement inside the bracket around the best grid point.
    let lo = m + step * best_i.saturating_sub(1) as f64;
    let hi = (m + step * (best_i + 1) as f64).min(big_m);
    Ok(best.max(golden_section_max(g, lo, hi, 1e-12)))
}

fn golden_section_max(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    while b - a > width {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    gc.max(gd)
}
