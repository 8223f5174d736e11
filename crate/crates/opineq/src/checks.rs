//! One named, seeded check per inequality, each returning explicit sides and
//! margins. Norm-valued checks report `margin = rhs - lhs` and the ratio
//! `lhs/rhs`; Loewner checks report the smallest eigenvalue of the
//! difference. Instances outside a result's domain come back as
//! `NotApplicable` with the offending scalar recorded.

use std::collections::BTreeMap;

use crate::constants::{
    gamma_p, kantorovich_k, l_constant, ratio_c, xi_psi, FourPointBounds, RatioBounds,
    SandwichBounds,
};
use crate::error::{OpIneqError, Result};
use crate::funcs::MonotoneFunctionId;
use crate::hermitian::{loewner_compare, Domain, HermitianMatrix, TolerancePolicy};
use crate::means::{evaluate_mean, scalar_mean, verify_betweenness, MeanDescriptor};
use crate::norms::{norm_value, trace_of, NormDescriptor};
use crate::report::{CheckResult, Side};

/// Stable identifiers of all checks, in suite order.
pub const CHECK_IDS: [&str; 16] = [
    "gt-trace",
    "gt-classic",
    "ah-classic",
    "lemma21",
    "cor22",
    "thm23-ah",
    "thm23-gt",
    "ineq6",
    "lemma31",
    "lemma32",
    "cor33",
    "thm34",
    "cor35",
    "limit36",
    "polya-e",
    "prop37",
];

type Params = BTreeMap<String, String>;

fn base_params(entries: &[(&str, String)]) -> Params {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Applies a catalog function to a positive definite matrix.
fn apply_monotone(a: &HermitianMatrix, f: &MonotoneFunctionId) -> Result<HermitianMatrix> {
    // eval cannot fail once the spectrum is confirmed positive.
    a.apply_scalar_function(|t| f.eval(t).expect("positive spectrum"), Domain::Positive)
}

/// Loewner check `lhs <= rhs` packaged as a CheckResult.
fn loewner_result(
    check_id: &str,
    params: Params,
    lhs: &HermitianMatrix,
    rhs: &HermitianMatrix,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let (_, margin) = loewner_compare(lhs, rhs, tol)?;
    let scale = lhs.spectral_norm()?.max(rhs.spectral_norm()?);
    let (ls, rs) = if lhs.dim() == 1 && rhs.dim() == 1 {
        (Side::Scalar(lhs.scalar()), Side::Scalar(rhs.scalar()))
    } else {
        (Side::Operator, Side::Operator)
    };
    Ok(CheckResult::from_margin(
        check_id, params, ls, rs, margin, None, scale, tol,
    ))
}

/// Norm check `lhs <= rhs` packaged as a CheckResult.
fn norm_result(
    check_id: &str,
    params: Params,
    lhs: f64,
    rhs: f64,
    tol: &TolerancePolicy,
) -> CheckResult {
    let scale = lhs.abs().max(rhs.abs());
    CheckResult::from_margin(
        check_id,
        params,
        Side::Scalar(lhs),
        Side::Scalar(rhs),
        rhs - lhs,
        Some(lhs / rhs),
        scale,
        tol,
    )
}

/// Converts a `DomainViolation` from a fallible construction into a
/// `NotApplicable` result carrying the witness; other errors pass through.
fn or_not_applicable(
    check_id: &str,
    params: &Params,
    res: Result<CheckResult>,
) -> Result<CheckResult> {
    match res {
        Err(OpIneqError::DomainViolation { value, domain }) => Ok(CheckResult::not_applicable(
            check_id,
            params.clone(),
            &format!("{value:.6e} outside {domain}"),
        )),
        other => other,
    }
}

/// Trace Golden-Thompson: `tr e^{A+B} <= tr(e^A e^B)`.
pub fn check_gt_trace(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let norm_sum = a.spectral_norm()? + b.spectral_norm()?;
    if norm_sum > 100.0 {
        return Err(OpIneqError::Overflow {
            what: "|A| + |B|".into(),
            value: norm_sum,
            limit: 100.0,
        });
    }
    let params = base_params(&[]);
    let lhs = trace_of(&a.add(b)?.expm()?);
    let ea = a.expm()?;
    let eb = b.expm()?;
    let prod = ea.matrix() * eb.matrix();
    let tr: num_complex::Complex<f64> = (0..prod.nrows()).map(|i| prod[(i, i)]).sum();
    // tr(e^A e^B) is real for Hermitian A, B; only roundoff leaks into the
    // imaginary part.
    debug_assert!(tr.im.abs() <= 1e-10 * (1.0 + tr.re.abs()), "imag residue {}", tr.im);
    let rhs = tr.re;
    Ok(norm_result("gt-trace", params, lhs, rhs, tol))
}

/// Norm Golden-Thompson: `|(e^{pA} #_v e^{pB})^{1/p}| <= |e^{A nabla_v B}|`
/// for v in [0,1], p > 0.
pub fn check_gt_classic(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    v: f64,
    p: f64,
    norm: &NormDescriptor,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let scale = p * a.spectral_norm()?.max(b.spectral_norm()?);
    if scale > 100.0 {
        return Err(OpIneqError::Overflow {
            what: "p * max(|A|, |B|)".into(),
            value: scale,
            limit: 100.0,
        });
    }
    let norm = norm.clamped(a.dim());
    let params = base_params(&[
        ("v", v.to_string()),
        ("p", p.to_string()),
        ("norm", norm.to_string()),
    ]);
    let epa = a.scale(p).expm()?;
    let epb = b.scale(p).expm()?;
    let mean = evaluate_mean(&epa, &epb, &MeanDescriptor::geometric(v), tol)?;
    let lhs = norm_value(&mean.powm(1.0 / p)?, &norm)?;
    let rhs = norm_value(&a.weighted_sum(b, v)?.expm()?, &norm)?;
    Ok(norm_result("gt-classic", params, lhs, rhs, tol))
}

/// Classic Ando-Hiai plus the Nakamoto-Seo reverse with the generalized
/// Kantorovich constant, under `m I <= A, B <= M I`.
pub fn check_andohiai_classic(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    v: f64,
    p: f64,
    norm: &NormDescriptor,
    bounds: &SandwichBounds,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    let norm = norm.clamped(a.dim());
    let geo = MeanDescriptor::geometric(v);
    let direct = norm_value(&evaluate_mean(a, b, &geo, tol)?, &norm)?;
    let powered = norm_value(&evaluate_mean(&a.powm(p)?, &b.powm(p)?, &geo, tol)?, &norm)?;
    let h = bounds.big_m / bounds.m;
    let k = kantorovich_k(h.powf(2.0 * p), v)?;
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("p", p.to_string()),
            ("norm", norm.to_string()),
            ("m", bounds.m.to_string()),
            ("M", bounds.big_m.to_string()),
            ("part", part.to_string()),
        ])
    };
    Ok(vec![
        norm_result("ah-classic", mk("eq8"), powered, direct.powf(p), tol),
        norm_result("ah-classic", mk("eq11"), direct.powf(p), powered / k, tol),
    ])
}

/// Reversed mean comparisons for v outside [0,1] under the four-point
/// sandwich: the geometric chain against the arithmetic mean and the
/// harmonic chain against the geometric mean.
pub fn check_lemma21(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    bounds: &FourPointBounds,
    v: f64,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("bounds", format!("({},{},{},{})", bounds.m2, bounds.m1, bounds.big_m1, bounds.big_m2)),
            ("part", part.to_string()),
        ])
    };
    let mut out = Vec::with_capacity(4);
    let nabla = a.weighted_sum(b, v)?;
    let sharp = evaluate_mean(a, b, &MeanDescriptor::geometric(v), tol)?;

    // Geometric chain: c1 * (A nabla_v B) <= A #_v B <= c2 * (A nabla_v B).
    let geo_ratio = |m: f64, big_m: f64| -> Result<f64> {
        let num = scalar_mean(&MeanDescriptor::geometric(v), m, big_m)?;
        let den = scalar_mean(&MeanDescriptor::arithmetic(v), m, big_m)?;
        if den <= 0.0 {
            return Err(OpIneqError::DomainViolation {
                value: den,
                domain: "(0, inf) for m nabla_v M".into(),
            });
        }
        Ok(num / den)
    };
    let p_lo = mk("geo-lower");
    out.push(or_not_applicable("lemma21", &p_lo, (|| {
        let c1 = geo_ratio(bounds.m1, bounds.big_m1)?;
        loewner_result("lemma21", p_lo.clone(), &nabla.scale(c1), &sharp, tol)
    })())?);
    let p_hi = mk("geo-upper");
    out.push(or_not_applicable("lemma21", &p_hi, (|| {
        let c2 = geo_ratio(bounds.m2, bounds.big_m2)?;
        loewner_result("lemma21", p_hi.clone(), &sharp, &nabla.scale(c2), tol)
    })())?);

    // Harmonic chain: c1' * (A #_v B) <= A !_v B <= c2' * (A #_v B).
    let har_ratio = |m: f64, big_m: f64| -> Result<f64> {
        let num = scalar_mean(&MeanDescriptor::harmonic(v), m, big_m)?;
        let den = scalar_mean(&MeanDescriptor::geometric(v), m, big_m)?;
        Ok(num / den)
    };
    let p_lo = mk("har-lower");
    out.push(or_not_applicable("lemma21", &p_lo, (|| {
        let c1 = har_ratio(bounds.m1, bounds.big_m1)?;
        let harmonic = evaluate_mean(a, b, &MeanDescriptor::harmonic(v), tol)?;
        loewner_result("lemma21", p_lo.clone(), &sharp.scale(c1), &harmonic, tol)
    })())?);
    let p_hi = mk("har-upper");
    out.push(or_not_applicable("lemma21", &p_hi, (|| {
        let c2 = har_ratio(bounds.m2, bounds.big_m2)?;
        let harmonic = evaluate_mean(a, b, &MeanDescriptor::harmonic(v), tol)?;
        loewner_result("lemma21", p_hi.clone(), &harmonic, &sharp.scale(c2), tol)
    })())?);
    Ok(out)
}

/// Operator monotone image of the extended geometric mean:
/// `f(A #_v B) <= f(C A) #_v f(C B)` with `C = (m2 #_v M2)/(m2 nabla_v M2)`,
/// for v >= 1.
pub fn check_cor22(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    bounds: &FourPointBounds,
    v: f64,
    f: &MonotoneFunctionId,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    if !f.is_increasing() {
        return Err(OpIneqError::InvalidParameter(format!(
            "cor22 requires an increasing catalog function, got {f}"
        )));
    }
    let params = base_params(&[
        ("v", v.to_string()),
        ("f", f.to_string()),
        ("bounds", format!("({},{},{},{})", bounds.m2, bounds.m1, bounds.big_m1, bounds.big_m2)),
    ]);
    or_not_applicable("cor22", &params.clone(), (|| {
        let c = ratio_c(bounds.m2, bounds.big_m2, v)?;
        let sharp = evaluate_mean(a, b, &MeanDescriptor::geometric(v), tol)?;
        let lhs = apply_monotone(&sharp, f)?;
        let fa = apply_monotone(&a.scale(c), f)?;
        let fb = apply_monotone(&b.scale(c), f)?;
        let rhs = evaluate_mean(&fa, &fb, &MeanDescriptor::geometric(v), tol)?;
        loewner_result("cor22", params.clone(), &lhs, &rhs, tol)
    })())
}

/// Extended Ando-Hiai for v >= 1:
/// `|A^p #_v B^p| <= C_p |A #_v B|^p` with `C_p = (m2^p #_v M2^p)/(m2^p nabla_v M2^p)`.
pub fn check_thm23_ah(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    bounds: &FourPointBounds,
    v: f64,
    p: f64,
    norm: &NormDescriptor,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    if !(p > 1.0) {
        return Err(OpIneqError::InvalidParameter(format!(
            "thm23-ah requires p > 1, got {p}"
        )));
    }
    let norm = norm.clamped(a.dim());
    let params = base_params(&[
        ("v", v.to_string()),
        ("p", p.to_string()),
        ("norm", norm.to_string()),
        ("bounds", format!("({},{},{},{})", bounds.m2, bounds.m1, bounds.big_m1, bounds.big_m2)),
    ]);
    let c_p = ratio_c(bounds.m2.powf(p), bounds.big_m2.powf(p), v)?;
    let geo = MeanDescriptor::geometric(v);
    let lhs = norm_value(&evaluate_mean(&a.powm(p)?, &b.powm(p)?, &geo, tol)?, &norm)?;
    let direct = norm_value(&evaluate_mean(a, b, &geo, tol)?, &norm)?;
    Ok(norm_result("thm23-ah", params, lhs, c_p * direct.powf(p), tol))
}

/// Extended Golden-Thompson for v >= 1:
/// `|(e^{pA} #_v e^{pB})^{1/p}| <= gamma_p^{1/p} |e^{A nabla_v B}|` where
/// `ha`, `hb` are Hermitian exponents with spectra in `[m2, m1]` and
/// `[M1, M2]`, so the exponentials inherit the four-point hypothesis.
pub fn check_thm23_gt(
    ha: &HermitianMatrix,
    hb: &HermitianMatrix,
    bounds: &FourPointBounds,
    v: f64,
    p: f64,
    norm: &NormDescriptor,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let norm = norm.clamped(ha.dim());
    let params = base_params(&[
        ("v", v.to_string()),
        ("p", p.to_string()),
        ("norm", norm.to_string()),
        ("bounds", format!("({},{},{},{})", bounds.m2, bounds.m1, bounds.big_m1, bounds.big_m2)),
    ]);
    let gamma = gamma_p(bounds, p, v)?;
    let epa = ha.scale(p).expm()?;
    let epb = hb.scale(p).expm()?;
    let mean = evaluate_mean(&epa, &epb, &MeanDescriptor::geometric(v), tol)?;
    let lhs = norm_value(&mean.powm(1.0 / p)?, &norm)?;
    let base = norm_value(&ha.weighted_sum(hb, v)?.expm()?, &norm)?;
    Ok(norm_result("thm23-gt", params, lhs, gamma.powf(1.0 / p) * base, tol))
}

/// Two-sided mean comparison under the ratio sandwich `s A <= B <= t A`:
/// `(1/xi) A nabla_v B <= A #_v B` and `A #_v B <= psi A !_v B`.
pub fn check_ineq6(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    rb: &RatioBounds,
    v: f64,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    let (xi, psi) = xi_psi(rb, v);
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("s", rb.s.to_string()),
            ("t", rb.t.to_string()),
            ("part", part.to_string()),
        ])
    };
    let sharp = evaluate_mean(a, b, &MeanDescriptor::geometric(v), tol)?;
    let nabla = a.weighted_sum(b, v)?;
    let harmonic = evaluate_mean(a, b, &MeanDescriptor::harmonic(v), tol)?;
    Ok(vec![
        loewner_result("ineq6", mk("lower"), &nabla.scale(1.0 / xi), &sharp, tol)?,
        loewner_result("ineq6", mk("upper"), &sharp, &harmonic.scale(psi), tol)?,
    ])
}

/// Harmonic-mean subadditivity of operator monotone functions:
/// `f(A !_v B) <= f(A) !_v f(B)` for increasing f, reversed for the
/// decreasing catalog.
pub fn check_lemma31(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    v: f64,
    f: &MonotoneFunctionId,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    let params = base_params(&[
        ("v", v.to_string()),
        ("f", f.to_string()),
        ("direction", if f.is_increasing() { "<=" } else { ">=" }.to_string()),
    ]);
    or_not_applicable("lemma31", &params.clone(), (|| {
        let har = MeanDescriptor::harmonic(v);
        let mean_image = apply_monotone(&evaluate_mean(a, b, &har, tol)?, f)?;
        let image_mean = evaluate_mean(&apply_monotone(a, f)?, &apply_monotone(b, f)?, &har, tol)?;
        if f.is_increasing() {
            loewner_result("lemma31", params.clone(), &mean_image, &image_mean, tol)
        } else {
            loewner_result("lemma31", params.clone(), &image_mean, &mean_image, tol)
        }
    })())
}

fn require_between(mean: &MeanDescriptor) -> Result<()> {
    let grid = crate::means::default_betweenness_grid();
    if !verify_betweenness(mean, &grid)? {
        return Err(OpIneqError::InvalidParameter(format!(
            "mean {mean} is not between the harmonic and arithmetic means"
        )));
    }
    Ok(())
}

/// Ratio-sandwich comparison for arbitrary means between harmonic and
/// arithmetic: `f(A) sigma_v f(B) <= f(xi psi (A tau_v B))` and
/// `f((1/(xi psi)) A sigma_v B) <= f(A) tau_v f(B)`; both reversed for
/// decreasing f.
pub fn check_lemma32(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    rb: &RatioBounds,
    v: f64,
    f: &MonotoneFunctionId,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    require_between(sigma)?;
    require_between(tau)?;
    let (xi, psi) = xi_psi(rb, v);
    let c = xi * psi;
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("s", rb.s.to_string()),
            ("t", rb.t.to_string()),
            ("f", f.to_string()),
            ("sigma", sigma.to_string()),
            ("tau", tau.to_string()),
            ("part", part.to_string()),
        ])
    };
    let fa = apply_monotone(a, f)?;
    let fb = apply_monotone(b, f)?;
    let increasing = f.is_increasing();

    let p1 = mk("eq01");
    let r1 = or_not_applicable("lemma32", &p1, (|| {
        let lhs = evaluate_mean(&fa, &fb, sigma, tol)?;
        let rhs = apply_monotone(&evaluate_mean(a, b, tau, tol)?.scale(c), f)?;
        if increasing {
            loewner_result("lemma32", p1.clone(), &lhs, &rhs, tol)
        } else {
            loewner_result("lemma32", p1.clone(), &rhs, &lhs, tol)
        }
    })())?;

    let p2 = mk("eq001");
    let r2 = or_not_applicable("lemma32", &p2, (|| {
        let lhs = apply_monotone(&evaluate_mean(a, b, sigma, tol)?.scale(1.0 / c), f)?;
        let rhs = evaluate_mean(&fa, &fb, tau, tol)?;
        if increasing {
            loewner_result("lemma32", p2.clone(), &lhs, &rhs, tol)
        } else {
            loewner_result("lemma32", p2.clone(), &rhs, &lhs, tol)
        }
    })())?;
    Ok(vec![r1, r2])
}

/// Sandwich-bound version of the mean comparison with the L(m,M) constant:
/// `f(A) sigma_v f(B) <= f(L (A tau_v B))` and
/// `f((1/L)(A sigma_v B)) <= f(A) tau_v f(B)` for increasing f.
pub fn check_cor33(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    sb: &SandwichBounds,
    v: f64,
    f: &MonotoneFunctionId,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    if !f.is_increasing() {
        return Err(OpIneqError::InvalidParameter(format!(
            "cor33 requires an increasing catalog function, got {f}"
        )));
    }
    require_between(sigma)?;
    require_between(tau)?;
    let l = l_constant(sb, v)?;
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("m", sb.m.to_string()),
            ("M", sb.big_m.to_string()),
            ("f", f.to_string()),
            ("sigma", sigma.to_string()),
            ("tau", tau.to_string()),
            ("part", part.to_string()),
        ])
    };
    let fa = apply_monotone(a, f)?;
    let fb = apply_monotone(b, f)?;

    let p1 = mk("eq02");
    let r1 = or_not_applicable("cor33", &p1, (|| {
        let lhs = evaluate_mean(&fa, &fb, sigma, tol)?;
        let rhs = apply_monotone(&evaluate_mean(a, b, tau, tol)?.scale(l), f)?;
        loewner_result("cor33", p1.clone(), &lhs, &rhs, tol)
    })())?;
    let p2 = mk("eq002");
    let r2 = or_not_applicable("cor33", &p2, (|| {
        let lhs = apply_monotone(&evaluate_mean(a, b, sigma, tol)?.scale(1.0 / l), f)?;
        let rhs = evaluate_mean(&fa, &fb, tau, tol)?;
        loewner_result("cor33", p2.clone(), &lhs, &rhs, tol)
    })())?;
    Ok(vec![r1, r2])
}

/// Ando-Hiai for arbitrary means between harmonic and arithmetic:
/// `|A sigma_v B|^p <= L(m^p, M^p) |A^p tau_v B^p|` and
/// `|A^p sigma_v B^p| <= L(m^p, M^p) |A tau_v B|^p` for p > 1.
pub fn check_thm34(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    sb: &SandwichBounds,
    v: f64,
    p: f64,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    norm: &NormDescriptor,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    if !(p > 1.0) {
        return Err(OpIneqError::InvalidParameter(format!("thm34 requires p > 1, got {p}")));
    }
    require_between(sigma)?;
    require_between(tau)?;
    let norm = norm.clamped(a.dim());
    let lp = l_constant(&SandwichBounds::new(sb.m.powf(p), sb.big_m.powf(p))?, v)?;
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("p", p.to_string()),
            ("m", sb.m.to_string()),
            ("M", sb.big_m.to_string()),
            ("sigma", sigma.to_string()),
            ("tau", tau.to_string()),
            ("norm", norm.to_string()),
            ("part", part.to_string()),
        ])
    };
    let ap = a.powm(p)?;
    let bp = b.powm(p)?;
    let sigma_direct = norm_value(&evaluate_mean(a, b, sigma, tol)?, &norm)?;
    let tau_pow = norm_value(&evaluate_mean(&ap, &bp, tau, tol)?, &norm)?;
    let sigma_pow = norm_value(&evaluate_mean(&ap, &bp, sigma, tol)?, &norm)?;
    let tau_direct = norm_value(&evaluate_mean(a, b, tau, tol)?, &norm)?;
    Ok(vec![
        norm_result("thm34", mk("eq10"), sigma_direct.powf(p), lp * tau_pow, tol),
        norm_result("thm34", mk("eq12"), sigma_pow, lp * tau_direct.powf(p), tol),
    ])
}

/// Golden-Thompson for arbitrary means between harmonic and arithmetic,
/// two-sided with `L := L(e^{pm}, e^{pM})`:
/// `|(e^{pA} sigma_v e^{pB})^{1/p}| <= L^{1/p} |e^{A nabla_v B}|` and the
/// reverse with the roles of the two norms swapped.
pub fn check_cor35(
    ha: &HermitianMatrix,
    hb: &HermitianMatrix,
    sb: &SandwichBounds,
    v: f64,
    p: f64,
    sigma: &MeanDescriptor,
    norm: &NormDescriptor,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    if !(p > 0.0) {
        return Err(OpIneqError::InvalidParameter(format!("cor35 requires p > 0, got {p}")));
    }
    if p * sb.big_m > 700.0 {
        return Err(OpIneqError::Overflow {
            what: "p * M".into(),
            value: p * sb.big_m,
            limit: 700.0,
        });
    }
    require_between(sigma)?;
    let norm = norm.clamped(ha.dim());
    let l = l_constant(&SandwichBounds::new((p * sb.m).exp(), (p * sb.big_m).exp())?, v)?;
    let slack = l.powf(1.0 / p);
    let mk = |part: &str| {
        base_params(&[
            ("v", v.to_string()),
            ("p", p.to_string()),
            ("m", sb.m.to_string()),
            ("M", sb.big_m.to_string()),
            ("sigma", sigma.to_string()),
            ("norm", norm.to_string()),
            ("part", part.to_string()),
        ])
    };
    let epa = ha.scale(p).expm()?;
    let epb = hb.scale(p).expm()?;
    let mean = evaluate_mean(&epa, &epb, sigma, tol)?;
    let lhs = norm_value(&mean.powm(1.0 / p)?, &norm)?;
    let base = norm_value(&ha.weighted_sum(hb, v)?.expm()?, &norm)?;
    Ok(vec![
        norm_result("cor35", mk("upper"), lhs, slack * base, tol),
        norm_result("cor35", mk("lower"), base, slack * lhs, tol),
    ])
}

/// Normed limit `|(e^{pA} sigma_v e^{pB})^{1/p}| -> |e^{A nabla_v B}|` as
/// p -> 0+: the error must be non-increasing along the descending `p_list`
/// and small at the final p.
pub fn check_limit(
    ha: &HermitianMatrix,
    hb: &HermitianMatrix,
    v: f64,
    sigma: &MeanDescriptor,
    norm: &NormDescriptor,
    p_list: &[f64],
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    if p_list.is_empty() || p_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(OpIneqError::InvalidParameter(
            "p list must be strictly descending and nonempty".into(),
        ));
    }
    if *p_list.last().unwrap() < 1e-4 {
        return Err(OpIneqError::InvalidParameter(
            "p below 1e-4 loses precision in the 1/p power".into(),
        ));
    }
    require_between(sigma)?;
    let norm = norm.clamped(ha.dim());
    let params = base_params(&[
        ("v", v.to_string()),
        ("sigma", sigma.to_string()),
        ("norm", norm.to_string()),
        ("p_list", format!("{p_list:?}")),
    ]);
    let base = norm_value(&ha.weighted_sum(hb, v)?.expm()?, &norm)?;
    let mut errs = Vec::with_capacity(p_list.len());
    for &p in p_list {
        let epa = ha.scale(p).expm()?;
        let epb = hb.scale(p).expm()?;
        let mean = evaluate_mean(&epa, &epb, sigma, tol)?;
        let val = norm_value(&mean.powm(1.0 / p)?, &norm)?;
        errs.push((val - base).abs());
    }
    let jitter = 1e-12 * base.max(1.0);
    // The 1/p power amplifies eigenvalue roundoff by up to 1/p, so errors at
    // the numerical floor are treated as exact zeros before the
    // monotonicity test (otherwise commuting instances with true error 0
    // show noise-level increases).
    let floor = 1e-10 * base.max(1.0);
    let snapped: Vec<f64> = errs.iter().map(|&e| if e <= floor { 0.0 } else { e }).collect();
    let monotone = snapped.windows(2).all(|w| w[1] <= w[0] + jitter);
    let last = *errs.last().unwrap();
    let threshold = 0.01 * base;
    let margin = threshold - last;
    let holds = monotone && last <= threshold;
    let mut result = CheckResult::from_margin(
        "limit36",
        params,
        Side::Scalar(last),
        Side::Scalar(threshold),
        margin,
        None,
        base,
        tol,
    );
    if !monotone {
        result.holds = Some(false);
        result.status = crate::report::Status::Fail;
        result.notes = format!("error sequence not non-increasing: {errs:?}");
    } else {
        result.holds = Some(holds);
        result.notes = format!("errs = {errs:?}");
    }
    Ok(result)
}

/// Polya-type inequality through a unital positive linear map:
/// `f(Phi(A sigma_v B)) <= xi psi (f(Phi(A)) tau_v f(Phi(B)))`.
pub fn check_polya(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    sb: &SandwichBounds,
    v: f64,
    f: &MonotoneFunctionId,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    phi: &crate::maps::PositiveLinearMap,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    if !f.is_increasing() {
        return Err(OpIneqError::InvalidParameter(format!(
            "polya-e requires an increasing catalog function, got {f}"
        )));
    }
    require_between(sigma)?;
    require_between(tau)?;
    // m I <= A, B <= M I implies (m/M) A <= B <= (M/m) A.
    let rb = RatioBounds::new(sb.m / sb.big_m, sb.big_m / sb.m)?;
    let (xi, psi) = xi_psi(&rb, v);
    let params = base_params(&[
        ("v", v.to_string()),
        ("m", sb.m.to_string()),
        ("M", sb.big_m.to_string()),
        ("f", f.to_string()),
        ("sigma", sigma.to_string()),
        ("tau", tau.to_string()),
        ("map", phi.descriptor_token()),
    ]);
    or_not_applicable("polya-e", &params.clone(), (|| {
        let lhs = apply_monotone(
            &crate::maps::apply_map(phi, &evaluate_mean(a, b, sigma, tol)?)?,
            f,
        )?;
        let fpa = apply_monotone(&crate::maps::apply_map(phi, a)?, f)?;
        let fpb = apply_monotone(&crate::maps::apply_map(phi, b)?, f)?;
        let rhs = evaluate_mean(&fpa, &fpb, tau, tol)?.scale(xi * psi);
        loewner_result("polya-e", params.clone(), &lhs, &rhs, tol)
    })())
}

/// Mond-Pecaric bounds through a unital positive linear map:
/// `fDec(Phi(A)) tau_v fDec(Phi(B)) <= K(m,M,fDec) fDec(Phi(A sigma_v B))`
/// and `fInc(Phi(A sigma_v B)) <= K(m,M,1/fInc) (fInc(Phi(A)) tau_v fInc(Phi(B)))`.
pub fn check_prop37(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    sb: &SandwichBounds,
    v: f64,
    f_dec: &MonotoneFunctionId,
    f_inc: &MonotoneFunctionId,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    phi: &crate::maps::PositiveLinearMap,
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    if f_dec.is_increasing() || !f_inc.is_increasing() {
        return Err(OpIneqError::InvalidParameter(
            "prop37 needs one decreasing and one increasing catalog function".into(),
        ));
    }
    require_between(sigma)?;
    require_between(tau)?;
    let mk = |part: &str, f: &MonotoneFunctionId| {
        base_params(&[
            ("v", v.to_string()),
            ("m", sb.m.to_string()),
            ("M", sb.big_m.to_string()),
            ("f", f.to_string()),
            ("sigma", sigma.to_string()),
            ("tau", tau.to_string()),
            ("map", phi.descriptor_token()),
            ("part", part.to_string()),
        ])
    };
    let phi_mean = crate::maps::apply_map(phi, &evaluate_mean(a, b, sigma, tol)?)?;
    let phi_a = crate::maps::apply_map(phi, a)?;
    let phi_b = crate::maps::apply_map(phi, b)?;

    let p1 = mk("eee", f_dec);
    let r1 = or_not_applicable("prop37", &p1, (|| {
        let k = crate::constants::k_mond_pecaric(|t| f_dec.eval(t).expect("t in [m,M]"), sb)?;
        let lhs = evaluate_mean(
            &apply_monotone(&phi_a, f_dec)?,
            &apply_monotone(&phi_b, f_dec)?,
            tau,
            tol,
        )?;
        let rhs = apply_monotone(&phi_mean, f_dec)?.scale(k);
        loewner_result("prop37", p1.clone(), &lhs, &rhs, tol)
    })())?;

    let p2 = mk("eq3", f_inc);
    let r2 = or_not_applicable("prop37", &p2, (|| {
        let k = crate::constants::k_mond_pecaric(
            |t| 1.0 / f_inc.eval(t).expect("t in [m,M]"),
            sb,
        )?;
        let lhs = apply_monotone(&phi_mean, f_inc)?;
        let rhs = evaluate_mean(
            &apply_monotone(&phi_a, f_inc)?,
            &apply_monotone(&phi_b, f_inc)?,
            tau,
            tol,
        )?
        .scale(k);
        loewner_result("prop37", p2.clone(), &lhs, &rhs, tol)
    })())?;
    Ok(vec![r1, r2])
}
