//! Independent scalar formulas for the 1-by-1 equivalence criterion: every
//! quantity here is computed with plain f64 arithmetic, never through the
//! matrix kernel or the library's constants module.

/// Weighted arithmetic mean `(1-v) a + v b`.
pub fn ari(v: f64, a: f64, b: f64) -> f64 {
    (1.0 - v) * a + v * b
}

/// Weighted geometric mean `a^{1-v} b^v`.
pub fn geo(v: f64, a: f64, b: f64) -> f64 {
    a.powf(1.0 - v) * b.powf(v)
}

/// Weighted harmonic mean `((1-v)/a + v/b)^{-1}`.
pub fn har(v: f64, a: f64, b: f64) -> f64 {
    1.0 / ((1.0 - v) / a + v / b)
}

/// Weighted power mean `((1-v) a^r + v b^r)^{1/r}`.
pub fn pow_mean(r: f64, v: f64, a: f64, b: f64) -> f64 {
    ((1.0 - v) * a.powf(r) + v * b.powf(r)).powf(1.0 / r)
}

/// Mean selector matching the cycled kinds used by the oracle draws:
/// 0 geometric, 1 arithmetic, 2 harmonic, 3 power(1/2), 4 power(-1/2).
pub fn mean_by(kind: usize, v: f64, a: f64, b: f64) -> f64 {
    match kind {
        0 => geo(v, a, b),
        1 => ari(v, a, b),
        2 => har(v, a, b),
        3 => pow_mean(0.5, v, a, b),
        _ => pow_mean(-0.5, v, a, b),
    }
}

/// Generalized Kantorovich constant with limit value 1 at v in {0,1}.
pub fn kantorovich(h: f64, v: f64) -> f64 {
    if v == 0.0 || v == 1.0 {
        return 1.0;
    }
    let hv = h.powf(v);
    (hv - h) / ((v - 1.0) * (h - 1.0))
        * ((v - 1.0) / v * (hv - 1.0) / (hv - h)).powf(v)
}

/// `(m #_v M)/(m nabla_v M)` for v >= 1.
pub fn ratio_c(m: f64, big_m: f64, v: f64) -> f64 {
    m * (big_m / m).powf(v) / ((1.0 - v) * m + v * big_m)
}

/// The two ratio-sandwich constants over endpoints `{s, t}`.
pub fn xi_psi(s: f64, t: f64, v: f64) -> (f64, f64) {
    let xi_at = |x: f64| ((1.0 - v) + v * x) / x.powf(v);
    let psi_at = |x: f64| x.powf(v) * ((1.0 - v) + v / x);
    (xi_at(s).max(xi_at(t)), psi_at(s).max(psi_at(t)))
}

/// `L(m,M) = (m nabla_l M)(m #_u M)/((m #_l M)(m !_u M))`, l = min{v,1-v}.
pub fn l_constant(m: f64, big_m: f64, v: f64) -> f64 {
    let l = v.min(1.0 - v);
    let u = v.max(1.0 - v);
    ari(l, m, big_m) * geo(u, m, big_m) / (geo(l, m, big_m) * har(u, m, big_m))
}

/// `gamma_p` at the exponential scale of the outer endpoints.
pub fn gamma_p(m2: f64, big_m2: f64, p: f64, v: f64) -> f64 {
    ratio_c((p * m2).exp(), (p * big_m2).exp(), v)
}

/// Mond-Pecaric constant for `f(t) = 1/t`: `(m+M)^2/(4mM)`.
pub fn k_mp_inverse(m: f64, big_m: f64) -> f64 {
    (m + big_m) * (m + big_m) / (4.0 * m * big_m)
}

/// Mond-Pecaric constant for `f(t) = t^{-1/2}`: the maximum of
/// `(a t + b) sqrt(t)` with `(a, b)` the secant of `t^{-1/2}` over `[m, M]`,
/// attained at `t* = -b/(3a)` clamped to the interval.
pub fn k_mp_inv_sqrt(m: f64, big_m: f64) -> f64 {
    let fm = 1.0 / m.sqrt();
    let fbm = 1.0 / big_m.sqrt();
    let a = (fbm - fm) / (big_m - m);
    let b = (big_m * fm - m * fbm) / (big_m - m);
    let g = |t: f64| (a * t + b) * t.sqrt();
    let t_star = (-b / (3.0 * a)).clamp(m, big_m);
    g(t_star).max(g(m)).max(g(big_m))
}

/// Relative closeness at the 1e-12 scale used throughout the comparison.
pub fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()))
}
