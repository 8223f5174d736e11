//! Acceptance suite: eight end-to-end criteria, each printing one pass/fail
//! line. The scalar-equivalence criterion compares every check at dimension
//! one against the independent formulas in `oracle`.

mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opineq::checks;
use opineq::constants::{
    k_mond_pecaric, kantorovich_k, l_constant, xi_psi, FourPointBounds, RatioBounds,
    SandwichBounds,
};
use opineq::funcs::MonotoneFunctionId;
use opineq::hermitian::{HermitianMatrix, TolerancePolicy};
use opineq::maps::PositiveLinearMap;
use opineq::means::MeanDescriptor;
use opineq::norms::{norm_value, NormDescriptor};
use opineq::report::{CheckResult, Side, Status};
use opineq::sampling::{haar_unitary, hermitian_with_spectrum, SamplerSeed};
use opineq::suite::{run_suite, run_suite_sequential, tightness_scan, SuitePlan};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

/// Prints the per-criterion verdict line and panics with detail on failure.
fn verdict(name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("criterion {name}: pass"),
        Err(msg) => {
            println!("criterion {name}: FAIL ({msg})");
            panic!("criterion {name} failed: {msg}");
        }
    }
}

fn sc(side: &Side) -> f64 {
    match side {
        Side::Scalar(x) => *x,
        Side::Operator => panic!("expected a scalar side at dimension one"),
    }
}

fn one(x: f64) -> HermitianMatrix {
    HermitianMatrix::from_real_diag(&[x])
}

fn mean_desc(kind: usize, v: f64) -> MeanDescriptor {
    match kind {
        0 => MeanDescriptor::geometric(v),
        1 => MeanDescriptor::arithmetic(v),
        2 => MeanDescriptor::harmonic(v),
        3 => MeanDescriptor::power(0.5, v).unwrap(),
        _ => MeanDescriptor::power(-0.5, v).unwrap(),
    }
}

// ---------------------------------------------------------------- criterion 1

#[test]
fn criterion_1_full_suite() {
    verdict("1 full-suite-500-trials", (|| {
        let mut plan = SuitePlan::default();
        plan.trials = 500;
        let resolved = plan.resolve().map_err(|e| e.to_string())?;
        let results = run_suite(&resolved).map_err(|e| e.to_string())?;
        let fails: Vec<&CheckResult> =
            results.iter().filter(|r| r.status == Status::Fail).collect();
        if let Some(f) = fails.first() {
            return Err(format!(
                "{} failing results; first: {} {:?} margin {:?}",
                fails.len(),
                f.check_id,
                f.params,
                f.margin
            ));
        }
        for r in &results {
            if r.status == Status::NotApplicable && !r.notes.contains("domain violation") {
                return Err(format!(
                    "NotApplicable without witness: {} {:?}",
                    r.check_id, r.params
                ));
            }
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 2

/// Asserts that a result's recorded sides match the oracle pair.
fn expect_sides(r: &CheckResult, lhs: f64, rhs: f64) -> Result<(), String> {
    if !oracle::close(sc(&r.lhs), lhs) || !oracle::close(sc(&r.rhs), rhs) {
        return Err(format!(
            "{} {:?}: got ({:.17e}, {:.17e}), oracle ({lhs:.17e}, {rhs:.17e})",
            r.check_id,
            r.params.get("part"),
            sc(&r.lhs),
            sc(&r.rhs)
        ));
    }
    Ok(())
}

#[test]
fn criterion_2_scalar_oracle() {
    verdict("2 scalar-oracle-dimension-one", (|| {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
        let sqrt_f = MonotoneFunctionId::pow(0.5).unwrap();
        let inv_f = MonotoneFunctionId::inv_pow(1.0).unwrap();
        let moeb_f = MonotoneFunctionId::moebius(1.0).unwrap();
        let moeb = |t: f64| t / (t + 1.0);

        for draw in 0..100u64 {
            let kind = (draw % 5) as usize;
            let kind2 = ((draw + 2) % 5) as usize;
            // Common scalar draws.
            let v01: f64 = rng.gen_range(0.0..=1.0);
            let vgt1: f64 = rng.gen_range(1.0..=3.0);
            let p_pos: f64 = rng.gen_range(0.2..=3.0);
            let p_gt1: f64 = rng.gen_range(1.001..=3.0);

            // gt-trace: exponents in [-1, 1].
            let (x, y) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            let r = checks::check_gt_trace(&one(x), &one(y), &t).map_err(|e| e.to_string())?;
            expect_sides(&r, (x + y).exp(), x.exp() * y.exp())?;

            // gt-classic.
            let r = checks::check_gt_classic(
                &one(x), &one(y), v01, p_pos, &NormDescriptor::spectral(), &t,
            )
            .map_err(|e| e.to_string())?;
            expect_sides(
                &r,
                oracle::geo(v01, (p_pos * x).exp(), (p_pos * y).exp()).powf(1.0 / p_pos),
                oracle::ari(v01, x, y).exp(),
            )?;

            // ah-classic over the [0.5, 2] sandwich.
            let sb = SandwichBounds::new(0.5, 2.0).map_err(|e| e.to_string())?;
            let (a, b) = (rng.gen_range(0.5..=2.0), rng.gen_range(0.5..=2.0));
            let rs = checks::check_andohiai_classic(
                &one(a), &one(b), v01, p_pos, &NormDescriptor::spectral(), &sb, &t,
            )
            .map_err(|e| e.to_string())?;
            let powered = oracle::geo(v01, a.powf(p_pos), b.powf(p_pos));
            let direct_p = oracle::geo(v01, a, b).powf(p_pos);
            expect_sides(&rs[0], powered, direct_p)?;
            let k = oracle::kantorovich(4.0f64.powf(2.0 * p_pos), v01);
            expect_sides(&rs[1], direct_p, powered / k)?;

            // Four-point bounds with a in [m2, m1] and b in [M1, M2].
            let fp = FourPointBounds::new(0.4, 0.6, 1.5, 2.0).map_err(|e| e.to_string())?;
            let (fa, fb) = (rng.gen_range(0.4..=0.6), rng.gen_range(1.5..=2.0));

            // lemma21, four parts; the weight stays in [1, 1.2] so all four
            // weighted means remain positive.
            let v21: f64 = rng.gen_range(1.0..=1.2);
            let rs = checks::check_lemma21(&one(fa), &one(fb), &fp, v21, &t)
                .map_err(|e| e.to_string())?;
            let nabla21 = oracle::ari(v21, fa, fb);
            let sharp21 = oracle::geo(v21, fa, fb);
            let harm21 = oracle::har(v21, fa, fb);
            let c1 = oracle::geo(v21, 0.6, 1.5) / oracle::ari(v21, 0.6, 1.5);
            let c2 = oracle::geo(v21, 0.4, 2.0) / oracle::ari(v21, 0.4, 2.0);
            expect_sides(&rs[0], c1 * nabla21, sharp21)?;
            expect_sides(&rs[1], sharp21, c2 * nabla21)?;
            let h1 = oracle::har(v21, 0.6, 1.5) / oracle::geo(v21, 0.6, 1.5);
            let h2 = oracle::har(v21, 0.4, 2.0) / oracle::geo(v21, 0.4, 2.0);
            expect_sides(&rs[2], h1 * sharp21, harm21)?;
            expect_sides(&rs[3], harm21, h2 * sharp21)?;

            // cor22 with f = sqrt.
            let sharp = oracle::geo(vgt1, fa, fb);
            let r = checks::check_cor22(&one(fa), &one(fb), &fp, vgt1, &sqrt_f, &t)
                .map_err(|e| e.to_string())?;
            let c = oracle::ratio_c(0.4, 2.0, vgt1);
            expect_sides(
                &r,
                sharp.sqrt(),
                oracle::geo(vgt1, (c * fa).sqrt(), (c * fb).sqrt()),
            )?;

            // thm23-ah.
            let r = checks::check_thm23_ah(
                &one(fa), &one(fb), &fp, vgt1, p_gt1, &NormDescriptor::spectral(), &t,
            )
            .map_err(|e| e.to_string())?;
            let c_p = oracle::ratio_c(0.4f64.powf(p_gt1), 2.0f64.powf(p_gt1), vgt1);
            expect_sides(
                &r,
                oracle::geo(vgt1, fa.powf(p_gt1), fb.powf(p_gt1)),
                c_p * oracle::geo(vgt1, fa, fb).powf(p_gt1),
            )?;

            // thm23-gt: the four-point bounds constrain the exponents.
            let r = checks::check_thm23_gt(
                &one(fa), &one(fb), &fp, vgt1, p_pos, &NormDescriptor::spectral(), &t,
            )
            .map_err(|e| e.to_string())?;
            let gamma = oracle::gamma_p(0.4, 2.0, p_pos, vgt1);
            expect_sides(
                &r,
                oracle::geo(vgt1, (p_pos * fa).exp(), (p_pos * fb).exp()).powf(1.0 / p_pos),
                gamma.powf(1.0 / p_pos) * oracle::ari(vgt1, fa, fb).exp(),
            )?;

            // ineq6 under the ratio sandwich s A <= B <= t A.
            let rb = RatioBounds::new(0.5, 2.0).map_err(|e| e.to_string())?;
            let rho: f64 = rng.gen_range(0.5..=2.0);
            let (ra, rbv) = (a, rho * a);
            let (xi, psi) = oracle::xi_psi(0.5, 2.0, v01);
            let rs = checks::check_ineq6(&one(ra), &one(rbv), &rb, v01, &t)
                .map_err(|e| e.to_string())?;
            expect_sides(&rs[0], oracle::ari(v01, ra, rbv) / xi, oracle::geo(v01, ra, rbv))?;
            expect_sides(
                &rs[1],
                oracle::geo(v01, ra, rbv),
                psi * oracle::har(v01, ra, rbv),
            )?;

            // lemma31, alternating increasing sqrt and decreasing 1/t.
            let f = if draw % 2 == 0 { &sqrt_f } else { &inv_f };
            let r = checks::check_lemma31(&one(a), &one(b), v01, f, &t)
                .map_err(|e| e.to_string())?;
            let hmean = oracle::har(v01, a, b);
            if draw % 2 == 0 {
                expect_sides(&r, hmean.sqrt(), oracle::har(v01, a.sqrt(), b.sqrt()))?;
            } else {
                expect_sides(&r, oracle::har(v01, 1.0 / a, 1.0 / b), 1.0 / hmean)?;
            }

            // lemma32, same alternation; sigma/tau cycle the mean kinds.
            let sigma = mean_desc(kind, v01);
            let tau = mean_desc(kind2, v01);
            let cc = xi * psi;
            let rs = checks::check_lemma32(&one(ra), &one(rbv), &rb, v01, f, &sigma, &tau, &t)
                .map_err(|e| e.to_string())?;
            let s_img = oracle::mean_by(
                kind,
                v01,
                if draw % 2 == 0 { ra.sqrt() } else { 1.0 / ra },
                if draw % 2 == 0 { rbv.sqrt() } else { 1.0 / rbv },
            );
            let t_img = oracle::mean_by(
                kind2,
                v01,
                if draw % 2 == 0 { ra.sqrt() } else { 1.0 / ra },
                if draw % 2 == 0 { rbv.sqrt() } else { 1.0 / rbv },
            );
            let f_of = |x: f64| if draw % 2 == 0 { x.sqrt() } else { 1.0 / x };
            let eq01 = (s_img, f_of(cc * oracle::mean_by(kind2, v01, ra, rbv)));
            let eq001 = (f_of(oracle::mean_by(kind, v01, ra, rbv) / cc), t_img);
            if draw % 2 == 0 {
                expect_sides(&rs[0], eq01.0, eq01.1)?;
                expect_sides(&rs[1], eq001.0, eq001.1)?;
            } else {
                expect_sides(&rs[0], eq01.1, eq01.0)?;
                expect_sides(&rs[1], eq001.1, eq001.0)?;
            }

            // cor33 with the increasing Moebius function.
            let l = oracle::l_constant(0.5, 2.0, v01);
            let rs =
                checks::check_cor33(&one(a), &one(b), &sb, v01, &moeb_f, &sigma, &tau, &t)
                    .map_err(|e| e.to_string())?;
            expect_sides(
                &rs[0],
                oracle::mean_by(kind, v01, moeb(a), moeb(b)),
                moeb(l * oracle::mean_by(kind2, v01, a, b)),
            )?;
            expect_sides(
                &rs[1],
                moeb(oracle::mean_by(kind, v01, a, b) / l),
                oracle::mean_by(kind2, v01, moeb(a), moeb(b)),
            )?;

            // thm34.
            let lp = oracle::l_constant(0.5f64.powf(p_gt1), 2.0f64.powf(p_gt1), v01);
            let rs = checks::check_thm34(
                &one(a), &one(b), &sb, v01, p_gt1, &sigma, &tau,
                &NormDescriptor::spectral(), &t,
            )
            .map_err(|e| e.to_string())?;
            let (ap, bp) = (a.powf(p_gt1), b.powf(p_gt1));
            expect_sides(
                &rs[0],
                oracle::mean_by(kind, v01, a, b).powf(p_gt1),
                lp * oracle::mean_by(kind2, v01, ap, bp),
            )?;
            expect_sides(
                &rs[1],
                oracle::mean_by(kind, v01, ap, bp),
                lp * oracle::mean_by(kind2, v01, a, b).powf(p_gt1),
            )?;

            // cor35: a, b act as exponents with spectra in [0.5, 2].
            let slack = oracle::l_constant((p_pos * 0.5).exp(), (p_pos * 2.0).exp(), v01)
                .powf(1.0 / p_pos);
            let rs = checks::check_cor35(
                &one(a), &one(b), &sb, v01, p_pos, &sigma, &NormDescriptor::spectral(), &t,
            )
            .map_err(|e| e.to_string())?;
            let lhs35 =
                oracle::mean_by(kind, v01, (p_pos * a).exp(), (p_pos * b).exp()).powf(1.0 / p_pos);
            let base35 = oracle::ari(v01, a, b).exp();
            expect_sides(&rs[0], lhs35, slack * base35)?;
            expect_sides(&rs[1], base35, slack * lhs35)?;

            // limit36 along the default descending power list.
            let p_list = [1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001];
            let r = checks::check_limit(
                &one(x), &one(y), v01, &sigma, &NormDescriptor::spectral(), &p_list, &t,
            )
            .map_err(|e| e.to_string())?;
            let base = oracle::ari(v01, x, y).exp();
            let p_last = *p_list.last().unwrap();
            let err_last = (oracle::mean_by(kind, v01, (p_last * x).exp(), (p_last * y).exp())
                .powf(1.0 / p_last)
                - base)
                .abs();
            // The 1/p power amplifies last-digit rounding of the mean by up
            // to 1/p, so the error term is compared at 1e-10 of the base.
            let err_close = (sc(&r.lhs) - err_last).abs() <= 1e-10 * (1.0 + base);
            if !err_close || !oracle::close(sc(&r.rhs), 0.01 * base) {
                return Err(format!(
                    "limit36 sides ({:?}, {:?}) vs oracle ({err_last:.6e}, {:.6e})",
                    r.lhs,
                    r.rhs,
                    0.01 * base
                ));
            }

            // polya-e through the identity map.
            let r = checks::check_polya(
                &one(a), &one(b), &sb, v01, &moeb_f, &sigma, &tau,
                &PositiveLinearMap::Identity, &t,
            )
            .map_err(|e| e.to_string())?;
            let (xi_p, psi_p) = oracle::xi_psi(0.25, 4.0, v01);
            expect_sides(
                &r,
                moeb(oracle::mean_by(kind, v01, a, b)),
                xi_p * psi_p * oracle::mean_by(kind2, v01, moeb(a), moeb(b)),
            )?;

            // prop37 with f_dec = 1/t and f_inc = sqrt.
            let rs = checks::check_prop37(
                &one(a), &one(b), &sb, v01, &inv_f, &sqrt_f, &sigma, &tau,
                &PositiveLinearMap::Identity, &t,
            )
            .map_err(|e| e.to_string())?;
            let smean = oracle::mean_by(kind, v01, a, b);
            expect_sides(
                &rs[0],
                oracle::mean_by(kind2, v01, 1.0 / a, 1.0 / b),
                oracle::k_mp_inverse(0.5, 2.0) / smean,
            )?;
            let k_inc = oracle::k_mp_inv_sqrt(0.5, 2.0);
            let got_rhs = sc(&rs[1].rhs);
            let want_rhs = k_inc * oracle::mean_by(kind2, v01, a.sqrt(), b.sqrt());
            // The library locates this constant numerically; allow 1e-10.
            if !oracle::close(sc(&rs[1].lhs), smean.sqrt())
                || (got_rhs - want_rhs).abs() > 1e-10 * (1.0 + want_rhs)
            {
                return Err(format!(
                    "prop37 eq3 sides ({:?}, {got_rhs:.17e}) vs oracle ({:.17e}, {want_rhs:.17e})",
                    rs[1].lhs,
                    smean.sqrt()
                ));
            }
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 3

#[test]
fn criterion_3_constants() {
    verdict("3 scalar-constants", (|| {
        for h in [1.1, 2.0, 5.0, 10.0] {
            let got = kantorovich_k(h, 2.0).map_err(|e| e.to_string())?;
            let want = (h + 1.0) * (h + 1.0) / (4.0 * h);
            if (got - want).abs() > 1e-12 * (1.0 + want) {
                return Err(format!("K({h},2) = {got}, want {want}"));
            }
        }
        for v in [1e-6, -1e-6] {
            let got = kantorovich_k(2.0, v).map_err(|e| e.to_string())?;
            if (got - 1.0).abs() > 1e-5 {
                return Err(format!("K(2,{v}) = {got}, limit should be 1"));
            }
        }
        let sb = SandwichBounds::new(1.0, 4.0).map_err(|e| e.to_string())?;
        let got = l_constant(&sb, 0.5).map_err(|e| e.to_string())?;
        let want = 25.0 / 16.0;
        if (got - want).abs() > 1e-12 * want {
            return Err(format!("L(1,4,1/2) = {got}, want {want}"));
        }
        let rb = RatioBounds::new(0.5, 2.0).map_err(|e| e.to_string())?;
        for v in [0.0, 1.0] {
            let (xi, psi) = xi_psi(&rb, v);
            if (xi - 1.0).abs() > 1e-12 || (psi - 1.0).abs() > 1e-12 {
                return Err(format!("xi/psi at v={v}: ({xi}, {psi}), want (1, 1)"));
            }
        }
        let sb = SandwichBounds::new(1.0, 4.0).map_err(|e| e.to_string())?;
        let got = k_mond_pecaric(|t| 1.0 / t, &sb).map_err(|e| e.to_string())?;
        let want = 25.0 / 16.0;
        if (got - want).abs() > 1e-10 * want {
            return Err(format!("K(1,4,1/t) = {got}, want {want}"));
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 4

/// Parses the error sequence the limit check records in its notes.
fn parse_errs(notes: &str) -> Result<Vec<f64>, String> {
    let inner = notes
        .split_once('[')
        .and_then(|(_, rest)| rest.rsplit_once(']'))
        .map(|(body, _)| body)
        .ok_or_else(|| format!("no error list in notes `{notes}`"))?;
    inner
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect()
}

#[test]
fn criterion_4_limit_study() {
    verdict("4 small-exponent-limit", (|| {
        let t = tol();
        let p_list = [1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001];
        let sigmas = [
            MeanDescriptor::harmonic(0.0),
            MeanDescriptor::geometric(0.0),
            MeanDescriptor::power(0.5, 0.0).unwrap(),
        ];
        for trial in 0..20u64 {
            let n = if trial % 2 == 0 { 2 } else { 3 };
            let ha = hermitian_with_spectrum(n, -1.0, 1.0, false, &SamplerSeed::new(900, 2 * trial))
                .map_err(|e| e.to_string())?;
            let hb =
                hermitian_with_spectrum(n, -1.0, 1.0, false, &SamplerSeed::new(900, 2 * trial + 1))
                    .map_err(|e| e.to_string())?;
            for sigma0 in &sigmas {
                for v in [0.25, 0.5] {
                    let mut sigma = *sigma0;
                    sigma.weight = v;
                    let r = checks::check_limit(
                        &ha, &hb, v, &sigma, &NormDescriptor::spectral(), &p_list, &t,
                    )
                    .map_err(|e| e.to_string())?;
                    if r.status != Status::Pass {
                        return Err(format!(
                            "limit trial {trial} sigma {sigma} v={v}: {:?} notes {}",
                            r.status, r.notes
                        ));
                    }
                }
            }
        }
        // Commuting fixtures with the geometric mean are exact at every p.
        for (da, db) in [([0.5f64, 1.0, 2.0], [2.0f64, 0.7, 1.3]), ([1.0, 1.5, 0.8], [0.6, 1.1, 1.9])]
        {
            let ha = HermitianMatrix::from_real_diag(&da.map(f64::ln));
            let hb = HermitianMatrix::from_real_diag(&db.map(f64::ln));
            let r = checks::check_limit(
                &ha, &hb, 0.3, &MeanDescriptor::geometric(0.3), &NormDescriptor::spectral(),
                &p_list, &t,
            )
            .map_err(|e| e.to_string())?;
            let errs = parse_errs(&r.notes)?;
            if errs.iter().any(|&e| e > 1e-10) {
                return Err(format!("commuting fixture errors not exact: {errs:?}"));
            }
        }
        // The slack constant itself tends to 1 as p -> 0+.
        let p: f64 = 1e-3;
        let sb = SandwichBounds::new((p * 0.5).exp(), (p * 2.0).exp()).map_err(|e| e.to_string())?;
        let slack = l_constant(&sb, 0.3).map_err(|e| e.to_string())?.powf(1.0 / p);
        if (slack - 1.0).abs() > 1e-3 {
            return Err(format!("L^(1/p) at p=1e-3 is {slack}, should be near 1"));
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 5

#[test]
fn criterion_5_mean_axioms() {
    verdict("5 mean-axioms", (|| {
        let t = tol();
        for trial in 0..200u64 {
            let n = [2, 3, 5][(trial % 3) as usize];
            let a = hermitian_with_spectrum(n, 0.5, 2.0, false, &SamplerSeed::new(500, 2 * trial))
                .map_err(|e| e.to_string())?;
            let b =
                hermitian_with_spectrum(n, 0.5, 2.0, false, &SamplerSeed::new(500, 2 * trial + 1))
                    .map_err(|e| e.to_string())?;
            let v = 0.25 * (trial % 5) as f64;
            let mean = mean_desc((trial % 5) as usize, v);
            let near = |x: &HermitianMatrix, y: &HermitianMatrix, what: &str| {
                let dev = (x.matrix() - y.matrix()).norm();
                if dev > 1e-10 * (1.0 + x.frobenius_norm()) {
                    Err(format!("trial {trial} {what}: deviation {dev:.3e}"))
                } else {
                    Ok(())
                }
            };
            let ev = |x: &HermitianMatrix, y: &HermitianMatrix, m: &MeanDescriptor| {
                opineq::means::evaluate_mean(x, y, m, &t).map_err(|e| e.to_string())
            };
            // Identity: A sigma A = A.
            near(&ev(&a, &a, &mean)?, &a, "identity")?;
            // Homogeneity: (cA) sigma (cB) = c (A sigma B).
            let c = 1.0 + 0.01 * (trial % 70) as f64;
            near(
                &ev(&a.scale(c), &b.scale(c), &mean)?,
                &ev(&a, &b, &mean)?.scale(c),
                "homogeneity",
            )?;
            // Endpoint reduction.
            near(&ev(&a, &b, &mean_desc((trial % 5) as usize, 0.0))?, &a, "sigma_0 = A")?;
            near(&ev(&a, &b, &mean_desc((trial % 5) as usize, 1.0))?, &b, "sigma_1 = B")?;
            // Congruence invariance under a positive definite T.
            let tm = hermitian_with_spectrum(n, 0.3, 1.5, false, &SamplerSeed::new(501, trial))
                .map_err(|e| e.to_string())?;
            let conj = |x: &HermitianMatrix| {
                HermitianMatrix::from_nearly_hermitian(tm.matrix() * x.matrix() * tm.matrix())
            };
            near(
                &conj(&ev(&a, &b, &mean)?),
                &ev(&conj(&a), &conj(&b), &mean)?,
                "congruence",
            )?;
            // Harmonic <= geometric <= arithmetic for v in [0, 1].
            let vu = [0.25, 0.5, 0.75][(trial % 3) as usize];
            let hm = ev(&a, &b, &MeanDescriptor::harmonic(vu))?;
            let gm = ev(&a, &b, &MeanDescriptor::geometric(vu))?;
            let am = ev(&a, &b, &MeanDescriptor::arithmetic(vu))?;
            let (ok1, m1) =
                opineq::hermitian::loewner_compare(&hm, &gm, &t).map_err(|e| e.to_string())?;
            let (ok2, m2) =
                opineq::hermitian::loewner_compare(&gm, &am, &t).map_err(|e| e.to_string())?;
            if !ok1 || !ok2 {
                return Err(format!("trial {trial} mean ordering: margins {m1:.3e} {m2:.3e}"));
            }
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 6

#[test]
fn criterion_6_norm_axioms() {
    verdict("6 norm-axioms", (|| {
        let norms = [
            NormDescriptor::spectral(),
            NormDescriptor::schatten(1.0).map_err(|e| e.to_string())?,
            NormDescriptor::schatten(2.0).map_err(|e| e.to_string())?,
            NormDescriptor::ky_fan(2).map_err(|e| e.to_string())?,
        ];
        for trial in 0..200u64 {
            let n = [2, 3, 5][(trial % 3) as usize];
            let a = hermitian_with_spectrum(n, -2.0, 2.0, false, &SamplerSeed::new(600, 2 * trial))
                .map_err(|e| e.to_string())?;
            let b =
                hermitian_with_spectrum(n, -2.0, 2.0, false, &SamplerSeed::new(600, 2 * trial + 1))
                    .map_err(|e| e.to_string())?;
            let u = haar_unitary(n, &SamplerSeed::new(601, trial));
            let conj = HermitianMatrix::from_nearly_hermitian(&u * a.matrix() * u.adjoint());
            let sum = a.add(&b).map_err(|e| e.to_string())?;
            for norm in &norms {
                let norm = norm.clamped(n);
                let na = norm_value(&a, &norm).map_err(|e| e.to_string())?;
                let nb = norm_value(&b, &norm).map_err(|e| e.to_string())?;
                let nc = norm_value(&conj, &norm).map_err(|e| e.to_string())?;
                let ns = norm_value(&sum, &norm).map_err(|e| e.to_string())?;
                if (na - nc).abs() > 1e-10 * (1.0 + na) {
                    return Err(format!("trial {trial} {norm}: unitary invariance, {na} vs {nc}"));
                }
                if ns > na + nb + 1e-10 * (1.0 + na + nb) {
                    return Err(format!("trial {trial} {norm}: triangle, {ns} > {na} + {nb}"));
                }
            }
            // Coincidences: kyfan(1) = spectral, kyfan(n) = schatten(1).
            let spec = norm_value(&a, &NormDescriptor::spectral()).map_err(|e| e.to_string())?;
            let kf1 = norm_value(&a, &NormDescriptor::ky_fan(1).unwrap())
                .map_err(|e| e.to_string())?;
            let kfn = norm_value(&a, &NormDescriptor::ky_fan(n).unwrap())
                .map_err(|e| e.to_string())?;
            let s1 = norm_value(&a, &NormDescriptor::schatten(1.0).unwrap())
                .map_err(|e| e.to_string())?;
            if (spec - kf1).abs() > 1e-11 * (1.0 + spec) || (kfn - s1).abs() > 1e-11 * (1.0 + s1) {
                return Err(format!("trial {trial}: norm coincidences {spec} {kf1} {kfn} {s1}"));
            }
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 7

#[test]
fn criterion_7_determinism() {
    verdict("7 byte-level-determinism", (|| {
        let plan = SuitePlan {
            dims: vec![1, 2, 3],
            trials: 5,
            seed: 12345,
            ..SuitePlan::default()
        }
        .resolve()
        .map_err(|e| e.to_string())?;
        let first = run_suite(&plan).map_err(|e| e.to_string())?;
        let second = run_suite(&plan).map_err(|e| e.to_string())?;
        let sequential = run_suite_sequential(&plan).map_err(|e| e.to_string())?;
        let enc = |r: &Vec<CheckResult>| serde_json::to_string(r).expect("results serialize");
        if enc(&first) != enc(&second) {
            return Err("parallel runs differ between invocations".into());
        }
        if enc(&first) != enc(&sequential) {
            return Err("parallel and sequential runs differ".into());
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 8

#[test]
fn criterion_8_tightness() {
    verdict("8 tightness-at-v-one", (|| {
        let cells = tightness_scan(
            "thm23-ah",
            &[2, 3],
            &[1.0, 1.5, 2.0],
            &[1.5, 2.0],
            50,
            0,
            &tol(),
        )
        .map_err(|e| e.to_string())?;
        let mut saw_v1 = false;
        for cell in &cells {
            let ratio = cell
                .max_ratio
                .ok_or_else(|| format!("cell without ratio: {:?}", cell.params))?;
            if cell.violation || ratio > 1.0 + 1e-9 {
                return Err(format!("cell {:?} exceeds 1: ratio {ratio:.12}", cell.params));
            }
            if cell.params.get("v").map(String::as_str) == Some("1") {
                saw_v1 = true;
                if (ratio - 1.0).abs() > 1e-9 {
                    return Err(format!(
                        "v=1 cell {:?} not tight: ratio {ratio:.12}",
                        cell.params
                    ));
                }
            }
        }
        if !saw_v1 {
            return Err("no v=1 cell in the scan output".into());
        }
        Ok(())
    })());
}
