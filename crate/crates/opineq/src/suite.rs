//! Trial-grid runner: executes (check x dim x trial) cells from a plan,
//! optionally in parallel, with deterministic output ordering, plus the
//! tightness scanner and the limit-study driver.
//!
//! Reproducibility contract: the random stream of a cell is derived only
//! from (master seed, check id, dim, trial index), and all other trial
//! parameters (weight, power, norm, mean kinds, function ids, map kind)
//! are chosen by cycling fixed grids with the trial index. Re-running a
//! cell therefore reproduces its margin to the last bit, independent of
//! execution order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::checks::{self, CHECK_IDS};
use crate::constants::{FourPointBounds, RatioBounds, SandwichBounds};
use crate::error::{OpIneqError, Result};
use crate::funcs::{decreasing_catalog, increasing_catalog, MonotoneFunctionId};
use crate::hermitian::TolerancePolicy;
use crate::maps::MapKind;
use crate::means::{MeanDescriptor, MeanKind};
use crate::norms::NormDescriptor;
use crate::report::{CheckResult, Status};
use crate::sampling::{ratio_pair, sandwich_pair, SamplerSeed};

/// A verification plan as configured from the CLI or a JSON file. Norms and
/// means are kept as display tokens so the plan echoes verbatim into
/// reports; [`SuitePlan::resolve`] parses and validates them.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct SuitePlan {
    /// Check ids to run; empty means all.
    pub checks: Vec<String>,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Override of the per-check weight grids. Weights outside a check's
    /// domain produce NotApplicable results with a witness.
    pub v_list: Option<Vec<f64>>,
    /// Override of the per-check power grids (ignored by limit36, which
    /// keeps its own descending list).
    pub p_list: Option<Vec<f64>>,
    /// Norm tokens, e.g. "schatten:2"; None uses per-check defaults.
    pub norms: Option<Vec<String>>,
    /// Mean tokens, e.g. "power:r=0.5,v=0"; only the kind is used — the
    /// weight always comes from the current trial's v.
    pub means: Option<Vec<String>>,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Default for SuitePlan {
    fn default() -> Self {
        let tol = TolerancePolicy::default();
        SuitePlan {
            checks: vec![],
            dims: vec![1, 2, 3, 5, 8],
            trials: 100,
            seed: 0,
            v_list: None,
            p_list: None,
            norms: None,
            means: None,
            tol_abs: tol.abs_tol,
            tol_rel: tol.rel_tol,
        }
    }
}

/// A validated plan with parsed descriptors.
#[derive(Debug, Clone)]
pub struct ResolvedPlan {
    pub checks: Vec<String>,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub v_list: Option<Vec<f64>>,
    pub p_list: Option<Vec<f64>>,
    pub norms: Option<Vec<NormDescriptor>>,
    pub mean_kinds: Option<Vec<MeanKind>>,
    pub tol: TolerancePolicy,
}

impl SuitePlan {
    pub fn resolve(&self) -> Result<ResolvedPlan> {
        let checks = if self.checks.is_empty() {
            CHECK_IDS.iter().map(|s| s.to_string()).collect()
        } else {
            for c in &self.checks {
                if !CHECK_IDS.contains(&c.as_str()) {
                    return Err(OpIneqError::UnknownCheckId(c.clone()));
                }
            }
            self.checks.clone()
        };
        if self.trials == 0 {
            return Err(OpIneqError::InvalidParameter("trials must be >= 1".into()));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0) {
            return Err(OpIneqError::InvalidParameter(
                "dims must be a nonempty list of integers >= 1".into(),
            ));
        }
        for list in [&self.v_list, &self.p_list] {
            if let Some(l) = list {
                if l.is_empty() {
                    return Err(OpIneqError::InvalidParameter(
                        "explicit v/p lists must be nonempty".into(),
                    ));
                }
            }
        }
        let norms = self
            .norms
            .as_ref()
            .map(|ns| ns.iter().map(|n| n.parse()).collect::<Result<Vec<_>>>())
            .transpose()?;
        if let Some(ns) = &norms {
            if ns.is_empty() {
                return Err(OpIneqError::InvalidParameter("norm list must be nonempty".into()));
            }
        }
        let mean_kinds = self
            .means
            .as_ref()
            .map(|ms| {
                ms.iter()
                    .map(|m| m.parse::<MeanDescriptor>().map(|d| d.kind))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        if let Some(ms) = &mean_kinds {
            if ms.is_empty() {
                return Err(OpIneqError::InvalidParameter("mean list must be nonempty".into()));
            }
        }
        if !(self.tol_abs >= 0.0 && self.tol_rel >= 0.0) {
            return Err(OpIneqError::InvalidParameter("tolerances must be >= 0".into()));
        }
        Ok(ResolvedPlan {
            checks,
            dims: self.dims.clone(),
            trials: self.trials,
            seed: self.seed,
            v_list: self.v_list.clone(),
            p_list: self.p_list.clone(),
            norms,
            mean_kinds,
            tol: TolerancePolicy {
                abs_tol: self.tol_abs,
                rel_tol: self.tol_rel,
            },
        })
    }
}

/// FNV-1a over (check id, dim, trial): the per-cell random stream.
fn trial_stream(check_id: &str, dim: usize, trial: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(check_id.as_bytes());
    eat(&(dim as u64).to_le_bytes());
    eat(&trial.to_le_bytes());
    h
}

// Salt so map frames draw from a stream disjoint from the operand stream.
const MAP_STREAM_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

fn default_sandwich() -> SandwichBounds {
    SandwichBounds::new(0.5, 2.0).expect("static bounds")
}

fn default_four_point() -> FourPointBounds {
    FourPointBounds::new(0.5, 1.0, 2.0, 4.0).expect("static bounds")
}

fn default_ratio() -> RatioBounds {
    RatioBounds::new(0.5, 2.0).expect("static bounds")
}

const RATIO_A_SPECTRUM: (f64, f64) = (0.5, 2.0);
const UNIT_V_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const EXTENDED_V_GRID: [f64; 4] = [1.25, 1.5, 2.0, 3.0];
const POSITIVE_P_GRID: [f64; 3] = [0.5, 1.0, 2.0];
const SUPER_P_GRID: [f64; 3] = [1.5, 2.0, 3.0];
const LIMIT_P_LIST: [f64; 7] = [1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001];

fn default_mean_kinds() -> Vec<MeanKind> {
    vec![
        MeanKind::Geometric,
        MeanKind::Arithmetic,
        MeanKind::Harmonic,
        MeanKind::Power(0.5),
        MeanKind::Power(-0.5),
    ]
}

fn make_mean(kind: MeanKind, v: f64) -> Result<MeanDescriptor> {
    match kind {
        MeanKind::Arithmetic => Ok(MeanDescriptor::arithmetic(v)),
        MeanKind::Geometric => Ok(MeanDescriptor::geometric(v)),
        MeanKind::Harmonic => Ok(MeanDescriptor::harmonic(v)),
        MeanKind::Power(r) => MeanDescriptor::power(r, v),
    }
}

fn pick<T: Clone>(list: &[T], idx: u64) -> T {
    list[(idx % list.len() as u64) as usize].clone()
}

/// Weight domain of a check, used to classify explicit v-list entries.
#[derive(Clone, Copy, PartialEq)]
enum VDomain {
    /// v in [0,1]
    Unit,
    /// v >= 1 (the reversed-regime results)
    AtLeastOne,
    /// v outside [0,1]
    OutsideUnit,
    /// check has no weight parameter
    None,
}

impl VDomain {
    fn contains(self, v: f64) -> bool {
        match self {
            VDomain::Unit => (0.0..=1.0).contains(&v),
            VDomain::AtLeastOne => v >= 1.0,
            VDomain::OutsideUnit => !(0.0..=1.0).contains(&v),
            VDomain::None => true,
        }
    }

    fn default_grid(self) -> &'static [f64] {
        match self {
            VDomain::Unit => &UNIT_V_GRID,
            VDomain::AtLeastOne | VDomain::OutsideUnit => &EXTENDED_V_GRID,
            VDomain::None => &[f64::NAN],
        }
    }
}

/// Power domain of a check.
#[derive(Clone, Copy, PartialEq)]
enum PDomain {
    Positive,
    GreaterThanOne,
    None,
}

impl PDomain {
    fn contains(self, p: f64) -> bool {
        match self {
            PDomain::Positive => p > 0.0,
            PDomain::GreaterThanOne => p > 1.0,
            PDomain::None => true,
        }
    }

    fn default_grid(self) -> &'static [f64] {
        match self {
            PDomain::Positive => &POSITIVE_P_GRID,
            PDomain::GreaterThanOne => &SUPER_P_GRID,
            PDomain::None => &[f64::NAN],
        }
    }
}

/// Norm families a check is verified against by default. Checks whose
/// power-of-norm manipulations are only valid for the operator norm
/// (the reverses with Kantorovich-type constants and the power
/// Ando-Hiai forms) stay on the spectral norm; the classical
/// Golden-Thompson forms are stated for every unitarily invariant norm.
fn default_norms(check_id: &str) -> Vec<NormDescriptor> {
    let all = || {
        vec![
            NormDescriptor::spectral(),
            NormDescriptor::schatten(1.0).expect("static"),
            NormDescriptor::schatten(2.0).expect("static"),
            NormDescriptor::ky_fan(2).expect("static"),
        ]
    };
    match check_id {
        "gt-classic" | "cor35" | "limit36" => all(),
        _ => vec![NormDescriptor::spectral()],
    }
}

fn domains(check_id: &str) -> (VDomain, PDomain) {
    match check_id {
        "gt-trace" => (VDomain::None, PDomain::None),
        "gt-classic" => (VDomain::Unit, PDomain::Positive),
        "ah-classic" => (VDomain::Unit, PDomain::GreaterThanOne),
        "lemma21" => (VDomain::OutsideUnit, PDomain::None),
        "cor22" => (VDomain::AtLeastOne, PDomain::None),
        "thm23-ah" => (VDomain::AtLeastOne, PDomain::GreaterThanOne),
        "thm23-gt" => (VDomain::AtLeastOne, PDomain::Positive),
        "ineq6" | "lemma31" | "lemma32" | "cor33" | "polya-e" | "prop37" | "limit36" => {
            (VDomain::Unit, PDomain::None)
        }
        "thm34" => (VDomain::Unit, PDomain::GreaterThanOne),
        "cor35" => (VDomain::Unit, PDomain::Positive),
        _ => (VDomain::None, PDomain::None),
    }
}

/// Per-cell overrides used by the tightness scanner and the limit driver.
#[derive(Debug, Clone, Default)]
pub(crate) struct CellOverride {
    pub v: Option<f64>,
    pub p: Option<f64>,
    pub norm: Option<NormDescriptor>,
    pub p_list: Option<Vec<f64>>,
    pub force_endpoints: bool,
}

/// Runs one (check, dim, trial) cell and annotates the results with the
/// cell coordinates.
pub(crate) fn run_cell(
    check_id: &str,
    dim: usize,
    trial: u64,
    plan: &ResolvedPlan,
    over: &CellOverride,
) -> Result<Vec<CheckResult>> {
    let stream = trial_stream(check_id, dim, trial);
    let seed = SamplerSeed::new(plan.seed, stream);
    let map_seed = SamplerSeed::new(plan.seed, stream ^ MAP_STREAM_SALT);
    let tol = &plan.tol;
    let force = over.force_endpoints;
    let (v_dom, p_dom) = domains(check_id);

    let cell_na = |witness: &str| -> Vec<CheckResult> {
        let mut params = BTreeMap::new();
        params.insert("dim".to_string(), dim.to_string());
        vec![CheckResult::not_applicable(check_id, params, witness)]
    };

    // Weight: explicit override > plan list > per-check default grid.
    let v = match (over.v, &plan.v_list) {
        (Some(v), _) => v,
        (None, Some(list)) => pick(list, trial),
        (None, None) => pick(v_dom.default_grid(), trial),
    };
    if v_dom != VDomain::None && !v_dom.contains(v) {
        return Ok(annotate(cell_na(&format!("v = {v} outside the check's weight domain")), dim, trial, plan.seed));
    }
    let p = match (over.p, &plan.p_list) {
        (Some(p), _) => p,
        (None, Some(list)) => pick(list, trial),
        (None, None) => pick(p_dom.default_grid(), trial),
    };
    if p_dom != PDomain::None && !p_dom.contains(p) {
        return Ok(annotate(cell_na(&format!("p = {p} outside the check's power domain")), dim, trial, plan.seed));
    }
    let norm = match (&over.norm, &plan.norms) {
        (Some(n), _) => n.clone(),
        (None, Some(list)) => pick(list, trial),
        (None, None) => pick(&default_norms(check_id), trial),
    };
    let kinds = plan.mean_kinds.clone().unwrap_or_else(default_mean_kinds);
    let sigma = make_mean(pick(&kinds, trial), v)?;
    let tau = make_mean(pick(&kinds, trial + 2), v)?;
    let inc_catalog = increasing_catalog();
    let dec_catalog = decreasing_catalog();
    let f_inc = pick(&inc_catalog, trial);
    let f_dec = pick(&dec_catalog, trial);
    // Increasing and decreasing entries interleaved, for the checks that
    // verify both monotonicity directions.
    let f_any: MonotoneFunctionId = {
        let mut both = inc_catalog.clone();
        both.extend(dec_catalog.clone());
        pick(&both, trial)
    };
    let map_kinds = [
        MapKind::Identity,
        MapKind::Pinch,
        MapKind::Compress(2),
        MapKind::UnitaryMixture(2),
    ];
    let sb = default_sandwich();
    let fp = default_four_point();
    let rb = default_ratio();

    let results = match check_id {
        "gt-trace" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, -1.0, 1.0, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, -1.0, 1.0, force, &mut rng)?;
            vec![checks::check_gt_trace(&a, &b, tol)?]
        }
        "gt-classic" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, -1.0, 1.0, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, -1.0, 1.0, force, &mut rng)?;
            vec![checks::check_gt_classic(&a, &b, v, p, &norm, tol)?]
        }
        "ah-classic" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            checks::check_andohiai_classic(&a, &b, v, p, &norm, &sb, tol)?
        }
        "lemma21" => {
            let (a, b) = sandwich_pair(dim, &fp, force, &seed)?;
            checks::check_lemma21(&a, &b, &fp, v, tol)?
        }
        "cor22" => {
            let (a, b) = sandwich_pair(dim, &fp, force, &seed)?;
            vec![checks::check_cor22(&a, &b, &fp, v, &f_inc, tol)?]
        }
        "thm23-ah" => {
            let (a, b) = sandwich_pair(dim, &fp, force, &seed)?;
            vec![checks::check_thm23_ah(&a, &b, &fp, v, p, &norm, tol)?]
        }
        "thm23-gt" => {
            let (ha, hb) = sandwich_pair(dim, &fp, force, &seed)?;
            vec![checks::check_thm23_gt(&ha, &hb, &fp, v, p, &norm, tol)?]
        }
        "ineq6" => {
            let (a, b) = ratio_pair(dim, &rb, RATIO_A_SPECTRUM, force, &seed)?;
            checks::check_ineq6(&a, &b, &rb, v, tol)?
        }
        "lemma31" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            vec![checks::check_lemma31(&a, &b, v, &f_any, tol)?]
        }
        "lemma32" => {
            let (a, b) = ratio_pair(dim, &rb, RATIO_A_SPECTRUM, force, &seed)?;
            checks::check_lemma32(&a, &b, &rb, v, &f_any, &sigma, &tau, tol)?
        }
        "cor33" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            checks::check_cor33(&a, &b, &sb, v, &f_inc, &sigma, &tau, tol)?
        }
        "thm34" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            checks::check_thm34(&a, &b, &sb, v, p, &sigma, &tau, &norm, tol)?
        }
        "cor35" => {
            let mut rng = seed.rng();
            let ha = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let hb = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            checks::check_cor35(&ha, &hb, &sb, v, p, &sigma, &norm, tol)?
        }
        "limit36" => {
            let mut rng = seed.rng();
            let ha = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let hb = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let p_list: Vec<f64> = over.p_list.clone().unwrap_or_else(|| LIMIT_P_LIST.to_vec());
            vec![checks::check_limit(&ha, &hb, v, &sigma, &norm, &p_list, tol)?]
        }
        "polya-e" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let phi = pick(&map_kinds, trial).realize(dim, &map_seed)?;
            vec![checks::check_polya(&a, &b, &sb, v, &f_inc, &sigma, &tau, &phi, tol)?]
        }
        "prop37" => {
            let mut rng = seed.rng();
            let a = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let b = crate::sampling::hermitian_with_spectrum_from_rng(dim, sb.m, sb.big_m, force, &mut rng)?;
            let phi = pick(&map_kinds, trial).realize(dim, &map_seed)?;
            checks::check_prop37(&a, &b, &sb, v, &f_dec, &f_inc, &sigma, &tau, &phi, tol)?
        }
        other => return Err(OpIneqError::UnknownCheckId(other.to_string())),
    };
    Ok(annotate(results, dim, trial, plan.seed))
}

fn annotate(mut results: Vec<CheckResult>, dim: usize, trial: u64, seed: u64) -> Vec<CheckResult> {
    for r in &mut results {
        r.params.insert("dim".to_string(), dim.to_string());
        r.params.insert("trial".to_string(), trial.to_string());
        r.params.insert("seed".to_string(), seed.to_string());
    }
    results
}

fn make_cells(plan: &ResolvedPlan) -> Vec<(String, usize, u64)> {
    let mut checks = plan.checks.clone();
    checks.sort();
    checks.dedup();
    let mut dims = plan.dims.clone();
    dims.sort_unstable();
    dims.dedup();
    let mut cells = Vec::with_capacity(checks.len() * dims.len() * plan.trials as usize);
    for c in &checks {
        for &d in &dims {
            for t in 0..plan.trials {
                cells.push((c.clone(), d, t));
            }
        }
    }
    cells
}

/// Runs the full plan sequentially. Results come back sorted by
/// (check id, dim, trial).
pub fn run_suite_sequential(plan: &ResolvedPlan) -> Result<Vec<CheckResult>> {
    let over = CellOverride::default();
    let mut out = Vec::new();
    for (c, d, t) in make_cells(plan) {
        out.extend(run_cell(&c, d, t, plan, &over)?);
    }
    Ok(out)
}

/// Runs the full plan, in parallel when the `parallel` feature is enabled.
/// Output order is identical to the sequential runner.
pub fn run_suite(plan: &ResolvedPlan) -> Result<Vec<CheckResult>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let over = CellOverride::default();
        let nested = make_cells(plan)
            .par_iter()
            .map(|(c, d, t)| run_cell(c, *d, *t, plan, &over))
            .collect::<Result<Vec<_>>>()?;
        Ok(nested.into_iter().flatten().collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_suite_sequential(plan)
    }
}

/// Checks whose results carry an lhs/rhs ratio, eligible for tightness
/// scanning.
pub const NORM_VALUED_CHECK_IDS: [&str; 7] = [
    "gt-trace",
    "gt-classic",
    "ah-classic",
    "thm23-ah",
    "thm23-gt",
    "thm34",
    "cor35",
];

/// One scanned grid cell: the largest observed lhs/rhs ratio over the
/// trials, and a digest of the instance attaining it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanCell {
    pub params: BTreeMap<String, String>,
    pub max_ratio: Option<f64>,
    pub argmax: Option<String>,
    /// True when the cell exceeded ratio 1 beyond tolerance — a violation
    /// of the inequality being scanned.
    pub violation: bool,
}

/// Scans a norm-valued check over a (dim x v x p) grid, `trials_per_cell`
/// endpoint-pinned trials per cell, reporting the maximum lhs/rhs ratio.
pub fn tightness_scan(
    check_id: &str,
    dims: &[usize],
    v_grid: &[f64],
    p_grid: &[f64],
    trials_per_cell: u64,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<Vec<ScanCell>> {
    if !NORM_VALUED_CHECK_IDS.contains(&check_id) {
        return Err(OpIneqError::UnknownCheckId(format!(
            "{check_id} is not a norm-valued check"
        )));
    }
    let plan = ResolvedPlan {
        checks: vec![check_id.to_string()],
        dims: dims.to_vec(),
        trials: trials_per_cell,
        seed,
        v_list: None,
        p_list: None,
        norms: None,
        mean_kinds: None,
        tol: *tol,
    };
    let (v_dom, p_dom) = domains(check_id);
    // Weightless/powerless checks collapse that grid axis to one cell.
    let vs: Vec<Option<f64>> = if v_dom == VDomain::None {
        vec![None]
    } else {
        v_grid.iter().map(|&v| Some(v)).collect()
    };
    let ps: Vec<Option<f64>> = if p_dom == PDomain::None {
        vec![None]
    } else {
        p_grid.iter().map(|&p| Some(p)).collect()
    };
    let mut out = Vec::new();
    for &dim in dims {
        for &v in &vs {
            for &p in &ps {
                let over = CellOverride {
                    v,
                    p,
                    norm: Some(NormDescriptor::spectral()),
                    p_list: None,
                    force_endpoints: true,
                };
                let mut max_ratio: Option<f64> = None;
                let mut argmax: Option<String> = None;
                for t in 0..trials_per_cell {
                    for r in run_cell(check_id, dim, t, &plan, &over)? {
                        if let (Some(ratio), Status::Pass | Status::Fail) = (r.ratio, r.status) {
                            if max_ratio.map_or(true, |m| ratio > m) {
                                max_ratio = Some(ratio);
                                argmax = Some(format!(
                                    "trial={t} part={} lhs={:?} rhs={:?}",
                                    r.params.get("part").map(String::as_str).unwrap_or("-"),
                                    r.lhs,
                                    r.rhs
                                ));
                            }
                        }
                    }
                }
                let mut params = BTreeMap::new();
                params.insert("check_id".to_string(), check_id.to_string());
                params.insert("dim".to_string(), dim.to_string());
                if let Some(v) = v {
                    params.insert("v".to_string(), v.to_string());
                }
                if let Some(p) = p {
                    params.insert("p".to_string(), p.to_string());
                }
                let violation =
                    max_ratio.map_or(false, |m| m > 1.0 + tol.slack(1.0));
                out.push(ScanCell {
                    params,
                    max_ratio,
                    argmax,
                    violation,
                });
            }
        }
    }
    Ok(out)
}

/// Limit-study driver: runs `limit36` over the dims/weights/means grid with
/// an explicit descending power list.
pub fn run_limit_study(
    dims: &[usize],
    trials: u64,
    seed: u64,
    v_list: Option<&[f64]>,
    p_list: &[f64],
    tol: &TolerancePolicy,
) -> Result<Vec<CheckResult>> {
    if p_list.is_empty() || p_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(OpIneqError::InvalidParameter(
            "limit power list must be strictly descending and nonempty".into(),
        ));
    }
    let plan = ResolvedPlan {
        checks: vec!["limit36".to_string()],
        dims: dims.to_vec(),
        trials,
        seed,
        v_list: v_list.map(|v| v.to_vec()),
        p_list: None,
        norms: None,
        mean_kinds: None,
        tol: *tol,
    };
    let over = CellOverride {
        p_list: Some(p_list.to_vec()),
        ..CellOverride::default()
    };
    let mut out = Vec::new();
    for (c, d, t) in make_cells(&plan) {
        out.extend(run_cell(&c, d, t, &plan, &over)?);
    }
    Ok(out)
}
