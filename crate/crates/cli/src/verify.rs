//! Grid-wide consistency checks between closed forms, matrix computations
//! and the brute-force optimizer, plus probes of the known printed
//! discrepancies.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use qdl_core::complementarity::{
    check_identity, free_identity_residual, predictability, predictability_printed,
    visibility_analytic, visibility_sweep, DEFAULT_PHASES,
};
use qdl_core::entanglement::{
    entropy_closed_form, info_threshold, meter_bob_entropy_printed, meter_threshold_sign_corrected,
    mutual_information, ppt_check, InfoThreshold, SeparabilityReport,
};
use qdl_core::nonlocality::{
    bell_closed_form, chsh_brute_force, combined_threshold_squared, exceeds_local_bound,
    horodecki_bmax, violation_boundary, BruteForceOptions,
};
use qdl_core::scenario::ab_state;
use qdl_core::tolerance::PSD;
use qdl_core::{Scenario, ScenarioParams};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::format::{fixed, residual};

pub const DEFAULT_RESOLUTION: usize = 13;
pub const DEFAULT_BRUTE_RESOLUTION: usize = 5;

const IDENTITY_TOL: f64 = 1e-9;
const SWEEP_TOL: f64 = 1e-5;
const BRUTE_TOL: f64 = 1e-5;
/// A documented discrepancy must exceed this to count as present.
const DISCREPANCY_FLOOR: f64 = 1e-6;
/// Points this close to a violation boundary are skipped by region checks.
const REGION_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    ClosedForm,
    BruteForce,
    Boundary,
    Ppt,
    Entropy,
    Threshold,
    Discrepancy,
    Predictability,
    Polarity,
    MeterThreshold,
    MeterBobEntropy,
}

impl Suite {
    /// What a plain `verify` runs.
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::ClosedForm,
        Suite::BruteForce,
        Suite::Boundary,
        Suite::Ppt,
        Suite::Entropy,
        Suite::Threshold,
        Suite::Discrepancy,
    ];

    pub const PROBES: [Suite; 4] = [
        Suite::Predictability,
        Suite::Polarity,
        Suite::MeterThreshold,
        Suite::MeterBobEntropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::ClosedForm => "closed-form",
            Suite::BruteForce => "brute-force",
            Suite::Boundary => "boundary",
            Suite::Ppt => "ppt",
            Suite::Entropy => "entropy",
            Suite::Threshold => "threshold",
            Suite::Discrepancy => "discrepancy",
            Suite::Predictability => "predictability",
            Suite::Polarity => "polarity",
            Suite::MeterThreshold => "meter-threshold",
            Suite::MeterBobEntropy => "meter-bob-entropy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain(Suite::PROBES)
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub resolution: usize,
    pub brute_resolution: usize,
    /// Replaces every residual tolerance when set.
    pub tolerance: Option<f64>,
    pub suites: Vec<Suite>,
    pub brute: BruteForceOptions,
    pub phases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_RESOLUTION,
            brute_resolution: DEFAULT_BRUTE_RESOLUTION,
            tolerance: None,
            suites: Suite::ALL.to_vec(),
            brute: BruteForceOptions::default(),
            phases: DEFAULT_PHASES,
        }
    }
}

impl VerifyConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn grid(&self) -> Vec<f64> {
        grid(self.resolution)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expect {
    /// A residual strictly below the bound.
    Below(f64),
    /// A count of offending points; must be zero.
    Zero,
    /// A documented discrepancy that must be present.
    Above(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expect: Expect,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, expect: Expect) -> Self {
        Self {
            name: name.into(),
            value,
            expect,
        }
    }

    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::Below(t) => self.value < t,
            Expect::Zero => self.value == 0.0,
            Expect::Above(t) => self.value > t,
        }
    }

    fn render(&self) -> String {
        let (value, bound) = match self.expect {
            Expect::Below(t) => (residual(self.value), format!("< {}", residual(t))),
            Expect::Zero => (format!("{}", self.value), "== 0".to_string()),
            Expect::Above(t) => (residual(self.value), format!("> {}", residual(t))),
        };
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        format!(
            "  {:<44} {:>10} {:<12} {}",
            self.name, value, bound, verdict
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Free-form table rows printed under the checks.
    pub table: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: Vec::new(),
            table: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, value: f64, expect: Expect) {
        self.checks.push(Check::new(name, value, expect));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Largest residual among the tolerance-bounded checks.
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| matches!(c.expect, Expect::Below(_)))
            .map(|c| c.value)
            .fold(0.0, worst)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} max_residual={}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            residual(self.max_residual())
        );
        for c in &self.checks {
            let _ = writeln!(out, "{}", c.render());
        }
        for row in &self.table {
            let _ = writeln!(out, "  | {row}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.render());
        }
        let ok = self.suites.iter().filter(|s| s.passed()).count();
        let _ = writeln!(out, "summary: {ok}/{} suites passed", self.suites.len());
        let _ = writeln!(
            out,
            "result={}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.resolution < 3 || config.brute_resolution < 2 {
        return Err(CliError::Usage(
            "verify needs a resolution of at least 3".into(),
        ));
    }
    if let Some(t) = config.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive, got {t}"
            )));
        }
    }
    let suites = config
        .suites
        .iter()
        .map(|&s| run_suite(s, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { suites })
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(suite);
    match suite {
        Suite::Identities => identities(config, &mut rep)?,
        Suite::ClosedForm => closed_form(config, &mut rep)?,
        Suite::BruteForce => brute_force(config, &mut rep)?,
        Suite::Boundary => boundary(config, &mut rep)?,
        Suite::Ppt => ppt(config, &mut rep)?,
        Suite::Entropy => entropy(config, &mut rep)?,
        Suite::Threshold => threshold(config, &mut rep)?,
        Suite::Discrepancy => {
            for probe in Suite::PROBES {
                run_probe(probe, config, &mut rep)?;
            }
        }
        probe => run_probe(probe, config, &mut rep)?,
    }
    Ok(rep)
}

fn run_probe(probe: Suite, config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    match probe {
        Suite::Predictability => probe_predictability(config, rep),
        Suite::Polarity => probe_polarity(config, rep),
        Suite::MeterThreshold => probe_meter_threshold(config, rep),
        Suite::MeterBobEntropy => probe_meter_bob_entropy(config, rep),
        other => unreachable!("{other} is not a probe"),
    }
}

/// `n` equally spaced values on `[0, 1]`, endpoints exact.
pub fn grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                1.0
            } else {
                i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn pairs(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .collect()
}

fn triples(g: &[f64]) -> Vec<(f64, f64, f64)> {
    pairs(g, g)
        .into_iter()
        .flat_map(|(x, y)| g.iter().map(move |&z| (x, y, z)))
        .collect()
}

/// `max` that lets a NaN through instead of hiding it.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn par_max<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    let values = items.par_iter().map(f).collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, worst))
}

fn par_count<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<bool> + Sync + Send) -> Result<f64> {
    let hits = items.par_iter().map(f).collect::<Result<Vec<bool>>>()?;
    Ok(hits.into_iter().filter(|&b| b).count() as f64)
}

/// Parameters of a single-environment scenario at `(D, R)`.
fn single(scenario: Scenario, d: f64, r: f64) -> Result<ScenarioParams> {
    Ok(match scenario {
        Scenario::SystemDecoherence => ScenarioParams::system(d, r)?,
        Scenario::MeterDecoherence => ScenarioParams::meter(d, r)?,
        other => unreachable!("{other} has no single robustness"),
    })
}

const SINGLE: [Scenario; 2] = [Scenario::SystemDecoherence, Scenario::MeterDecoherence];

/// Every scenario's parameter grid: `(r, D)` for the free case, `(D, R)` for
/// single environments and `(D, R_S, R_M)` combined.
fn scenario_grid(scenario: Scenario, g: &[f64]) -> Result<Vec<ScenarioParams>> {
    match scenario {
        Scenario::Free => pairs(g, g)
            .into_iter()
            .map(|(r, d)| Ok(ScenarioParams::free(r, d)?))
            .collect(),
        Scenario::Combined => triples(g)
            .into_iter()
            .map(|(d, r_s, r_m)| Ok(ScenarioParams::combined(d, r_s, r_m)?))
            .collect(),
        sc => pairs(g, g)
            .into_iter()
            .map(|(d, r)| single(sc, d, r))
            .collect(),
    }
}

fn horodecki(p: &ScenarioParams, sc: Scenario) -> Result<f64> {
    Ok(horodecki_bmax(&ab_state(p, sc)?)?)
}

fn identities(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let tol = config.tol(IDENTITY_TOL);
    for sc in Scenario::ALL {
        let pts = scenario_grid(sc, &g)?;
        let max = par_max(&pts, |p| Ok(check_identity(sc, p)?.max_residual()))?;
        rep.check(format!("{sc}.complementarity"), max, Expect::Below(tol));
    }
    // the fringe scan is the expensive part; run it on the two-parameter grids
    for sc in [
        Scenario::Free,
        Scenario::SystemDecoherence,
        Scenario::MeterDecoherence,
    ] {
        let pts = scenario_grid(sc, &g)?;
        let max = par_max(&pts, |p| {
            let rho = ab_state(p, sc)?;
            let scan = visibility_sweep(&rho, config.phases)?;
            Ok((scan.visibility - visibility_analytic(&rho)?).abs())
        })?;
        rep.check(
            format!("{sc}.fringe_scan_vs_coherence"),
            max,
            Expect::Below(config.tol(SWEEP_TOL)),
        );
    }
    Ok(())
}

fn closed_form(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let tol = config.tol(IDENTITY_TOL);
    for sc in Scenario::ALL {
        let pts = scenario_grid(sc, &g)?;
        let max = par_max(&pts, |p| {
            Ok((bell_closed_form(sc, p) - horodecki(p, sc)?).abs())
        })?;
        rep.check(
            format!("{sc}.b_max_closed_vs_horodecki"),
            max,
            Expect::Below(tol),
        );
    }
    Ok(())
}

fn brute_force(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = grid(config.brute_resolution);
    let tol = config.tol(BRUTE_TOL);
    for sc in Scenario::ALL {
        let pts = scenario_grid(sc, &g)?;
        let results = pts
            .par_iter()
            .map(|p| {
                let rho = ab_state(p, sc)?;
                let brute = chsh_brute_force(&rho, &config.brute)?;
                Ok((brute.value, horodecki_bmax(&rho)?))
            })
            .collect::<Result<Vec<(f64, f64)>>>()?;
        let max = results.iter().map(|(b, h)| (b - h).abs()).fold(0.0, worst);
        let above = results.iter().filter(|(b, h)| b > &(h + 1e-9)).count();
        rep.check(format!("{sc}.brute_vs_horodecki"), max, Expect::Below(tol));
        rep.check(
            format!("{sc}.brute_above_horodecki"),
            above as f64,
            Expect::Zero,
        );
    }
    rep.table.push(format!(
        "restarts={} seed={} grid={}",
        config.brute.restarts, config.brute.seed, config.brute_resolution
    ));
    Ok(())
}

/// The positive root of `D⁴ − αD² + β = 0`, i.e. the opposite sign on `β`.
fn combined_threshold_squared_flipped(r_s: f64, r_m: f64) -> Option<f64> {
    let (rs2, rm2) = (r_s * r_s, r_m * r_m);
    if rm2 >= 1.0 {
        return None;
    }
    let alpha = rs2 - rm2 / (1.0 - rm2);
    let beta = (1.0 - rs2) / (1.0 - rm2);
    let disc = (alpha / 2.0).powi(2) - beta;
    let x = alpha / 2.0 + disc.sqrt();
    (disc >= 0.0 && (0.0..=1.0).contains(&x)).then_some(x)
}

fn boundary(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let tol = config.tol(IDENTITY_TOL);

    // the free state is a product at D = 0, so every U > 0 sits exactly on the bound
    let free_pts: Vec<f64> = g.iter().copied().filter(|&r| r > 0.0 && r < 1.0).collect();
    let max = par_max(&free_pts, |&r| {
        Ok((horodecki(&ScenarioParams::free(r, 0.0)?, Scenario::Free)? - 2.0).abs())
    })?;
    rep.check(
        "free.b_max_at_zero_distinguishability",
        max,
        Expect::Below(tol),
    );

    let max = par_max(&g, |&r| {
        let p = ScenarioParams::system((1.0 - r * r).max(0.0).sqrt(), r)?;
        Ok((horodecki(&p, Scenario::SystemDecoherence)? - 2.0).abs())
    })?;
    rep.check("system.b_max_on_boundary", max, Expect::Below(tol));

    let meter_r: Vec<f64> = g.iter().copied().filter(|&r| r < FRAC_1_SQRT_2).collect();
    let max = par_max(&meter_r, |&r| {
        let t = violation_boundary(Scenario::MeterDecoherence, &ScenarioParams::meter(0.0, r)?)
            .d_threshold
            .expect("meter threshold below the critical robustness");
        Ok((horodecki(&ScenarioParams::meter(t, r)?, Scenario::MeterDecoherence)? - 2.0).abs())
    })?;
    rep.check("meter.b_max_on_boundary", max, Expect::Below(tol));

    let surface: Vec<(f64, f64)> = pairs(&g, &g)
        .into_iter()
        .filter(|&(r_s, r_m)| combined_threshold_squared(r_s, r_m) > 0.0)
        .collect();
    let max = par_max(&surface, |&(r_s, r_m)| {
        let d = combined_threshold_squared(r_s, r_m).sqrt();
        Ok((horodecki(&ScenarioParams::combined(d, r_s, r_m)?, Scenario::Combined)? - 2.0).abs())
    })?;
    rep.check(
        "combined.b_max_on_threshold_surface",
        max,
        Expect::Below(tol),
    );

    // the other sign on β gives no usable surface
    let flipped: Vec<(f64, f64)> = pairs(&g, &g);
    let rows = flipped
        .par_iter()
        .map(
            |&(r_s, r_m)| match combined_threshold_squared_flipped(r_s, r_m) {
                Some(x) => {
                    let p = ScenarioParams::combined(x.sqrt(), r_s, r_m)?;
                    Ok(Some((horodecki(&p, Scenario::Combined)? - 2.0).abs()))
                }
                None => Ok(None),
            },
        )
        .collect::<Result<Vec<Option<f64>>>>()?;
    let no_root = rows.iter().filter(|x| x.is_none()).count();
    let dev = rows.iter().flatten().copied().fold(0.0, worst);
    rep.table.push(format!(
        "combined threshold sign: +beta max |B-2| = {}; -beta has no root in [0,1] at {no_root}/{} points, max |B-2| elsewhere = {}",
        residual(max),
        rows.len(),
        residual(dev)
    ));
    Ok(())
}

fn negativity_expected(d: f64, r: f64) -> bool {
    d > REGION_MARGIN && r > REGION_MARGIN
}

fn ppt(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let pts = pairs(&g, &g);
    for sc in SINGLE {
        let reports = pts
            .par_iter()
            .map(|&(d, r)| Ok(((d, r), ppt_check(&ab_state(&single(sc, d, r)?, sc)?)?)))
            .collect::<Result<Vec<((f64, f64), SeparabilityReport)>>>()?;
        let region = reports
            .iter()
            .filter(|((d, r), s)| (s.negativity > 1e-10) != negativity_expected(*d, *r))
            .count();
        let shape = reports
            .iter()
            .filter(|((d, r), s)| negativity_expected(*d, *r) && s.negative_eigenvalues() != 1)
            .count();
        rep.check(
            format!("{sc}.entanglement_region_mismatches"),
            region as f64,
            Expect::Zero,
        );
        rep.check(
            format!("{sc}.not_exactly_one_negative_eigenvalue"),
            shape as f64,
            Expect::Zero,
        );
    }
    let sc = Scenario::MeterDecoherence;
    let hidden = par_count(&pts, |&(d, r)| {
        let rho = ab_state(&single(sc, d, r)?, sc)?;
        Ok(ppt_check(&rho)?.negativity > 1e-10 && horodecki_bmax(&rho)? <= 2.0)
    })?;
    rep.check(
        "meter.entangled_without_chsh_violation",
        hidden,
        Expect::Above(0.0),
    );
    Ok(())
}

fn entropy(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let pts = pairs(&g, &g);
    for sc in SINGLE {
        let max = par_max(&pts, |&(d, r)| {
            let p = single(sc, d, r)?;
            let numeric = mutual_information(&ab_state(&p, sc)?)?;
            Ok(numeric.max_abs_diff(&entropy_closed_form(sc, &p)?))
        })?;
        rep.check(
            format!("{sc}.entropies_closed_vs_spectral"),
            max,
            Expect::Below(config.tol(IDENTITY_TOL)),
        );
    }
    Ok(())
}

fn threshold(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let sc = Scenario::SystemDecoherence;
    let max = par_max(&g, |&r| match info_threshold(sc, r)? {
        InfoThreshold::Finite {
            value,
            boundary_information,
            ..
        } => Ok((value - boundary_information).abs()),
        InfoThreshold::NoThreshold => Ok(f64::INFINITY),
    })?;
    rep.check(
        "system.threshold_vs_boundary_information",
        max,
        Expect::Below(config.tol(IDENTITY_TOL)),
    );

    let pts: Vec<(f64, f64)> = pairs(&g, &g)
        .into_iter()
        .filter(|&(d, r)| (d * d + r * r - 1.0).abs() > REGION_MARGIN)
        .collect();
    let mismatches = par_count(&pts, |&(d, r)| {
        let rho = ab_state(&ScenarioParams::system(d, r)?, sc)?;
        let above = mutual_information(&rho)?.i_ab > info_threshold(sc, r)?.value().unwrap_or(0.0);
        let violates = exceeds_local_bound(horodecki_bmax(&rho)?);
        let outside = d * d + r * r > 1.0;
        Ok(above != violates || violates != outside)
    })?;
    rep.check(
        "system.information_vs_violation_mismatches",
        mismatches,
        Expect::Zero,
    );

    let existence = par_count(&g, |&r| {
        let none = info_threshold(Scenario::MeterDecoherence, r)? == InfoThreshold::NoThreshold;
        Ok(none != (r >= FRAC_1_SQRT_2))
    })?;
    rep.check(
        "meter.threshold_existence_mismatches",
        existence,
        Expect::Zero,
    );
    Ok(())
}

fn probe_predictability(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g: Vec<f64> = config.grid();
    let pts: Vec<(f64, f64)> = pairs(&g, &g);
    let adopted = par_max(&pts, |&(r, d)| {
        free_identity_residual(r, d, predictability(r)).map_err(Into::into)
    })?;
    let printed = par_max(&pts, |&(r, d)| {
        free_identity_residual(r, d, predictability_printed(r)).map_err(Into::into)
    })?;
    rep.check(
        "predictability.abs_residual",
        adopted,
        Expect::Below(config.tol(IDENTITY_TOL)),
    );
    rep.check(
        "predictability.sqrt_residual",
        printed,
        Expect::Above(DISCREPANCY_FLOOR),
    );
    rep.table
        .push("predictability: r, residual with |1-2r|, residual with sqrt|1-2r| (D = 0.5)".into());
    for r in [0.1, 0.2, 0.3, 0.4] {
        rep.table.push(format!(
            "  {}  {}  {}",
            fixed(r),
            residual(free_identity_residual(r, 0.5, predictability(r))?),
            residual(free_identity_residual(r, 0.5, predictability_printed(r))?)
        ));
    }
    Ok(())
}

/// The literal reading that calls a state inseparable when its partial
/// transpose is non-negative.
fn inseparable_literal(rep: &SeparabilityReport) -> bool {
    rep.ppt_spectrum[3] >= -PSD
}

fn probe_polarity(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let pts = pairs(&g, &g);
    let mut standard = 0.0;
    let mut literal = 0.0;
    let mut connective = 0.0;
    let mut claimed = 0;
    for sc in SINGLE {
        let reports = pts
            .par_iter()
            .map(|&(d, r)| Ok(((d, r), ppt_check(&ab_state(&single(sc, d, r)?, sc)?)?)))
            .collect::<Result<Vec<((f64, f64), SeparabilityReport)>>>()?;
        for ((d, r), s) in reports {
            if negativity_expected(d, r) {
                // claimed inseparable, with one negative eigenvalue
                claimed += 1;
                if s.separable {
                    standard += 1.0;
                }
                if !inseparable_literal(&s) {
                    literal += 1.0;
                }
            } else if (d > REGION_MARGIN) != (r > REGION_MARGIN) && !s.separable {
                connective += 1.0;
            }
        }
    }
    rep.check("polarity.standard_contradictions", standard, Expect::Zero);
    rep.check(
        "polarity.literal_contradictions",
        literal,
        Expect::Above(0.0),
    );
    rep.check(
        "polarity.entangled_with_one_parameter_zero",
        connective,
        Expect::Zero,
    );
    rep.table.push(format!(
        "polarity: {claimed} entangled grid points; standard rule misclassifies {standard}, inverted rule misclassifies {literal}; zero D or zero R is separable (connective AND)"
    ));
    Ok(())
}

fn probe_meter_threshold(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let rs: Vec<f64> = (1..=7)
        .map(|k| k as f64 / 10.0)
        .filter(|&r| r < FRAC_1_SQRT_2)
        .collect();
    rep.table
        .push("meter threshold: R, numeric, printed, sign-corrected, printed - numeric".into());
    let mut corrected: f64 = 0.0;
    let mut printed_dev: f64 = 0.0;
    for r in rs {
        let InfoThreshold::Finite { value, printed, .. } =
            info_threshold(Scenario::MeterDecoherence, r)?
        else {
            continue;
        };
        let flipped = meter_threshold_sign_corrected(r);
        corrected = worst(corrected, (value - flipped).abs());
        printed_dev = worst(printed_dev, (printed - value).abs());
        rep.table.push(format!(
            "  {}  {}  {}  {}  {}",
            fixed(r),
            fixed(value),
            fixed(printed),
            fixed(flipped),
            fixed(printed - value)
        ));
    }
    rep.check(
        "meter_threshold.sign_corrected_vs_numeric",
        corrected,
        Expect::Below(config.tol(IDENTITY_TOL)),
    );
    rep.check(
        "meter_threshold.printed_vs_numeric",
        printed_dev,
        Expect::Above(DISCREPANCY_FLOOR),
    );
    Ok(())
}

fn probe_meter_bob_entropy(config: &VerifyConfig, rep: &mut SuiteReport) -> Result<()> {
    let g = config.grid();
    let pts = pairs(&g, &g);
    let sc = Scenario::MeterDecoherence;
    let rows = pts
        .par_iter()
        .map(|&(d, r)| {
            let p = ScenarioParams::meter(d, r)?;
            let numeric = mutual_information(&ab_state(&p, sc)?)?.s_b;
            let adopted = entropy_closed_form(sc, &p)?.s_b;
            Ok((
                (adopted - numeric).abs(),
                (meter_bob_entropy_printed(d, r) - numeric).abs(),
            ))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let adopted = rows.iter().map(|x| x.0).fold(0.0, worst);
    let printed = rows.iter().map(|x| x.1).fold(0.0, worst);
    rep.check(
        "meter_bob_entropy.corrected_vs_spectral",
        adopted,
        Expect::Below(config.tol(IDENTITY_TOL)),
    );
    rep.check(
        "meter_bob_entropy.printed_vs_spectral",
        printed,
        Expect::Above(DISCREPANCY_FLOOR),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite) -> SuiteReport {
        let config = VerifyConfig {
            resolution: 5,
            brute_resolution: 2,
            brute: BruteForceOptions {
                restarts: 4,
                ..BruteForceOptions::default()
            },
            phases: 64,
            ..VerifyConfig::default()
        };
        run_suite(suite, &config).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.into_iter().chain(Suite::PROBES) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [
            Suite::ClosedForm,
            Suite::Boundary,
            Suite::Ppt,
            Suite::Entropy,
            Suite::Threshold,
            Suite::Discrepancy,
        ] {
            let rep = quick(s);
            assert!(rep.passed(), "{}", rep.render());
        }
    }

    #[test]
    fn nan_is_never_a_pass() {
        let c = Check::new("x", f64::NAN, Expect::Below(1.0));
        assert!(!c.passed());
        assert!(worst(0.0, f64::NAN).is_nan());
    }

    #[test]
    fn flipped_sign_can_lack_a_root() {
        // R_S = 0, R_M = 0: α = 0, β = 1, so −β gives a negative discriminant
        assert_eq!(combined_threshold_squared_flipped(0.0, 0.0), None);
    }
}
