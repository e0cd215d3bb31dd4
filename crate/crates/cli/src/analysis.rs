//! Single-point analysis and its `key=value` rendering.

use std::fmt::Write as _;

use qdl_core::complementarity::visibility_analytic;
use qdl_core::entanglement::{
    info_threshold, mutual_information, ppt_check, InformationReport, SeparabilityReport,
};
use qdl_core::nonlocality::{
    analyze_bell, exceeds_local_bound, violation_boundary, BellResult, BruteForceOptions,
};
use qdl_core::scenario::ab_state;
use qdl_core::{Scenario, ScenarioParams};

use crate::error::Result;
use crate::format::{fixed, fixed_opt};

/// Slack on `V ≤ 1 − D²` matching the slack on the CHSH bound.
const LRT_MARGIN: f64 = 1e-9;

/// Whether a local-realistic model can account for the point.
///
/// Under system decoherence this is the visibility criterion `V ≤ 1 − D²`.
/// At `D = 1` both sides vanish and the criterion no longer separates the
/// states, so the CHSH verdict is used there and in every other scenario.
pub fn lrt_explainable(
    scenario: Scenario,
    params: &ScenarioParams,
    visibility: f64,
    b_max: f64,
) -> bool {
    let o2 = 1.0 - params.d() * params.d();
    if scenario == Scenario::SystemDecoherence && o2 > 0.0 {
        visibility <= o2 + LRT_MARGIN
    } else {
        !exceeds_local_bound(b_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classifications {
    pub chsh_violating: bool,
    pub lrt_explainable: bool,
    pub entangled: bool,
    /// `None` when the scenario has no information threshold.
    pub above_info_threshold: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub scenario: Scenario,
    pub params: ScenarioParams,
    pub v: f64,
    pub p: f64,
    pub bell: BellResult,
    pub d_threshold: Option<f64>,
    pub sep: SeparabilityReport,
    pub info: InformationReport,
    pub classifications: Classifications,
}

pub fn analyze(
    scenario: Scenario,
    params: &ScenarioParams,
    brute: &BruteForceOptions,
) -> Result<AnalysisReport> {
    params.validate_for(scenario)?;
    let rho = ab_state(params, scenario)?;
    let v = visibility_analytic(&rho)?;
    let bell = analyze_bell(&rho, Some((scenario, params)), Some(brute))?;
    let sep = ppt_check(&rho)?;
    let mut info = mutual_information(&rho)?;
    info.threshold = match params.robustness(scenario) {
        Some(r) => info_threshold(scenario, r)?.value(),
        None => None,
    };
    let classifications = Classifications {
        chsh_violating: bell.violates,
        lrt_explainable: lrt_explainable(scenario, params, v, bell.b_max_horodecki),
        entangled: !sep.separable,
        above_info_threshold: info.threshold.map(|t| info.i_ab > t + LRT_MARGIN),
    };
    Ok(AnalysisReport {
        scenario,
        params: *params,
        v,
        p: params.predictability(),
        d_threshold: violation_boundary(scenario, params).d_threshold,
        bell,
        sep,
        info,
        classifications,
    })
}

fn flag(x: Option<bool>) -> String {
    x.map_or_else(|| "none".to_string(), |b| b.to_string())
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let p = &self.params;
        let mut lines: Vec<(&str, String)> = vec![
            ("scenario", self.scenario.to_string()),
            ("r", fixed(p.r())),
            ("d", fixed(p.d())),
            ("r_s", fixed(p.r_s())),
            ("r_m", fixed(p.r_m())),
            ("visibility", fixed(self.v)),
            ("predictability", fixed(self.p)),
            ("b_max_horodecki", fixed(self.bell.b_max_horodecki)),
            ("b_max_closed_form", fixed_opt(self.bell.b_max_closed_form)),
            ("b_max_brute", fixed_opt(self.bell.b_max_brute())),
        ];
        if let Some(b) = &self.bell.brute {
            lines.push(("brute_best_restart", b.best_restart.to_string()));
            lines.push(("brute_converged", b.converged.to_string()));
            for (name, s) in ["a", "a_prime", "b", "b_prime"].iter().zip(&b.settings) {
                let v = s.vector();
                lines.push((
                    name,
                    format!("{},{},{}", fixed(v[0]), fixed(v[1]), fixed(v[2])),
                ));
            }
        }
        lines.extend([
            ("d_threshold", fixed_opt(self.d_threshold)),
            (
                "ppt_spectrum",
                self.sep
                    .ppt_spectrum
                    .iter()
                    .map(|&x| fixed(x))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("negativity", fixed(self.sep.negativity)),
            ("s_a", fixed(self.info.s_a)),
            ("s_b", fixed(self.info.s_b)),
            ("s_ab", fixed(self.info.s_ab)),
            ("i_ab", fixed(self.info.i_ab)),
            ("info_threshold", fixed_opt(self.info.threshold)),
            (
                "chsh_violating",
                self.classifications.chsh_violating.to_string(),
            ),
            (
                "lrt_explainable",
                self.classifications.lrt_explainable.to_string(),
            ),
            ("entangled", self.classifications.entangled.to_string()),
            (
                "above_info_threshold",
                flag(self.classifications.above_info_threshold),
            ),
        ]);
        let mut out = String::new();
        for (k, v) in lines {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}
