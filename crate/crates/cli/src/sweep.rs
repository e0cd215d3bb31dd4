//! Parameter grids and the metrics evaluated on them.

use std::fmt;

use qdl_core::complementarity::visibility_analytic;
use qdl_core::entanglement::mutual_information;
use qdl_core::nonlocality::{exceeds_local_bound, horodecki_bmax, violation_boundary};
use qdl_core::scenario::ab_state;
use qdl_core::{Scenario, ScenarioParams};
use rayon::prelude::*;

use crate::analysis::lrt_explainable;
use crate::error::{CliError, Result};
use crate::format::{fixed, fixed_opt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    /// Distinguishability.
    D,
    /// Unpredictability; maps to the `r ≤ 1/2` path weight.
    U,
    /// Overlap `√(1−D²)`.
    O,
    /// Robustness of the scenario's single environment.
    R,
    RS,
    RM,
}

impl Param {
    pub fn label(self) -> &'static str {
        match self {
            Param::D => "D",
            Param::U => "U",
            Param::O => "O",
            Param::R => "R",
            Param::RS => "R_S",
            Param::RM => "R_M",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    BMax,
    Visibility,
    LrtExplainable,
    MutualInformation,
    ChshViolating,
    DThreshold,
}

impl Metric {
    pub fn label(self) -> &'static str {
        match self {
            Metric::BMax => "B_max",
            Metric::Visibility => "V",
            Metric::LrtExplainable => "lrt_explainable",
            Metric::MutualInformation => "I_AB",
            Metric::ChshViolating => "chsh_violating",
            Metric::DThreshold => "D_threshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn unit(param: Param, steps: usize) -> Self {
        Self {
            param,
            start: 0.0,
            stop: 1.0,
            steps,
        }
    }

    /// Grid values; the last one is exactly `stop`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub axes: Vec<Axis>,
    pub fixed: Vec<(Param, f64)>,
    pub outputs: Vec<Metric>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(CliError::Usage("a sweep needs one or two axes".into()));
        }
        for a in &self.axes {
            if a.steps < 2 {
                return Err(CliError::Usage(format!(
                    "axis {} needs at least 2 steps",
                    a.param
                )));
            }
            if a.start >= a.stop || a.start.is_nan() || a.stop.is_nan() {
                return Err(CliError::Usage(format!(
                    "axis {} needs start < stop",
                    a.param
                )));
            }
            if a.start < 0.0 || a.stop > 1.0 {
                return Err(CliError::Usage(format!(
                    "axis {} must stay inside [0, 1]",
                    a.param
                )));
            }
        }
        for (p, v) in &self.fixed {
            if !(0.0..=1.0).contains(v) {
                return Err(CliError::Usage(format!("{p} = {v} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn header(&self) -> Vec<&'static str> {
        self.axes
            .iter()
            .map(|a| a.param.label())
            .chain(self.outputs.iter().map(|m| m.label()))
            .collect()
    }

    /// Grid points in row-major order: the first axis varies slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    pub fn params_at(&self, point: &[f64]) -> Result<ScenarioParams> {
        let (mut r, mut d, mut r_s, mut r_m) = (0.5, 0.0, 1.0, 1.0);
        let assignments = self
            .fixed
            .iter()
            .copied()
            .chain(self.axes.iter().map(|a| a.param).zip(point.iter().copied()));
        for (param, v) in assignments {
            match param {
                Param::D => d = v,
                Param::O => d = (1.0 - v * v).max(0.0).sqrt(),
                Param::U => r = 0.5 * (1.0 - (1.0 - v * v).max(0.0).sqrt()),
                Param::RS => r_s = v,
                Param::RM => r_m = v,
                Param::R => match self.scenario {
                    Scenario::SystemDecoherence => r_s = v,
                    Scenario::MeterDecoherence => r_m = v,
                    other => {
                        return Err(CliError::Usage(format!(
                            "R is ambiguous for scenario '{other}'; use R_S or R_M"
                        )))
                    }
                },
            }
        }
        let params = ScenarioParams::new(r, d, r_s, r_m)?;
        params.validate_for(self.scenario)?;
        Ok(params)
    }

    fn row(&self, point: &[f64]) -> Result<Vec<String>> {
        let params = self.params_at(point)?;
        let mut cells: Vec<String> = point.iter().map(|&v| fixed(v)).collect();
        if self.outputs.iter().all(|m| *m == Metric::DThreshold) {
            cells.extend(
                self.outputs
                    .iter()
                    .map(|_| fixed_opt(d_threshold(self.scenario, &params))),
            );
            return Ok(cells);
        }
        let rho = ab_state(&params, self.scenario)?;
        let b_max = horodecki_bmax(&rho)?;
        for metric in &self.outputs {
            let cell = match metric {
                Metric::BMax => fixed(b_max),
                Metric::ChshViolating => exceeds_local_bound(b_max).to_string(),
                Metric::Visibility => fixed(visibility_analytic(&rho)?),
                Metric::LrtExplainable => {
                    lrt_explainable(self.scenario, &params, visibility_analytic(&rho)?, b_max)
                        .to_string()
                }
                Metric::MutualInformation => fixed(mutual_information(&rho)?.i_ab),
                Metric::DThreshold => fixed_opt(d_threshold(self.scenario, &params)),
            };
            cells.push(cell);
        }
        Ok(cells)
    }

    /// Evaluates every grid point (in parallel) and returns rows in grid order.
    pub fn evaluate(&self) -> Result<Vec<Vec<String>>> {
        self.validate()?;
        self.points().par_iter().map(|p| self.row(p)).collect()
    }
}

fn d_threshold(scenario: Scenario, params: &ScenarioParams) -> Option<f64> {
    violation_boundary(scenario, params).d_threshold
}
