//! Fringe visibility, predictability and the visibility–distinguishability
//! identities of each scenario.

use std::f64::consts::PI;

use crate::error::{unit_interval, Error, Result};
use crate::linalg::{DensityMatrix, Factor};
use crate::scenario::{ab_state, interference_rotation, phase_shift, Scenario, ScenarioParams};

/// Phase count used when none is given.
pub const DEFAULT_PHASES: usize = 1024;

/// Denominators below this switch identities to their product form.
const DEGENERATE_DENOMINATOR: f64 = 1e-12;

/// Sampled interference fringe on the system qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeScan {
    pub phases: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub visibility: f64,
}

impl FringeScan {
    pub fn max(&self) -> f64 {
        self.probabilities
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.probabilities
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Scans `n` equally spaced phases over `[0, 2π)`. For each phase the state is
/// phase-shifted and rotated on `A`, and the `|↑⟩_A` probability recorded.
/// The visibility is `(max − min)/(max + min)` of the samples.
pub fn visibility_sweep(rho: &DensityMatrix, n: usize) -> Result<FringeScan> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!(
            "fringe scan needs at least 8 phases, got {n}"
        )));
    }
    let mut phases = Vec::with_capacity(n);
    let mut probabilities = Vec::with_capacity(n);
    for k in 0..n {
        let phi = 2.0 * PI * k as f64 / n as f64;
        let out = interference_rotation(&phase_shift(rho, phi)?)?;
        let p_up = out.reduce_to(Factor::A)?.get(0, 0).re.clamp(0.0, 1.0);
        phases.push(phi);
        probabilities.push(p_up);
    }
    let mut scan = FringeScan {
        phases,
        probabilities,
        visibility: 0.0,
    };
    let (hi, lo) = (scan.max(), scan.min());
    scan.visibility = if hi + lo > 0.0 {
        (hi - lo) / (hi + lo)
    } else {
        0.0
    };
    Ok(scan)
}

/// `V = 2|ρ_A[↑, ↓]|`; the fringe is `p(φ) = ½ − Re(e^{−iφ} ρ_A[↑, ↓])`.
pub fn visibility_analytic(rho: &DensityMatrix) -> Result<f64> {
    let rho_a = rho.reduce_to(Factor::A)?;
    Ok((2.0 * rho_a.get(0, 1).norm()).min(1.0))
}

/// `P = |1 − 2r|`.
pub fn predictability(r: f64) -> f64 {
    (1.0 - 2.0 * r).abs()
}

/// The literal printed alternative `√|1 − 2r|`, kept for discrepancy reports.
pub fn predictability_printed(r: f64) -> f64 {
    (1.0 - 2.0 * r).abs().sqrt()
}

/// `|V²/denom + D² − 1|`, or `|V² − denom·(1 − D²)|` when `denom` vanishes.
pub fn quotient_residual(v: f64, denom: f64, d: f64) -> f64 {
    if denom > DEGENERATE_DENOMINATOR {
        (v * v / denom + d * d - 1.0).abs()
    } else {
        (v * v - denom * (1.0 - d * d)).abs()
    }
}

/// Residuals of the complementarity identities at one scenario point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Visibility of the constructed state.
    pub visibility: f64,
    /// `V²/(1−P²) + D² = 1`, `V²/R_S² + D² = 1` or `V² + D² = 1`.
    pub complementarity: f64,
    /// `V = O·U` (free scenario only).
    pub product_form: Option<f64>,
    /// `V/V₀ = R_S` with `V₀ = √(1−D²)`, when `D < 1` and a system
    /// environment is present.
    pub robustness_ratio: Option<f64>,
}

impl IdentityCheck {
    pub fn max_residual(&self) -> f64 {
        [self.product_form, self.robustness_ratio]
            .into_iter()
            .flatten()
            .fold(self.complementarity, f64::max)
    }
}

pub fn check_identity(scenario: Scenario, params: &ScenarioParams) -> Result<IdentityCheck> {
    let rho = ab_state(params, scenario)?;
    let v = visibility_analytic(&rho)?;
    let d = params.d();
    let ratio = |r_s: f64| {
        (d < 1.0).then(|| {
            let v0 = params.overlap();
            (v / v0 - r_s).abs()
        })
    };
    let check = match scenario {
        Scenario::Free => {
            let u = params.unpredictability();
            IdentityCheck {
                visibility: v,
                complementarity: quotient_residual(v, u * u, d),
                product_form: Some((v - params.overlap() * u).abs()),
                robustness_ratio: None,
            }
        }
        Scenario::SystemDecoherence | Scenario::Combined => IdentityCheck {
            visibility: v,
            complementarity: quotient_residual(v, params.r_s() * params.r_s(), d),
            product_form: None,
            robustness_ratio: ratio(params.r_s()),
        },
        Scenario::MeterDecoherence => IdentityCheck {
            visibility: v,
            complementarity: quotient_residual(v, 1.0, d),
            product_form: None,
            robustness_ratio: None,
        },
    };
    Ok(check)
}

/// Residual of `V²/(1−P²) + D² = 1` on the free state with a caller-supplied
/// predictability `p`.
pub fn free_identity_residual(r: f64, d: f64, p: f64) -> Result<f64> {
    let r = unit_interval("r", r)?;
    let params = ScenarioParams::free(r, d)?;
    let v = visibility_analytic(&ab_state(&params, Scenario::Free)?)?;
    Ok(quotient_residual(v, 1.0 - p * p, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(p: ScenarioParams, sc: Scenario) -> DensityMatrix {
        ab_state(&p, sc).unwrap()
    }

    #[test]
    fn sweep_requires_eight_phases() {
        let r = rho(ScenarioParams::free(0.5, 0.0).unwrap(), Scenario::Free);
        assert!(matches!(
            visibility_sweep(&r, 7),
            Err(Error::InvalidArgument(_))
        ));
        assert!(visibility_sweep(&r, 8).is_ok());
    }

    #[test]
    fn full_visibility_without_monitoring() {
        let r = rho(ScenarioParams::free(0.5, 0.0).unwrap(), Scenario::Free);
        let scan = visibility_sweep(&r, 1024).unwrap();
        assert!((scan.visibility - 1.0).abs() < 1e-6);
        assert_eq!(scan.phases.len(), 1024);
        assert!(scan.probabilities.iter().all(|p| (0.0..=1.0).contains(p)));
    }

    #[test]
    fn no_visibility_after_total_system_decoherence() {
        let r = rho(
            ScenarioParams::system(0.4, 0.0).unwrap(),
            Scenario::SystemDecoherence,
        );
        assert!(visibility_sweep(&r, 1024).unwrap().visibility.abs() < 1e-9);
        assert!(visibility_analytic(&r).unwrap().abs() < 1e-12);
    }

    #[test]
    fn meter_decoherence_leaves_visibility() {
        for r_m in [0.0, 0.3, 0.7, 1.0] {
            let r = rho(
                ScenarioParams::meter(0.6, r_m).unwrap(),
                Scenario::MeterDecoherence,
            );
            assert!((visibility_sweep(&r, 1024).unwrap().visibility - 0.8).abs() < 1e-6);
        }
    }

    #[test]
    fn analytic_visibility_values() {
        let mixed = DensityMatrix::maximally_mixed(vec![Factor::A, Factor::B]).unwrap();
        assert_eq!(visibility_analytic(&mixed).unwrap(), 0.0);
        let r = rho(ScenarioParams::free(0.5, 0.6).unwrap(), Scenario::Free);
        assert!((visibility_analytic(&r).unwrap() - 0.8).abs() < 1e-14);
    }

    #[test]
    fn predictability_values() {
        assert_eq!(predictability(0.5), 0.0);
        assert_eq!(predictability(1.0), 1.0);
        assert_eq!(predictability(0.25), 0.5);
    }

    #[test]
    fn identity_residuals() {
        let c = check_identity(Scenario::Free, &ScenarioParams::free(0.3, 0.5).unwrap()).unwrap();
        assert!(c.max_residual() < 1e-10, "{c:?}");
        let c = check_identity(
            Scenario::MeterDecoherence,
            &ScenarioParams::meter(0.9, 0.2).unwrap(),
        )
        .unwrap();
        assert!(c.max_residual() < 1e-10, "{c:?}");
        let c = check_identity(
            Scenario::Combined,
            &ScenarioParams::combined(0.5, 0.7, 0.3).unwrap(),
        )
        .unwrap();
        assert!(c.max_residual() < 1e-10, "{c:?}");
        assert!(c.robustness_ratio.is_some());
    }

    #[test]
    fn zero_robustness_uses_product_form() {
        let c = check_identity(
            Scenario::SystemDecoherence,
            &ScenarioParams::system(0.3, 0.0).unwrap(),
        )
        .unwrap();
        assert!(c.complementarity.is_finite() && c.complementarity < 1e-12);
        assert!(c.visibility < 1e-12);
    }

    #[test]
    fn printed_predictability_breaks_identity() {
        let good = free_identity_residual(0.3, 0.5, predictability(0.3)).unwrap();
        let bad = free_identity_residual(0.3, 0.5, predictability_printed(0.3)).unwrap();
        assert!(good < 1e-12);
        assert!(bad > 1e-2);
    }
}
