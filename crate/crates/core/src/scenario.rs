//! Interferometer states with a which-way meter and optional environments.
//!
//! The system qubit `A` enters as `√r|↑⟩ − √(1−r)|↓⟩`. A meter `B` prepared in
//! `|↓⟩` tags the `|↓⟩_A` path with strength `D`; environment qubits copy
//! information from `A` (robustness `R_S`) or from `B` (robustness `R_M`).

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::complementarity::predictability;
use crate::error::{unit_interval, Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, Factor, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// No environment.
    Free,
    /// Environment monitors the system qubit.
    SystemDecoherence,
    /// Environment monitors the meter qubit.
    MeterDecoherence,
    /// Both environments at once.
    Combined,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::Free,
        Scenario::SystemDecoherence,
        Scenario::MeterDecoherence,
        Scenario::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Free => "free",
            Scenario::SystemDecoherence => "system",
            Scenario::MeterDecoherence => "meter",
            Scenario::Combined => "combined",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scenario '{s}'")))
    }
}

/// Path weight, distinguishability and the two robustnesses, all in `[0, 1]`.
///
/// Robustness 1 means the corresponding environment never couples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    r: f64,
    d: f64,
    r_s: f64,
    r_m: f64,
}

impl ScenarioParams {
    pub fn new(r: f64, d: f64, r_s: f64, r_m: f64) -> Result<Self> {
        Ok(Self {
            r: unit_interval("r", r)?,
            d: unit_interval("D", d)?,
            r_s: unit_interval("R_S", r_s)?,
            r_m: unit_interval("R_M", r_m)?,
        })
    }

    pub fn free(r: f64, d: f64) -> Result<Self> {
        Self::new(r, d, 1.0, 1.0)
    }

    /// Free scenario parameterized by unpredictability `U` instead of `r`
    /// (the `r ≤ 1/2` branch of `U = √(1 − (1−2r)²)`).
    pub fn free_with_unpredictability(u: f64, d: f64) -> Result<Self> {
        let u = unit_interval("U", u)?;
        let p = (1.0 - u * u).max(0.0).sqrt();
        Self::free(0.5 * (1.0 - p), d)
    }

    pub fn system(d: f64, r_s: f64) -> Result<Self> {
        Self::new(0.5, d, r_s, 1.0)
    }

    pub fn meter(d: f64, r_m: f64) -> Result<Self> {
        Self::new(0.5, d, 1.0, r_m)
    }

    pub fn combined(d: f64, r_s: f64, r_m: f64) -> Result<Self> {
        Self::new(0.5, d, r_s, r_m)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    pub fn r_m(&self) -> f64 {
        self.r_m
    }

    /// `O = √(1 − D²)`.
    pub fn overlap(&self) -> f64 {
        (1.0 - self.d * self.d).max(0.0).sqrt()
    }

    pub fn predictability(&self) -> f64 {
        predictability(self.r)
    }

    /// `U = √(1 − P²)`.
    pub fn unpredictability(&self) -> f64 {
        let p = self.predictability();
        (1.0 - p * p).max(0.0).sqrt()
    }

    /// The robustness a single-environment scenario depends on.
    pub fn robustness(&self, scenario: Scenario) -> Option<f64> {
        match scenario {
            Scenario::SystemDecoherence => Some(self.r_s),
            Scenario::MeterDecoherence => Some(self.r_m),
            _ => None,
        }
    }

    /// Rejects a general path weight outside the free scenario.
    pub fn validate_for(&self, scenario: Scenario) -> Result<()> {
        if scenario != Scenario::Free && self.r != 0.5 {
            return Err(Error::InvalidArgument(format!(
                "scenario '{scenario}' requires r = 1/2, got r = {}",
                self.r
            )));
        }
        Ok(())
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `√r|↑⟩ − √(1−r)|↓⟩` on qubit `A`.
pub fn input_state(r: f64) -> Result<PureState> {
    let r = unit_interval("r", r)?;
    PureState::qubit(Factor::A, re(r.sqrt()), re(-(1.0 - r).sqrt()))
}

/// Attaches the meter `B` (prepared in `|↓⟩`): the `|↑⟩_A` path leaves it in
/// `|↓⟩`, the `|↓⟩_A` path sends it to `√(1−D²)|↓⟩ + D|↑⟩`.
pub fn couple_meter(s: &PureState, d: f64) -> Result<PureState> {
    let d = unit_interval("D", d)?;
    if s.position(Factor::B).is_some() {
        return Err(Error::InvalidArgument("meter already attached".into()));
    }
    let o = (1.0 - d * d).max(0.0).sqrt();
    s.append_conditioned(Factor::A, Factor::B, [re(0.0), re(1.0)], [re(d), re(o)])
}

fn environment_kick(robustness: f64) -> [Complex64; 2] {
    [
        re((1.0 - robustness * robustness).max(0.0).sqrt()),
        re(robustness),
    ]
}

/// Attaches `E_S` (prepared in `|↓⟩`): unchanged on `|↑⟩_A`, sent to
/// `R_S|↓⟩ + √(1−R_S²)|↑⟩` on `|↓⟩_A`.
pub fn decohere_system(s: &PureState, r_s: f64) -> Result<PureState> {
    let r_s = unit_interval("R_S", r_s)?;
    s.append_conditioned(
        Factor::A,
        Factor::SystemEnv,
        [re(0.0), re(1.0)],
        environment_kick(r_s),
    )
}

/// Attaches `E_M` (prepared in `|↓⟩`): unchanged on `|↓⟩_B`, sent to
/// `R_M|↓⟩ + √(1−R_M²)|↑⟩` on `|↑⟩_B`.
pub fn decohere_meter(s: &PureState, r_m: f64) -> Result<PureState> {
    let r_m = unit_interval("R_M", r_m)?;
    s.append_conditioned(
        Factor::B,
        Factor::MeterEnv,
        environment_kick(r_m),
        [re(0.0), re(1.0)],
    )
}

/// Full system–meter–environment state for a scenario.
///
/// The combined case couples the meter first, then the system environment,
/// then the meter environment; the two environment couplings act on disjoint
/// qubits and commute.
pub fn build_joint_state(params: &ScenarioParams, scenario: Scenario) -> Result<PureState> {
    params.validate_for(scenario)?;
    let s = couple_meter(&input_state(params.r())?, params.d())?;
    match scenario {
        Scenario::Free => Ok(s),
        Scenario::SystemDecoherence => decohere_system(&s, params.r_s()),
        Scenario::MeterDecoherence => decohere_meter(&s, params.r_m()),
        Scenario::Combined => decohere_meter(&decohere_system(&s, params.r_s())?, params.r_m()),
    }
}

/// Traces out every environment, leaving `ρ_AB` in the `{↑↑, ↑↓, ↓↑, ↓↓}` basis.
pub fn reduce_to_ab(s: &PureState) -> Result<DensityMatrix> {
    s.reduce_to(&[Factor::A, Factor::B])
}

/// `ρ_AB` for a scenario point.
pub fn ab_state(params: &ScenarioParams, scenario: Scenario) -> Result<DensityMatrix> {
    reduce_to_ab(&build_joint_state(params, scenario)?)
}

/// `diag(e^{−iφ}, 1)`.
pub fn phase_shift_matrix(phi: f64) -> Result<ComplexMatrix> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("phase"));
    }
    ComplexMatrix::new(
        2,
        vec![Complex64::from_polar(1.0, -phi), re(0.0), re(0.0), re(1.0)],
    )
}

/// `|↑⟩ ↦ (|↑⟩+|↓⟩)/√2`, `|↓⟩ ↦ (−|↑⟩+|↓⟩)/√2`.
pub fn rotation_matrix() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::new(2, vec![re(h), re(-h), re(h), re(h)]).expect("2x2 literal")
}

/// Pure or mixed states that gates on the system qubit can act on.
pub trait SystemOperand: Sized {
    fn apply_to_system(&self, op: &ComplexMatrix) -> Result<Self>;
}

impl SystemOperand for PureState {
    fn apply_to_system(&self, op: &ComplexMatrix) -> Result<Self> {
        self.apply_local(Factor::A, op)
    }
}

impl SystemOperand for DensityMatrix {
    fn apply_to_system(&self, op: &ComplexMatrix) -> Result<Self> {
        self.apply_local(Factor::A, op)
    }
}

/// Multiplies the `|↑⟩_A` amplitude by `e^{−iφ}`.
pub fn phase_shift<S: SystemOperand>(s: &S, phi: f64) -> Result<S> {
    s.apply_to_system(&phase_shift_matrix(phi)?)
}

pub fn interference_rotation<S: SystemOperand>(s: &S) -> Result<S> {
    s.apply_to_system(&rotation_matrix())
}
