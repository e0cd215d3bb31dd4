//! Bell-CHSH analysis of two-qubit states.
//!
//! The maximal CHSH value is obtained three ways: from the spectrum of `TᵀT`
//! (Horodecki criterion), from the per-scenario closed forms, and by directly
//! maximizing the CHSH expression over measurement directions.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, kron, pauli, ComplexMatrix, DensityMatrix};
use crate::scenario::{Scenario, ScenarioParams};
use crate::tolerance::{CHSH_BOUND, EXACT};

/// `T[i][j] = Tr ρ(σ_i ⊗ σ_j)` with `i, j ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor {
    t: [[f64; 3]; 3],
}

impl CorrelationTensor {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.t[i][j]
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.t
    }

    /// `TᵀT`, padded to 4×4 with a zero row and column so it can go through
    /// the Hermitian eigensolver; the extra eigenvalue is 0.
    fn gram_padded(&self) -> Result<ComplexMatrix> {
        ComplexMatrix::from_fn(4, |i, j| {
            if i == 3 || j == 3 {
                return Complex64::new(0.0, 0.0);
            }
            let s: f64 = (0..3).map(|k| self.t[k][i] * self.t[k][j]).sum();
            Complex64::new(s, 0.0)
        })
    }
}

pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension(
            "correlation tensor needs a two-qubit state".into(),
        ));
    }
    let sigmas = pauli::paulis();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in sigmas.iter().enumerate() {
        for (j, sj) in sigmas.iter().enumerate() {
            let value = rho.expectation(&kron(si, sj)?)?;
            debug_assert!(value.im.abs() < 1e-10);
            t[i][j] = value.re;
        }
    }
    Ok(CorrelationTensor { t })
}

/// `M(ρ)`: sum of the two largest eigenvalues of `TᵀT`.
pub fn horodecki_m(rho: &DensityMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(&correlation_tensor(rho)?.gram_padded()?)?;
    Ok((ev[0] + ev[1]).max(0.0))
}

/// `B_max = 2√M(ρ)`.
pub fn horodecki_bmax(rho: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * horodecki_m(rho)?.sqrt())
}

/// Whether a maximal CHSH value exceeds the local-realistic bound 2.
pub fn exceeds_local_bound(b_max: f64) -> bool {
    b_max > 2.0 + CHSH_BOUND
}

/// Closed-form `B_max` for a scenario point.
pub fn bell_closed_form(scenario: Scenario, params: &ScenarioParams) -> f64 {
    let d2 = params.d() * params.d();
    let m = match scenario {
        Scenario::Free => {
            let u = params.unpredictability();
            1.0 + d2 * u * u
        }
        Scenario::SystemDecoherence => {
            let r2 = params.r_s() * params.r_s();
            r2 + d2
        }
        Scenario::MeterDecoherence => {
            let r2 = params.r_m() * params.r_m();
            (1.0 - r2) * (1.0 - d2).powi(2) + r2 + d2
        }
        Scenario::Combined => {
            let rs2 = params.r_s() * params.r_s();
            let rm2 = params.r_m() * params.r_m();
            d2 * (1.0 - rm2) * (d2 - rs2) + d2 * rm2 + rs2
        }
    };
    2.0 * m.max(0.0).sqrt()
}

/// Unit Bloch vector selecting the spin observable `a·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting([f64; 3]);

impl MeasurementSetting {
    pub fn new(v: [f64; 3]) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("measurement direction"));
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > EXACT {
            return Err(Error::InvalidArgument(format!(
                "measurement direction has norm {norm}"
            )));
        }
        Ok(Self(v))
    }

    /// Normalizes a nonzero vector.
    pub fn along(v: [f64; 3]) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("zero measurement direction".into()));
        }
        Self::new(v.map(|x| x / norm))
    }

    /// Direction with polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    pub fn vector(&self) -> [f64; 3] {
        self.0
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.0;
        write!(f, "({x:.9},{y:.9},{z:.9})")
    }
}

/// `Tr ρ (a·σ)⊗(b·σ)` evaluated directly from the matrix entries:
/// `Σ ρ[(i k),(j l)] A[j][i] B[l][k]`.
fn correlator(rho: &ComplexMatrix, a: [f64; 3], b: [f64; 3]) -> f64 {
    let spin = |[x, y, z]: [f64; 3]| {
        [
            [Complex64::new(z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(-z, 0.0)],
        ]
    };
    let (sa, sb) = (spin(a), spin(b));
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    acc += rho[(2 * i + k, 2 * j + l)] * sa[j][i] * sb[l][k];
                }
            }
        }
    }
    acc.re
}

fn chsh_raw(rho: &ComplexMatrix, v: &[[f64; 3]; 4]) -> f64 {
    let [a, a2, b, b2] = *v;
    correlator(rho, a, b) + correlator(rho, a, b2) + correlator(rho, a2, b)
        - correlator(rho, a2, b2)
}

/// `C(a,b) + C(a,b') + C(a',b) − C(a',b')` with `C(a,b) = Tr ρ (a·σ)⊗(b·σ)`.
pub fn chsh_value(
    rho: &DensityMatrix,
    a: &MeasurementSetting,
    a2: &MeasurementSetting,
    b: &MeasurementSetting,
    b2: &MeasurementSetting,
) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension(
            "CHSH value needs a two-qubit state".into(),
        ));
    }
    Ok(chsh_raw(rho.matrix(), &[a.0, a2.0, b.0, b2.0]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceOptions {
    pub restarts: usize,
    /// Coordinate sweeps per restart before giving up.
    pub max_sweeps: usize,
    /// A restart has converged once no angle moves by more than this in a sweep.
    pub step_tolerance: f64,
    /// Offset into the low-discrepancy start sequence.
    pub seed: u64,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_sweeps: 20_000,
            step_tolerance: 1e-7,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOutcome {
    pub value: f64,
    /// `[a, a', b, b']` of the best restart.
    pub settings: [MeasurementSetting; 4],
    pub best_restart: usize,
    /// False when the best restart ran out of sweeps.
    pub converged: bool,
}

const HALTON_BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut out = 0.0;
    let mut scale = inv;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

fn start_angles(index: u64) -> [f64; 8] {
    use std::f64::consts::PI;
    let mut x = [0.0; 8];
    for (k, &base) in HALTON_BASES.iter().enumerate() {
        let h = radical_inverse(index, base);
        // even slots are polar angles (area-uniform), odd slots azimuths
        x[k] = if k % 2 == 0 {
            (1.0 - 2.0 * h).clamp(-1.0, 1.0).acos()
        } else {
            2.0 * PI * h
        };
    }
    x
}

fn directions(x: &[f64; 8]) -> [[f64; 3]; 4] {
    let mut v = [[0.0; 3]; 4];
    for (k, slot) in v.iter_mut().enumerate() {
        *slot = MeasurementSetting::from_angles(x[2 * k], x[2 * k + 1]).0;
    }
    v
}

fn wrap_angle(t: f64) -> f64 {
    use std::f64::consts::PI;
    let w = (t + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

struct Ascent {
    value: f64,
    angles: [f64; 8],
    converged: bool,
}

/// Coordinate ascent over the eight angles. Along any single angle the CHSH
/// expression is `α cos t + β sin t + γ`, so three evaluations fix the
/// sinusoid and its maximizer exactly.
fn ascend(rho: &ComplexMatrix, mut x: [f64; 8], opts: &BruteForceOptions) -> Ascent {
    use std::f64::consts::FRAC_PI_2;
    let eval = |x: &[f64; 8]| chsh_raw(rho, &directions(x));
    let mut value = eval(&x);
    for _ in 0..opts.max_sweeps {
        let mut largest_step: f64 = 0.0;
        for k in 0..8 {
            let base = x[k];
            let f0 = value;
            x[k] = base + FRAC_PI_2;
            let f1 = eval(&x);
            x[k] = base + 2.0 * FRAC_PI_2;
            let f2 = eval(&x);
            let gamma = 0.5 * (f0 + f2);
            let alpha = 0.5 * (f0 - f2);
            let beta = f1 - gamma;
            let step = wrap_angle(beta.atan2(alpha));
            x[k] = base + step;
            let candidate = eval(&x);
            if candidate >= value {
                value = candidate;
                largest_step = largest_step.max(step.abs());
            } else {
                x[k] = base;
            }
        }
        if largest_step < opts.step_tolerance {
            return Ascent {
                value,
                angles: x,
                converged: true,
            };
        }
    }
    Ascent {
        value,
        angles: x,
        converged: false,
    }
}

/// Multi-start maximization of the CHSH expression over `a, a', b, b'`.
///
/// Restarts are deterministic for a given seed; among equal best values the
/// lowest restart index is reported.
pub fn chsh_brute_force(
    rho: &DensityMatrix,
    opts: &BruteForceOptions,
) -> Result<BruteForceOutcome> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension(
            "CHSH optimization needs a two-qubit state".into(),
        ));
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument(
            "at least one restart required".into(),
        ));
    }
    let mut best: Option<(usize, Ascent)> = None;
    for restart in 0..opts.restarts {
        let start = start_angles(opts.seed + restart as u64 + 1);
        let run = ascend(rho.matrix(), start, opts);
        if best.as_ref().is_none_or(|(_, b)| run.value > b.value) {
            best = Some((restart, run));
        }
    }
    let (best_restart, run) = best.expect("restarts >= 1");
    let settings = directions(&run.angles).map(MeasurementSetting);
    Ok(BruteForceOutcome {
        value: run.value,
        settings,
        best_restart,
        converged: run.converged,
    })
}

/// Maximal CHSH value from every available route.
#[derive(Debug, Clone, PartialEq)]
pub struct BellResult {
    pub b_max_horodecki: f64,
    pub b_max_closed_form: Option<f64>,
    pub brute: Option<BruteForceOutcome>,
    pub violates: bool,
}

impl BellResult {
    pub fn b_max_brute(&self) -> Option<f64> {
        self.brute.as_ref().map(|b| b.value)
    }
}

/// Horodecki value plus, optionally, the closed form of a scenario and the
/// brute-force optimum.
pub fn analyze_bell(
    rho: &DensityMatrix,
    closed_form: Option<(Scenario, &ScenarioParams)>,
    brute: Option<&BruteForceOptions>,
) -> Result<BellResult> {
    let b_max_horodecki = horodecki_bmax(rho)?;
    let brute = brute.map(|opts| chsh_brute_force(rho, opts)).transpose()?;
    Ok(BellResult {
        b_max_horodecki,
        b_max_closed_form: closed_form.map(|(sc, p)| bell_closed_form(sc, p)),
        brute,
        violates: exceeds_local_bound(b_max_horodecki),
    })
}

/// Where a scenario point sits relative to the CHSH violation boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationBoundary {
    /// The closed-form `B_max` exceeds 2.
    pub violates: bool,
    /// Smallest distinguishability giving a violation at these robustnesses;
    /// `None` when no `D` does. Violation requires `D` strictly above it.
    pub d_threshold: Option<f64>,
}

/// Squared threshold `D²` for the combined scenario: the positive root of
/// `D⁴ − αD² − β = 0` with `α = R_S² − R_M²/(1−R_M²)`, `β = (1−R_S²)/(1−R_M²)`.
/// At `R_M = 1` this degenerates to `1 − R_S²`.
pub fn combined_threshold_squared(r_s: f64, r_m: f64) -> f64 {
    let rs2 = r_s * r_s;
    let rm2 = r_m * r_m;
    if rm2 >= 1.0 {
        return 1.0 - rs2;
    }
    let alpha = rs2 - rm2 / (1.0 - rm2);
    let beta = (1.0 - rs2) / (1.0 - rm2);
    let root = ((alpha / 2.0).powi(2) + beta).sqrt();
    let x = if alpha >= 0.0 {
        alpha / 2.0 + root
    } else if root - alpha / 2.0 > 0.0 {
        // same root without cancellation
        beta / (root - alpha / 2.0)
    } else {
        0.0
    };
    x.clamp(0.0, 1.0)
}

pub fn violation_boundary(scenario: Scenario, params: &ScenarioParams) -> ViolationBoundary {
    let threshold_squared = match scenario {
        Scenario::Free => (params.unpredictability() > 0.0).then_some(0.0),
        Scenario::SystemDecoherence => Some(1.0 - params.r_s() * params.r_s()),
        Scenario::MeterDecoherence => {
            let r2 = params.r_m() * params.r_m();
            if 2.0 * r2 >= 1.0 {
                Some(0.0)
            } else {
                Some((1.0 - 2.0 * r2) / (1.0 - r2))
            }
        }
        Scenario::Combined => Some(combined_threshold_squared(params.r_s(), params.r_m())),
    };
    ViolationBoundary {
        violates: exceeds_local_bound(bell_closed_form(scenario, params)),
        d_threshold: threshold_squared.map(|x| x.max(0.0).sqrt()),
    }
}
