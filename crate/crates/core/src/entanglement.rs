//! Partial-transpose separability, von Neumann entropies and mutual
//! information (all in nats).

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose, DensityMatrix, Factor};
use crate::scenario::{ab_state, Scenario, ScenarioParams};
use crate::tolerance::{ENTROPY_NEGATIVE, PSD};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityReport {
    /// Spectrum of `ρ^{T_B}`, descending.
    pub ppt_spectrum: [f64; 4],
    /// Sum of the magnitudes of the negative partial-transpose eigenvalues.
    pub negativity: f64,
    pub separable: bool,
}

impl SeparabilityReport {
    pub fn negative_eigenvalues(&self) -> usize {
        self.ppt_spectrum.iter().filter(|&&x| x < -PSD).count()
    }
}

/// Two-qubit Peres–Horodecki test: separable iff the partial transpose has no
/// negative eigenvalue.
pub fn ppt_check(rho: &DensityMatrix) -> Result<SeparabilityReport> {
    let ev = hermitian_eigenvalues(&partial_transpose(rho)?)?;
    let ppt_spectrum: [f64; 4] = ev
        .try_into()
        .map_err(|_| Error::Dimension("expected four eigenvalues".into()))?;
    let separable = ppt_spectrum[3] >= -PSD;
    let negativity = if separable {
        0.0
    } else {
        ppt_spectrum.iter().filter(|&&x| x < 0.0).map(|x| -x).sum()
    };
    Ok(SeparabilityReport {
        ppt_spectrum,
        negativity,
        separable,
    })
}

/// `−Σ λ ln λ`, with `0 ln 0 = 0`. Eigenvalues down to `−1e-8` are clamped
/// to zero; anything more negative is rejected.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -ENTROPY_NEGATIVE {
            return Err(Error::Contract(format!(
                "eigenvalue {lambda:e} is negative; not a state"
            )));
        }
        let p = lambda.clamp(0.0, 1.0);
        if p > 0.0 {
            s -= p * p.ln();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.eigenvalues()?)
}

/// Entropy of a qubit whose eigenvalues are `(1 ± x)/2`.
pub fn bloch_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    [(1.0 + x) / 2.0, (1.0 - x) / 2.0]
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationReport {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    /// `S_A + S_B − S_AB`.
    pub i_ab: f64,
    /// Information needed for a CHSH violation, when one is defined.
    pub threshold: Option<f64>,
}

impl InformationReport {
    fn from_entropies(s_a: f64, s_b: f64, s_ab: f64) -> Self {
        Self {
            s_a,
            s_b,
            s_ab,
            i_ab: s_a + s_b - s_ab,
            threshold: None,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.s_a - other.s_a,
            self.s_b - other.s_b,
            self.s_ab - other.s_ab,
            self.i_ab - other.i_ab,
        ]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
    }
}

/// Entropies of `ρ_AB` and its reductions, from their spectra.
pub fn mutual_information(rho: &DensityMatrix) -> Result<InformationReport> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension(
            "mutual information needs a two-qubit state".into(),
        ));
    }
    let s_ab = von_neumann_entropy(rho)?;
    let s_a = von_neumann_entropy(&rho.reduce_to(Factor::A)?)?;
    let s_b = von_neumann_entropy(&rho.reduce_to(Factor::B)?)?;
    Ok(InformationReport::from_entropies(s_a, s_b, s_ab))
}

/// Bob's entropy under meter decoherence with the radicand exactly as
/// printed, `(1−D²)²(1−R²)`. It disagrees with the state (at `R = 1` it gives
/// `ln 2` for every `D`) and is kept only for discrepancy reports.
pub fn meter_bob_entropy_printed(d: f64, r: f64) -> f64 {
    let o2 = 1.0 - d * d;
    bloch_entropy((o2 * o2 * (1.0 - r * r)).max(0.0).sqrt())
}

/// Closed-form entropies for the single-environment scenarios.
///
/// Under meter decoherence Bob's Bloch length is `√((1−D²)(1−D²(1−R²)))`;
/// see [`meter_bob_entropy_printed`] for the printed variant.
pub fn entropy_closed_form(
    scenario: Scenario,
    params: &ScenarioParams,
) -> Result<InformationReport> {
    let d2 = params.d() * params.d();
    let o = params.overlap();
    let report = match scenario {
        Scenario::SystemDecoherence => {
            let r = params.r_s();
            InformationReport::from_entropies(
                bloch_entropy(r * o),
                bloch_entropy(o),
                bloch_entropy(r),
            )
        }
        Scenario::MeterDecoherence => {
            let r2 = params.r_m() * params.r_m();
            let s_ab = bloch_entropy((1.0 - d2 * (2.0 - d2) * (1.0 - r2)).max(0.0).sqrt());
            let s_a = bloch_entropy(o);
            let s_b = bloch_entropy(((1.0 - d2) * (1.0 - d2 * (1.0 - r2))).max(0.0).sqrt());
            InformationReport::from_entropies(s_a, s_b, s_ab)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "no closed-form entropies for scenario '{other}'"
            )))
        }
    };
    Ok(report)
}

/// Mutual information a CHSH violation requires at a given robustness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InfoThreshold {
    Finite {
        /// `Ī` in nats.
        value: f64,
        /// Distinguishability on the violation boundary.
        boundary_d: f64,
        /// `I_AB` of the constructed state at `boundary_d`.
        boundary_information: f64,
        /// The printed closed-form expression evaluated verbatim (NaN where
        /// its logarithm argument is negative).
        printed: f64,
    },
    /// Every `D > 0` violates; no information threshold exists.
    NoThreshold,
}

impl InfoThreshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            InfoThreshold::Finite { value, .. } => Some(*value),
            InfoThreshold::NoThreshold => None,
        }
    }
}

/// System case: `Ī = h((1 ± R²)/2)`, the entropy of a qubit with Bloch length `R²`.
pub fn system_threshold_closed_form(r: f64) -> f64 {
    bloch_entropy(r * r)
}

fn meter_threshold_argument(r: f64) -> f64 {
    std::f64::consts::SQRT_2 * r * r / (1.0 - r * r).sqrt()
}

/// Meter-case threshold expression exactly as printed:
/// `(½+½x) ln(½+½x) − (½−½x) ln(½−½x)` with `x = √2 R²/√(1−R²)`.
pub fn meter_threshold_printed(r: f64) -> f64 {
    let x = meter_threshold_argument(r);
    let (p, q) = (0.5 + 0.5 * x, 0.5 - 0.5 * x);
    let term = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    if q < 0.0 {
        return f64::NAN;
    }
    term(p) - term(q)
}

/// The printed meter-case expression with its leading sign flipped, i.e. the
/// binary entropy `h((1 ± x)/2)`.
pub fn meter_threshold_sign_corrected(r: f64) -> f64 {
    bloch_entropy(meter_threshold_argument(r))
}

pub fn info_threshold(scenario: Scenario, robustness: f64) -> Result<InfoThreshold> {
    let r = crate::error::unit_interval("robustness", robustness)?;
    match scenario {
        Scenario::SystemDecoherence => {
            let boundary_d = (1.0 - r * r).max(0.0).sqrt();
            let rho = ab_state(&ScenarioParams::system(boundary_d, r)?, scenario)?;
            let closed = system_threshold_closed_form(r);
            Ok(InfoThreshold::Finite {
                value: closed,
                boundary_d,
                boundary_information: mutual_information(&rho)?.i_ab,
                printed: closed,
            })
        }
        Scenario::MeterDecoherence => {
            if 2.0 * r * r >= 1.0 {
                return Ok(InfoThreshold::NoThreshold);
            }
            let boundary_d = ((1.0 - 2.0 * r * r) / (1.0 - r * r)).sqrt();
            let rho = ab_state(&ScenarioParams::meter(boundary_d, r)?, scenario)?;
            let numeric = mutual_information(&rho)?.i_ab;
            Ok(InfoThreshold::Finite {
                value: numeric,
                boundary_d,
                boundary_information: numeric,
                printed: meter_threshold_printed(r),
            })
        }
        other => Err(Error::InvalidArgument(format!(
            "no information threshold for scenario '{other}'"
        ))),
    }
}
