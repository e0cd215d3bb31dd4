use std::fmt;

use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use super::matrix::{ComplexMatrix, MAX_DIM};
use crate::error::{Error, Result};
use crate::tolerance::{EXACT, PSD};

/// Named qubit in a tensor-product space. Basis index 0 is `|↑⟩`, index 1 is
/// `|↓⟩`; the first factor in a list is the most significant index bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Interferometer qubit held by Alice.
    A,
    /// Meter qubit held by Bob.
    B,
    /// Environment coupled to the system qubit.
    SystemEnv,
    /// Environment coupled to the meter qubit.
    MeterEnv,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Factor::A => "A",
            Factor::B => "B",
            Factor::SystemEnv => "E_S",
            Factor::MeterEnv => "E_M",
        };
        f.write_str(s)
    }
}

pub const UP: usize = 0;
pub const DOWN: usize = 1;

fn check_factors(factors: &[Factor]) -> Result<()> {
    if factors.is_empty() || (1usize << factors.len()) > MAX_DIM {
        return Err(Error::Dimension(format!(
            "{} qubits outside 1..=4",
            factors.len()
        )));
    }
    for (i, f) in factors.iter().enumerate() {
        if factors[..i].contains(f) {
            return Err(Error::InvalidArgument(format!("factor {f} listed twice")));
        }
    }
    Ok(())
}

/// Bit of qubit `k` (out of `n`) in basis index `idx`.
fn bit(idx: usize, k: usize, n: usize) -> usize {
    (idx >> (n - 1 - k)) & 1
}

/// Splits a full basis index into (kept index, traced index).
fn split_index(idx: usize, keep: &[usize], n: usize) -> (usize, usize) {
    let mut kept = 0;
    let mut rest = 0;
    for k in 0..n {
        let b = bit(idx, k, n);
        if keep.contains(&k) {
            kept = (kept << 1) | b;
        } else {
            rest = (rest << 1) | b;
        }
    }
    (kept, rest)
}

fn check_keep(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::InvalidArgument("nothing to keep".into()));
    }
    for (i, &k) in keep.iter().enumerate() {
        if k >= n {
            return Err(Error::InvalidArgument(format!(
                "subsystem index {k} out of range for {n} qubits"
            )));
        }
        if keep[..i].contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "subsystem index {k} repeated"
            )));
        }
        if i > 0 && keep[i - 1] > k {
            return Err(Error::InvalidArgument(
                "keep indices must be ascending".into(),
            ));
        }
    }
    Ok(())
}

/// Normalized amplitude vector over a labeled product of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    factors: Vec<Factor>,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(factors: Vec<Factor>, amps: Vec<Complex64>) -> Result<Self> {
        check_factors(&factors)?;
        if amps.len() != 1 << factors.len() {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                factors.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let state = Self { factors, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > EXACT {
            return Err(Error::Contract(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Single-qubit state `up·|↑⟩ + down·|↓⟩`.
    pub fn qubit(factor: Factor, up: Complex64, down: Complex64) -> Result<Self> {
        Self::new(vec![factor], vec![up, down])
    }

    /// Computational basis state; `bits[k]` is [`UP`] or [`DOWN`] for factor `k`.
    pub fn basis(factors: Vec<Factor>, bits: &[usize]) -> Result<Self> {
        check_factors(&factors)?;
        if bits.len() != factors.len() || bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("one bit (0 or 1) per factor".into()));
        }
        let idx = bits.iter().fold(0, |acc, &b| (acc << 1) | b);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << factors.len()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { factors, amps })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn position(&self, factor: Factor) -> Option<usize> {
        self.factors.iter().position(|&f| f == factor)
    }

    fn require(&self, factor: Factor) -> Result<usize> {
        self.position(factor)
            .ok_or_else(|| Error::InvalidArgument(format!("state has no factor {factor}")))
    }

    /// Amplitude of a basis state given one bit per factor.
    pub fn amplitude(&self, bits: &[usize]) -> Complex64 {
        let idx = bits.iter().fold(0, |acc, &b| (acc << 1) | b);
        self.amps[idx]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.factors != other.factors {
            return Err(Error::InvalidArgument(
                "states live on different spaces".into(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a 2×2 operator to one factor.
    pub fn apply_local(&self, factor: Factor, op: &ComplexMatrix) -> Result<Self> {
        if op.dim() != 2 {
            return Err(Error::Dimension("local operator must be 2x2".into()));
        }
        let k = self.require(factor)?;
        let n = self.num_qubits();
        let mask = 1 << (n - 1 - k);
        let mut amps = self.amps.clone();
        for idx in 0..self.amps.len() {
            if idx & mask != 0 {
                continue;
            }
            let up = self.amps[idx];
            let down = self.amps[idx | mask];
            amps[idx] = op[(0, 0)] * up + op[(0, 1)] * down;
            amps[idx | mask] = op[(1, 0)] * up + op[(1, 1)] * down;
        }
        Ok(Self {
            factors: self.factors.clone(),
            amps,
        })
    }

    /// Appends a fresh qubit `target` whose state depends on the basis value of
    /// `control`: `on_up` when control is `|↑⟩`, `on_down` when `|↓⟩`. Both
    /// branch states must be normalized, which makes the map an isometry.
    pub fn append_conditioned(
        &self,
        control: Factor,
        target: Factor,
        on_up: [Complex64; 2],
        on_down: [Complex64; 2],
    ) -> Result<Self> {
        for branch in [&on_up, &on_down] {
            let n: f64 = branch.iter().map(|z| z.norm_sqr()).sum();
            if (n - 1.0).abs() > EXACT {
                return Err(Error::Contract("branch state is not normalized".into()));
            }
        }
        let k = self.require(control)?;
        let mut factors = self.factors.clone();
        factors.push(target);
        check_factors(&factors)?;
        let n = self.num_qubits();
        let mut amps = Vec::with_capacity(self.amps.len() * 2);
        for (idx, &a) in self.amps.iter().enumerate() {
            let branch = if bit(idx, k, n) == UP {
                &on_up
            } else {
                &on_down
            };
            amps.push(a * branch[0]);
            amps.push(a * branch[1]);
        }
        Ok(Self { factors, amps })
    }

    /// Reduced state on the qubits at positions `keep` (ascending).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits();
        check_keep(keep, n)?;
        let kd = 1 << keep.len();
        if kd < 2 {
            return Err(Error::InvalidArgument("nothing to keep".into()));
        }
        let rd = 1 << (n - keep.len());
        // Reshape into kept × traced coefficients, then ρ = C·C†.
        let mut coeff = vec![Complex64::new(0.0, 0.0); kd * rd];
        for (idx, &a) in self.amps.iter().enumerate() {
            let (ki, ri) = split_index(idx, keep, n);
            coeff[ki * rd + ri] = a;
        }
        let matrix = ComplexMatrix::from_fn(kd, |i, j| {
            (0..rd)
                .map(|r| coeff[i * rd + r] * coeff[j * rd + r].conj())
                .sum()
        })?;
        let factors = keep.iter().map(|&k| self.factors[k]).collect();
        Ok(DensityMatrix::trusted(factors, matrix))
    }

    /// Reduced state on the named factors, in the order they appear here.
    pub fn reduce_to(&self, keep: &[Factor]) -> Result<DensityMatrix> {
        let mut idx = keep
            .iter()
            .map(|&f| self.require(f))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        self.partial_trace(&idx)
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on one or two
/// labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    factors: Vec<Factor>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(factors: Vec<Factor>, matrix: ComplexMatrix) -> Result<Self> {
        check_factors(&factors)?;
        if matrix.dim() != 1 << factors.len() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for {} qubits",
                matrix.dim(),
                matrix.dim(),
                factors.len()
            )));
        }
        let herm = matrix.hermiticity_error();
        if herm > EXACT {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > EXACT || tr.im.abs() > EXACT {
            return Err(Error::Contract(format!("trace {tr} is not 1")));
        }
        let min = *hermitian_eigenvalues(&matrix)?.last().expect("dim >= 2");
        if min < -PSD {
            return Err(Error::Contract(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { factors, matrix })
    }

    /// Skips validation for matrices produced by operations that preserve
    /// the density-matrix properties.
    pub(crate) fn trusted(factors: Vec<Factor>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << factors.len());
        debug_assert!(matrix.hermiticity_error() < 1e-9);
        Self { factors, matrix }
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        let matrix = ComplexMatrix::projector(state.amplitudes())?;
        Ok(Self::trusted(state.factors().to_vec(), matrix))
    }

    pub fn maximally_mixed(factors: Vec<Factor>) -> Result<Self> {
        check_factors(&factors)?;
        let d = 1 << factors.len();
        let matrix = ComplexMatrix::identity(d)?.scale(Complex64::new(1.0 / d as f64, 0.0));
        Ok(Self { factors, matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += self.matrix[(i, j)].norm_sqr();
            }
        }
        s
    }

    /// `Tr(ρ·X)`.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<Complex64> {
        Ok(self.matrix.matmul(observable)?.trace())
    }

    pub fn position(&self, factor: Factor) -> Option<usize> {
        self.factors.iter().position(|&f| f == factor)
    }

    /// `U ρ U†` with `U` acting on one factor.
    pub fn apply_local(&self, factor: Factor, op: &ComplexMatrix) -> Result<Self> {
        if op.dim() != 2 {
            return Err(Error::Dimension("local operator must be 2x2".into()));
        }
        let k = self
            .position(factor)
            .ok_or_else(|| Error::InvalidArgument(format!("state has no factor {factor}")))?;
        let id = ComplexMatrix::identity(2)?;
        let mut full: Option<ComplexMatrix> = None;
        for j in 0..self.num_qubits() {
            let m = if j == k { op } else { &id };
            full = Some(match full {
                None => m.clone(),
                Some(acc) => super::matrix::kron(&acc, m)?,
            });
        }
        let full = full.expect("at least one factor");
        Ok(Self::trusted(
            self.factors.clone(),
            self.matrix.conjugate_by(&full)?,
        ))
    }

    /// Reduced state on the qubits at positions `keep` (ascending).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits();
        check_keep(keep, n)?;
        if keep.len() == n {
            return Ok(self.clone());
        }
        let kd = 1 << keep.len();
        let d = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); kd * kd];
        for i in 0..d {
            let (ki, ri) = split_index(i, keep, n);
            for j in 0..d {
                let (kj, rj) = split_index(j, keep, n);
                if ri == rj {
                    out[ki * kd + kj] += self.matrix[(i, j)];
                }
            }
        }
        let factors = keep.iter().map(|&k| self.factors[k]).collect();
        Ok(Self::trusted(factors, ComplexMatrix::new(kd, out)?))
    }

    pub fn reduce_to(&self, factor: Factor) -> Result<DensityMatrix> {
        let k = self
            .position(factor)
            .ok_or_else(|| Error::InvalidArgument(format!("state has no factor {factor}")))?;
        self.partial_trace(&[k])
    }
}

/// Transposes the second factor of a two-qubit operator in the product
/// basis: `ρ^{T_B}[(m n), (m' n')] = ρ[(m n'), (m' n)]`.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension(
            "partial transpose needs a two-qubit state".into(),
        ));
    }
    let m = rho.matrix();
    ComplexMatrix::from_fn(4, |row, col| {
        let (a, b) = (row >> 1, row & 1);
        let (a2, b2) = (col >> 1, col & 1);
        m[((a << 1) | b2, (a2 << 1) | b)]
    })
}
