use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest operator dimension the crate works with (four qubits).
pub const MAX_DIM: usize = 16;

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&dim) || !dim.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "matrix dimension {dim} not in {{2, 4, 8, 16}}"
        )));
    }
    Ok(())
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting bad sizes and
    /// non-finite values.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::new(dim, data)
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Result<Self> {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self[(j, i)].conj());
            }
        }
        Self { dim: n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self[(j, i)]);
            }
        }
        Self { dim: n, data }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(
                "cannot add matrices of different size".into(),
            ));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        unitary.matmul(self)?.matmul(&unitary.adjoint())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |m − m†|` over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }
}

/// Kronecker product `a ⊗ b`; block `(i, j)` of the result is `a[i, j] · b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim * b.dim;
    if n > MAX_DIM {
        return Err(Error::Dimension(format!(
            "kron result dimension {n} exceeds {MAX_DIM}"
        )));
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for ai in 0..a.dim {
        for aj in 0..a.dim {
            let s = a[(ai, aj)];
            for bi in 0..b.dim {
                for bj in 0..b.dim {
                    data[(ai * b.dim + bi) * n + aj * b.dim + bj] = s * b[(bi, bj)];
                }
            }
        }
    }
    Ok(ComplexMatrix { dim: n, data })
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::{identity2, sigma_x, sigma_y, sigma_z};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_sigma_z() {
        let zz = kron(&sigma_z(), &sigma_z()).unwrap();
        let expected = ComplexMatrix::diagonal(&[1.0, -1.0, -1.0, 1.0]).unwrap();
        assert_eq!(zz, expected);
    }

    #[test]
    fn kron_of_identities() {
        let i4 = kron(&identity2(), &identity2()).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4).unwrap());
    }

    #[test]
    fn kron_xy_corner_entry() {
        // block (0,1) is σx[0,1]·σy = σy, so entry [0,3] is σy[0,1] = −i
        let xy = kron(&sigma_x(), &sigma_y()).unwrap();
        assert_eq!(xy[(0, 3)], c(0.0, -1.0));
        assert_eq!(xy[(3, 0)], c(0.0, 1.0));
    }

    #[test]
    fn kron_rejects_oversized_result() {
        let i16 = ComplexMatrix::identity(16).unwrap();
        assert!(matches!(kron(&i16, &identity2()), Err(Error::Dimension(_))));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::new(
            2,
            vec![c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(err, Err(Error::NonFinite(_))));
        let err = ComplexMatrix::new(2, vec![c(0.0, f64::INFINITY); 4]);
        assert!(matches!(err, Err(Error::NonFinite(_))));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(ComplexMatrix::zeros(3).is_err());
        assert!(ComplexMatrix::zeros(32).is_err());
        assert!(ComplexMatrix::new(2, vec![c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn adjoint_of_sigma_y_is_itself() {
        assert_eq!(sigma_y().adjoint(), sigma_y());
        assert!(sigma_y().is_hermitian(0.0));
    }
}
