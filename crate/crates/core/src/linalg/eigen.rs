//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` and then
//! applies the classical real Jacobi rotation, so the update is a unitary
//! `J = Φ·G` with `Φ = diag(.., 1, .., e^{-iα}, ..)`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::{HERMITIAN_INPUT, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL};

/// Eigenvalues sorted descending, with eigenvectors stored as the matching
/// columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let herm_err = m.hermiticity_error();
    if herm_err > HERMITIAN_INPUT {
        return Err(Error::NotHermitian(herm_err));
    }
    let n = m.dim();
    // Work on the exactly Hermitian part.
    let mut a = m.add(&m.adjoint())?.scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n)?;
    let threshold = JACOBI_OFF_DIAGONAL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS && off_diagonal_norm(&a) >= threshold {
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])])?;
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // A ← A·J, V ← V·J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * pc * s;
        a[(k, q)] = akp * s + akq * pc * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * pc * s;
        v[(k, q)] = vkp * s + vkq * pc * c;
    }
    // A ← J†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// All eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::{sigma_x, sigma_y};

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn pauli_spectra() {
        assert_close(
            &hermitian_eigenvalues(&sigma_x()).unwrap(),
            &[1.0, -1.0],
            1e-14,
        );
        assert_close(
            &hermitian_eigenvalues(&sigma_y()).unwrap(),
            &[1.0, -1.0],
            1e-14,
        );
    }

    #[test]
    fn scalar_matrix() {
        let m = ComplexMatrix::identity(4)
            .unwrap()
            .scale(Complex64::new(0.25, 0.0));
        assert_close(&hermitian_eigenvalues(&m).unwrap(), &[0.25; 4], 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2).unwrap();
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, 1-i], [1+i, 3]]: trace 5, det 6 − |1−i|² = 4 → {4, 1}
        let m = ComplexMatrix::new(
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, -1.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        assert_close(&hermitian_eigenvalues(&m).unwrap(), &[4.0, 1.0], 1e-13);
    }
}
