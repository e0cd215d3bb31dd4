//! Single-qubit operators in the `{↑, ↓}` basis, `σz|↑⟩ = |↑⟩`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

fn m2(entries: [[Complex64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::new(2, entries.iter().flatten().copied().collect())
        .expect("2x2 literal is valid")
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity2() -> ComplexMatrix {
    m2([[ONE, ZERO], [ZERO, ONE]])
}

pub fn sigma_x() -> ComplexMatrix {
    m2([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> ComplexMatrix {
    m2([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> ComplexMatrix {
    m2([[ONE, ZERO], [ZERO, -ONE]])
}

/// `[σx, σy, σz]`.
pub fn paulis() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// Spin observable `n·σ` along a (not necessarily unit) direction.
pub fn spin_along(n: [f64; 3]) -> ComplexMatrix {
    let [x, y, z] = n;
    m2([
        [Complex64::new(z, 0.0), Complex64::new(x, -y)],
        [Complex64::new(x, y), Complex64::new(-z, 0.0)],
    ])
}
