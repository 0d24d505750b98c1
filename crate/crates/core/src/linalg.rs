//! Small dense helpers backed by `nalgebra`.

use nalgebra::{Matrix2, Matrix4};

use crate::C64;

/// Largest `|H[i][j] - conj(H[j][i])|`.
pub fn hermitian_deviation(h: &Matrix4<C64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            dev = dev.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Minimum eigenvalue of a Hermitian 4×4 matrix.
pub fn min_eigenvalue(h: &Matrix4<C64>) -> f64 {
    // nalgebra reads only the lower triangle; symmetrize first
    let sym = (h + h.adjoint()) * c_half();
    sym.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Minimum eigenvalue of a Hermitian 2×2 matrix, in closed form.
pub fn min_eigenvalue2(h: &Matrix2<C64>) -> f64 {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    0.5 * (a + d) - (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt()
}

/// Real part of the determinant; the imaginary part vanishes for Hermitian input.
pub fn det_real(h: &Matrix4<C64>) -> f64 {
    h.determinant().re
}

fn c_half() -> C64 {
    C64::new(0.5, 0.0)
}
