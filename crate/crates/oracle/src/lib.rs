//! Brute-force reference computations for cross-checking `cvsep`.
//!
//! Nothing in here shares code with the production criteria: the eigenvalue
//! solver is a hand-written cyclic Jacobi sweep, the pure-state overlaps are
//! summed term by term in the Fock basis, and the phase-space overlap is a
//! tensor Gauss–Hermite quadrature of the characteristic functions.
//!
//! Matrices are passed as plain row arrays of [`Complex64`] so this crate
//! never depends on the types it is meant to check.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use thiserror::Error;

mod eigen;
mod fock;
mod quadrature;

pub use eigen::{eig_min_hermitian, eigenvalues_hermitian};
pub use fock::overlap_fock_tmsv;
pub use quadrature::{gauss_hermite, gauss_hermite_log, overlap_numint, Quadrature};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix dimension {0} unsupported (expected 1..=4)")]
    Dimension(usize),
    #[error("input outside oracle domain: {0}")]
    Domain(String),
    #[error("integrand does not decay: Va + Vb is not positive definite")]
    NonDecaying,
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Symplectic form `diag(1, -1, 1, -1)` in the `(a1†, a1, a2†, a2)` ordering.
pub fn symplectic_diag() -> [f64; 4] {
    [1.0, -1.0, 1.0, -1.0]
}

/// Adds `shift[i]` to the diagonal of a 4×4 matrix.
pub fn shift_diagonal(h: &[[Complex64; 4]; 4], shift: [f64; 4]) -> [[Complex64; 4]; 4] {
    let mut out = *h;
    for (i, s) in shift.iter().enumerate() {
        out[i][i] += Complex64::new(*s, 0.0);
    }
    out
}

/// Minimum eigenvalue of `V + E/2`.
pub fn min_eig_uncertainty(v: &[[Complex64; 4]; 4]) -> Result<f64> {
    let e = symplectic_diag();
    eig_min_hermitian(&shift_diagonal(v, e.map(|x| 0.5 * x)))
}

/// Minimum eigenvalue of `TVT + E/2`, with `T` swapping indices 2 and 3.
pub fn min_eig_mirrored(v: &[[Complex64; 4]; 4]) -> Result<f64> {
    let perm = [0usize, 1, 3, 2];
    let mut t = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = v[perm[i]][perm[j]];
        }
    }
    min_eig_uncertainty(&t)
}
