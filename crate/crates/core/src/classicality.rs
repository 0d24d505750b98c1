//! P-representability (Glauber classicality) of joint and one-mode states.
//!
//! A Gaussian state has a non-negative, at most delta-singular P-function
//! iff `V - I/2 >= 0`. For one mode this is `n >= |m| + 1/2`.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::covariance::CovMat4;
use crate::linalg;
use crate::{c64, C64};

/// One-mode covariance data `[[n, m], [m*, n]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeParams {
    pub n: f64,
    pub m: C64,
}

impl ModeParams {
    pub fn new(n: f64, m: C64) -> Self {
        Self { n, m }
    }

    pub fn real(n: f64, m: f64) -> Self {
        Self::new(n, c64(m, 0.0))
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        Matrix2::new(c64(self.n, 0.0), self.m, self.m.conj(), c64(self.n, 0.0))
    }

    /// One-mode uncertainty condition `n >= sqrt(|m|² + 1/4)`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.n >= (self.m.norm_sqr() + 0.25).sqrt() - tol
    }
}

/// `V - I/2 >= 0` by eigenvalues, up to `tol`.
pub fn is_p_representable_joint(v: &CovMat4, tol: f64) -> bool {
    let shifted = v.matrix() - Matrix4::identity() * c64(0.5, 0.0);
    linalg::min_eigenvalue(&shifted) >= -tol
}

/// `n >= |m| + 1/2`, up to `tol`.
pub fn is_p_representable_mode(md: &ModeParams, tol: f64) -> bool {
    nonclassicality_margin(md) <= tol
}

/// `|m| + 1/2 - n`: positive for nonclassical modes.
pub fn nonclassicality_margin(md: &ModeParams) -> f64 {
    md.m.norm() + 0.5 - md.n
}

/// Same test as [`is_p_representable_mode`] through the 2×2 eigenvalue
/// `n - |m|` of the mode matrix.
pub fn is_p_representable_mode_eig(md: &ModeParams, tol: f64) -> bool {
    let shifted = md.matrix() - Matrix2::identity() * c64(0.5, 0.0);
    linalg::min_eigenvalue2(&shifted) >= -tol
}
