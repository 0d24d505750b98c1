//! Covariance representation and the closed-form physicality and
//! separability criteria.
//!
//! A zero-mean two-mode Gaussian state is fixed by six observables. In the
//! ordered basis `(a1†, a1, a2†, a2)` its covariance matrix reads
//!
//! ```text
//!     | n1    m1    ms    mc  |
//! V = | m1*   n1    mc*   ms* |
//!     | ms*   mc    n2    m2  |
//!     | mc*   ms    m2*   n2  |
//! ```
//!
//! The state is physical iff `V + E/2 >= 0` with `E = diag(1, -1, 1, -1)`,
//! and separable iff additionally `TVT + E/2 >= 0`, where `T` exchanges
//! `a2 <-> a2†`. Both 4×4 conditions are reduced to scalar inequalities on
//! the observables through the Schur complement of the party-1 block.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::classicality::ModeParams;
use crate::linalg;
use crate::{c64, Error, Result, C64};

/// Default tolerance for boundary comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

const LAYOUT_TOL: f64 = 1e-12;

/// The six observables of a two-mode Gaussian covariance matrix.
///
/// Complex fields serialize as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub n1: f64,
    pub m1: C64,
    pub n2: f64,
    pub m2: C64,
    pub ms: C64,
    pub mc: C64,
}

impl GaussianParams {
    pub fn new(n1: f64, m1: C64, n2: f64, m2: C64, ms: C64, mc: C64) -> Self {
        Self {
            n1,
            m1,
            n2,
            m2,
            ms,
            mc,
        }
    }

    pub fn vacuum() -> Self {
        Self::symmetric(0.5, 0.0)
    }

    /// The symmetric class `n1 = n2 = n`, `m1 = m2 = ms = 0`, `mc = m`.
    pub fn symmetric(n: f64, m: f64) -> Self {
        let z = c64(0.0, 0.0);
        Self::new(n, z, n, z, z, c64(m, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        if !self.n1.is_finite() {
            return Err(Error::NonFinite("n1"));
        }
        if !self.n2.is_finite() {
            return Err(Error::NonFinite("n2"));
        }
        for (name, z) in [
            ("m1", self.m1),
            ("m2", self.m2),
            ("ms", self.ms),
            ("mc", self.mc),
        ] {
            if !finite(z) {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(())
    }

    /// True for `n1 = n2`, `m1 = m2 = ms = 0` within `tol`.
    pub fn is_symmetric_class(&self, tol: f64) -> bool {
        (self.n1 - self.n2).abs() <= tol
            && self.m1.norm() <= tol
            && self.m2.norm() <= tol
            && self.ms.norm() <= tol
    }

    /// `det V1 = n1² - |m1|²`.
    pub fn local_det1(&self) -> f64 {
        self.n1 * self.n1 - self.m1.norm_sqr()
    }

    /// `det V2 = n2² - |m2|²`.
    pub fn local_det2(&self) -> f64 {
        self.n2 * self.n2 - self.m2.norm_sqr()
    }

    /// Reduced one-mode data of party 1.
    pub fn mode1(&self) -> ModeParams {
        ModeParams::new(self.n1, self.m1)
    }

    pub fn mode2(&self) -> ModeParams {
        ModeParams::new(self.n2, self.m2)
    }

    pub fn local_block1(&self) -> Matrix2<C64> {
        self.mode1().matrix()
    }

    pub fn local_block2(&self) -> Matrix2<C64> {
        self.mode2().matrix()
    }

    /// Correlation block `C = [[ms, mc], [mc*, ms*]]`.
    pub fn correlation_block(&self) -> Matrix2<C64> {
        Matrix2::new(self.ms, self.mc, self.mc.conj(), self.ms.conj())
    }
}

/// Hermitian 4×4 covariance matrix in the `(a1†, a1, a2†, a2)` layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat4(Matrix4<C64>);

impl CovMat4 {
    /// Wraps a matrix after checking Hermiticity and the element layout.
    pub fn from_matrix(m: Matrix4<C64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let herm = linalg::hermitian_deviation(&m);
        if herm > LAYOUT_TOL * scale {
            return Err(Error::NotHermitian(herm));
        }
        let layout = (m - conj_swapped(&m))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if layout > LAYOUT_TOL * scale {
            return Err(Error::Layout(layout));
        }
        Ok(Self::project(m))
    }

    // Nearest matrix with exact Hermitian layout; used on outputs of
    // structure-preserving transforms to drop roundoff.
    pub(crate) fn project(m: Matrix4<C64>) -> Self {
        let h = (m + m.adjoint()) * c64(0.5, 0.0);
        let l = (h + conj_swapped(&h)) * c64(0.5, 0.0);
        Self(build_matrix(&params_of(&l)))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4<C64> {
        self.0
    }

    /// Reads the six observables back from the layout.
    pub fn params(&self) -> GaussianParams {
        params_of(&self.0)
    }

    /// Row-major `[re, im]` pairs, the JSON matrix encoding.
    pub fn to_rows(&self) -> [[[f64; 2]; 4]; 4] {
        let mut rows = [[[0.0; 2]; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let z = self.0[(i, j)];
                *slot = [z.re, z.im];
            }
        }
        rows
    }

    pub fn from_rows(rows: &[[[f64; 2]; 4]; 4]) -> Result<Self> {
        Self::from_matrix(Matrix4::from_fn(|i, j| c64(rows[i][j][0], rows[i][j][1])))
    }

    /// Partial mirror reflection `TVT`, `T = diag(I, X)`: swaps rows and
    /// columns 2 and 3.
    pub fn partial_transpose(&self) -> Self {
        let mut out = self.0;
        out.swap_rows(2, 3);
        out.swap_columns(2, 3);
        Self(out)
    }

    /// `V + E/2`.
    pub fn uncertainty_matrix(&self) -> Matrix4<C64> {
        self.0 + symplectic_form() * c64(0.5, 0.0)
    }
}

/// Builds the covariance matrix of `p`.
pub fn build_covariance(p: &GaussianParams) -> Result<CovMat4> {
    p.validate()?;
    Ok(CovMat4(build_matrix(p)))
}

/// Inverse of [`build_covariance`].
pub fn params_from_matrix(v: &CovMat4) -> GaussianParams {
    v.params()
}

pub fn partial_transpose(v: &CovMat4) -> CovMat4 {
    v.partial_transpose()
}

fn build_matrix(p: &GaussianParams) -> Matrix4<C64> {
    let n1 = c64(p.n1, 0.0);
    let n2 = c64(p.n2, 0.0);
    let (m1, m2, ms, mc) = (p.m1, p.m2, p.ms, p.mc);
    #[rustfmt::skip]
    let m = Matrix4::new(
        n1,         m1,        ms,         mc,
        m1.conj(),  n1,        mc.conj(),  ms.conj(),
        ms.conj(),  mc,        n2,         m2,
        mc.conj(),  ms,        m2.conj(),  n2,
    );
    m
}

fn params_of(m: &Matrix4<C64>) -> GaussianParams {
    GaussianParams::new(
        m[(0, 0)].re,
        m[(0, 1)],
        m[(2, 2)].re,
        m[(2, 3)],
        m[(0, 2)],
        m[(0, 3)],
    )
}

// P conj(V) P with P swapping (0,1) and (2,3); equals V for the layout.
fn conj_swapped(m: &Matrix4<C64>) -> Matrix4<C64> {
    let s = [1usize, 0, 3, 2];
    Matrix4::from_fn(|i, j| m[(s[i], s[j])].conj())
}

/// `E = diag(Z, Z)`, `Z = diag(1, -1)`.
pub fn symplectic_form() -> Matrix4<C64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(
        c64(1.0, 0.0),
        c64(-1.0, 0.0),
        c64(1.0, 0.0),
        c64(-1.0, 0.0),
    ))
}

/// `T = diag(I, X)`, `X` the 2×2 swap.
pub fn mirror() -> Matrix4<C64> {
    let o = c64(1.0, 0.0);
    let z = c64(0.0, 0.0);
    #[rustfmt::skip]
    let t = Matrix4::new(
        o, z, z, z,
        z, o, z, z,
        z, z, z, o,
        z, z, o, z,
    );
    t
}

/// Auxiliary quantities of the Schur complement of the party-1 block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurTerms {
    pub s: f64,
    pub c: C64,
    pub d: f64,
}

/// `s = n1(|mc|²+|ms|²) - mc ms m1* - mc* ms* m1`,
/// `c = 2 n1 ms* mc - mc² m1* - (ms*)² m1`,
/// `d = n1² - 1/4 - |m1|²`.
pub fn schur_terms(p: &GaussianParams) -> SchurTerms {
    let GaussianParams { n1, m1, ms, mc, .. } = *p;
    let s = n1 * (mc.norm_sqr() + ms.norm_sqr()) - (mc * ms * m1.conj()).re * 2.0;
    let c = ms.conj() * mc * (2.0 * n1) - mc * mc * m1.conj() - ms.conj() * ms.conj() * m1;
    let d = n1 * n1 - 0.25 - m1.norm_sqr();
    SchurTerms { s, c, d }
}

/// Which of the two 4×4 conditions an explicit inequality encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// `V + E/2 >= 0`.
    Physical,
    /// `TVT + E/2 >= 0`.
    Separable,
}

/// `n1 - sqrt(|m1|² + 1/4)`; non-negative iff `V1 + Z/2 >= 0`.
pub fn party1_margin(p: &GaussianParams) -> f64 {
    p.n1 - (p.m1.norm_sqr() + 0.25).sqrt()
}

/// Signed margin of the party-2 Schur inequality,
///
/// `n2 - s/d - sqrt( (1/4)(±(|mc|² - |ms|²)/d - 1)² + |m2 - c/d|² )`,
///
/// with `+` for [`Criterion::Physical`] and `-` for
/// [`Criterion::Separable`]. Returns `None` when the pivot `d` is not
/// positive, where the Schur form is undefined.
pub fn schur_margin(p: &GaussianParams, which: Criterion) -> Option<f64> {
    let SchurTerms { s, c, d } = schur_terms(p);
    if d <= 0.0 {
        return None;
    }
    let sign = match which {
        Criterion::Physical => 1.0,
        Criterion::Separable => -1.0,
    };
    let delta = sign * (p.mc.norm_sqr() - p.ms.norm_sqr()) / d;
    let off = (p.m2 - c / d).norm_sqr();
    Some(p.n2 - s / d - (0.25 * (delta - 1.0).powi(2) + off).sqrt())
}

fn decide(p: &GaussianParams, which: Criterion, tol: f64) -> bool {
    if party1_margin(p) < -tol {
        return false;
    }
    let d = schur_terms(p).d;
    // n1 within tol of its bound lets d dip slightly negative
    if d <= tol * (1.0 + 2.0 * p.n1.abs()) {
        let v = CovMat4(build_matrix(p));
        let target = match which {
            Criterion::Physical => v,
            Criterion::Separable => v.partial_transpose(),
        };
        return linalg::min_eigenvalue(&target.uncertainty_matrix()) >= -tol;
    }
    match schur_margin(p, which) {
        Some(margin) => margin >= -tol,
        None => false,
    }
}

/// Uncertainty-principle test `V + E/2 >= 0` through the explicit
/// inequalities; states within `tol` of the boundary count as physical.
///
/// A pure party 1 (`d ≈ 0`) makes the Schur pivot singular; such states
/// are decided by the eigenvalues of `V + E/2` instead.
pub fn is_physical(p: &GaussianParams, tol: f64) -> bool {
    if p.validate().is_err() {
        return false;
    }
    decide(p, Criterion::Physical, tol)
}

/// Separability of a physical state: `TVT + E/2 >= 0` through the explicit
/// inequalities (the physicality form with the sign of the `|mc|² - |ms|²`
/// term flipped).
pub fn is_separable(p: &GaussianParams, tol: f64) -> Result<bool> {
    p.validate()?;
    if !is_physical(p, tol) {
        return Err(Error::Nonphysical);
    }
    Ok(decide(p, Criterion::Separable, tol))
}
