//! Passive bilinear Bogoliubov mixers and their action on covariance data.
//!
//! The mixer acts on the mode vector as
//!
//! ```text
//! M = | R    S  |,   R = cosθ·diag(e^{iφ0}, e^{-iφ0}),
//!     | -S*  R* |    S = sinθ·diag(e^{iφ1}, e^{-iφ1}),
//! ```
//!
//! and maps covariance matrices as `V' = M⁻¹ V M`. `M` is unitary and
//! commutes with `E`, so `M⁻¹ = M†` and the uncertainty structure is kept.
//! `θ = π/4` is the ideal 50:50 beam splitter.

use std::f64::consts::FRAC_PI_4;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::classicality::ModeParams;
use crate::covariance::{build_covariance, CovMat4, GaussianParams};
use crate::{c64, Error, Result, C64};

/// Mixing angle and phases, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixerConfig {
    pub theta: f64,
    pub phi0: f64,
    pub phi1: f64,
}

impl MixerConfig {
    pub fn new(theta: f64, phi0: f64, phi1: f64) -> Self {
        Self { theta, phi0, phi1 }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// 50:50 beam splitter with zero phases.
    pub fn balanced() -> Self {
        Self::new(FRAC_PI_4, 0.0, 0.0)
    }

    /// Configuration whose matrix is `M⁻¹ = M†`: `(θ, φ0, φ1) -> (-θ, -φ0, φ1)`.
    pub fn inverse(&self) -> Self {
        Self::new(-self.theta, -self.phi0, self.phi1)
    }

    fn blocks(&self) -> (Matrix2<C64>, Matrix2<C64>) {
        let (s, c) = self.theta.sin_cos();
        let e0 = C64::from_polar(1.0, self.phi0);
        let e1 = C64::from_polar(1.0, self.phi1);
        let r = Matrix2::new(e0 * c, c64(0.0, 0.0), c64(0.0, 0.0), e0.conj() * c);
        let sm = Matrix2::new(e1 * s, c64(0.0, 0.0), c64(0.0, 0.0), e1.conj() * s);
        (r, sm)
    }
}

/// `M = [[R, S], [-S*, R*]]`.
pub fn build_mixer(cfg: &MixerConfig) -> Matrix4<C64> {
    let (r, s) = cfg.blocks();
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&r);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&s);
    m.fixed_view_mut::<2, 2>(2, 0)
        .copy_from(&(-s.map(|z| z.conj())));
    m.fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&r.map(|z| z.conj()));
    m
}

/// `M⁻¹` in closed form, `[[R*, -S], [S*, R]]`.
pub fn mixer_inverse(cfg: &MixerConfig) -> Matrix4<C64> {
    build_mixer(&cfg.inverse())
}

/// `V' = M⁻¹ V M`.
pub fn transform_full(v: &CovMat4, cfg: &MixerConfig) -> CovMat4 {
    let out = mixer_inverse(cfg) * v.matrix() * build_mixer(cfg);
    CovMat4::project(out)
}

/// Blocks of the transformed covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputBlocks {
    pub v1p: Matrix2<C64>,
    pub v2p: Matrix2<C64>,
    pub cp: Matrix2<C64>,
}

impl OutputBlocks {
    /// One-mode data `(n1', m1')` of output port 1.
    pub fn mode1(&self) -> ModeParams {
        ModeParams::new(self.v1p[(0, 0)].re, self.v1p[(0, 1)])
    }

    pub fn mode2(&self) -> ModeParams {
        ModeParams::new(self.v2p[(0, 0)].re, self.v2p[(0, 1)])
    }

    pub fn assemble(&self) -> Matrix4<C64> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.v1p);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.cp);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.cp.adjoint());
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.v2p);
        m
    }

    /// Output observables, read from the blocks.
    pub fn params(&self) -> GaussianParams {
        GaussianParams::new(
            self.v1p[(0, 0)].re,
            self.v1p[(0, 1)],
            self.v2p[(0, 0)].re,
            self.v2p[(0, 1)],
            self.cp[(0, 0)],
            self.cp[(0, 1)],
        )
    }

    /// `max |C'_ij|`.
    pub fn coupling_norm(&self) -> f64 {
        self.cp.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Blockwise transform:
///
/// ```text
/// V1' = R* V1 R + S V2 S* - S C† R - R* C S*
/// V2' = S* V1 S + R V2 R* + R C† S + S* C R*
/// C'  = R* V1 S - S V2 R* - S C† S + R* C R*
/// ```
pub fn transform_blocks(p: &GaussianParams, cfg: &MixerConfig) -> OutputBlocks {
    let (r, s) = cfg.blocks();
    let rc = r.map(|z| z.conj());
    let sc = s.map(|z| z.conj());
    let v1 = p.local_block1();
    let v2 = p.local_block2();
    let c = p.correlation_block();
    let ca = c.adjoint();

    let v1p = rc * v1 * r + s * v2 * sc - s * ca * r - rc * c * sc;
    let v2p = sc * v1 * s + r * v2 * rc + r * ca * s + sc * c * rc;
    let cp = rc * v1 * s - s * v2 * rc - s * ca * s + rc * c * rc;
    OutputBlocks { v1p, v2p, cp }
}

/// The two decoupling conditions (both vanish iff `C' = 0`):
///
/// ```text
/// sin2θ (m2 e^{i(φ0+φ1)} - m1 e^{-i(φ0+φ1)}) - 2 cos2θ mc
/// sin2θ e^{-i(φ0-φ1)} (n1 - n2) + cos2θ (ms e^{-2iφ0} + ms* e^{2iφ1})
///     + (ms e^{-2iφ0} - ms* e^{2iφ1})
/// ```
///
/// They equal `-2 C'_{01}` and `2 C'_{00}` respectively.
pub fn coupling_residuals(p: &GaussianParams, cfg: &MixerConfig) -> (C64, C64) {
    let (s2, c2) = (2.0 * cfg.theta).sin_cos();
    let sum = C64::from_polar(1.0, cfg.phi0 + cfg.phi1);
    let first = (p.m2 * sum - p.m1 * sum.conj()) * s2 - p.mc * (2.0 * c2);

    let diff = C64::from_polar(1.0, -(cfg.phi0 - cfg.phi1));
    let a = p.ms * C64::from_polar(1.0, -2.0 * cfg.phi0);
    let b = p.ms.conj() * C64::from_polar(1.0, 2.0 * cfg.phi1);
    let second = diff * (s2 * (p.n1 - p.n2)) + (a + b) * c2 + (a - b);
    (first, second)
}

/// Phases `(φ0, φ1)` that decouple the 50:50 output, if any exist.
///
/// At `θ = π/4` the first condition fixes `φ0 + φ1` (mod π) from
/// `arg m1 - arg m2` and needs `|m1| = |m2|`. The magnitude of the second
/// does not depend on `φ0 - φ1` at all: it is
/// `|(n1 - n2) + 2i·Im(ms e^{-i(φ0+φ1)})|`, so it demands `n1 = n2` and, when
/// the phase sum is free (`m1 = m2 = 0`), fixes it to `arg ms`. The phase
/// difference is returned as 0.
pub fn solve_decoupling_phases(p: &GaussianParams, tol: f64) -> Option<(f64, f64)> {
    let (a1, a2) = (p.m1.norm(), p.m2.norm());
    let sum = if a1 <= tol && a2 <= tol {
        if p.ms.norm() > tol {
            p.ms.arg()
        } else {
            0.0
        }
    } else {
        if (a1 - a2).abs() > tol {
            return None;
        }
        0.5 * (p.m1.arg() - p.m2.arg())
    };
    let cfg = MixerConfig::new(FRAC_PI_4, 0.5 * sum, 0.5 * sum);
    let (r1, r2) = coupling_residuals(p, &cfg);
    (r1.norm() < tol && r2.norm() < tol).then_some((cfg.phi0, cfg.phi1))
}

/// Symmetric local determinants: `|(n1² - |m1|²) - (n2² - |m2|²)| <= tol`.
pub fn is_ssld(p: &GaussianParams, tol: f64) -> bool {
    (p.local_det1() - p.local_det2()).abs() <= tol
}

/// One-mode symplectic `L = R(ψ/2)·Sq(ρ)·R(-ψ/2)` acting as `V -> L V L†`,
/// with `R(α) = diag(e^{iα}, e^{-iα})` and
/// `Sq(ρ) = [[cosh ρ, sinh ρ], [sinh ρ, cosh ρ]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSymplectic {
    /// Phase `ψ` of the anomalous moment being removed.
    pub phase: f64,
    pub squeeze: f64,
}

impl LocalSymplectic {
    pub fn identity() -> Self {
        Self {
            phase: 0.0,
            squeeze: 0.0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0.0 && self.squeeze == 0.0
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        let rot = |a: f64| {
            Matrix2::new(
                C64::from_polar(1.0, a),
                c64(0.0, 0.0),
                c64(0.0, 0.0),
                C64::from_polar(1.0, -a),
            )
        };
        let (ch, sh) = (self.squeeze.cosh(), self.squeeze.sinh());
        let sq = Matrix2::new(c64(ch, 0.0), c64(sh, 0.0), c64(sh, 0.0), c64(ch, 0.0));
        rot(0.5 * self.phase) * sq * rot(-0.5 * self.phase)
    }

    // Removes m from [[n, m], [m*, n]]; requires n > |m|.
    fn normalizing(n: f64, m: C64) -> Self {
        if m.norm() == 0.0 {
            return Self::identity();
        }
        Self {
            phase: m.arg(),
            squeeze: -0.5 * (m.norm() / n).atanh(),
        }
    }
}

/// Local operations applied by [`local_normal_form`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalOps {
    pub party1: LocalSymplectic,
    pub party2: LocalSymplectic,
}

/// Brings both local blocks to `sqrt(det Vi)·I` with local symplectic
/// congruences, transforming the correlations as `C -> L1 C L2†`.
pub fn local_normal_form(p: &GaussianParams) -> Result<(GaussianParams, LocalOps)> {
    p.validate()?;
    for (party, det, n) in [(1u8, p.local_det1(), p.n1), (2u8, p.local_det2(), p.n2)] {
        if det <= 1e-12 || n <= 0.0 {
            return Err(Error::DegenerateLocalBlock { party, det });
        }
    }
    let ops = LocalOps {
        party1: LocalSymplectic::normalizing(p.n1, p.m1),
        party2: LocalSymplectic::normalizing(p.n2, p.m2),
    };
    if ops.party1.is_identity() && ops.party2.is_identity() {
        return Ok((*p, ops));
    }
    let mut l = Matrix4::zeros();
    l.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&ops.party1.matrix());
    l.fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&ops.party2.matrix());
    let v = build_covariance(p)?;
    let out = CovMat4::project(l * v.matrix() * l.adjoint());
    let mut q = out.params();
    q.n1 = p.local_det1().sqrt();
    q.n2 = p.local_det2().sqrt();
    q.m1 = c64(0.0, 0.0);
    q.m2 = c64(0.0, 0.0);
    Ok((q, ops))
}
