//! Fidelity, Bures distance and the entanglement degree against a pure
//! two-mode squeezed reference.
//!
//! When one of the two states is pure the Uhlmann fidelity reduces to
//! `Tr(ρσ)`, which for zero-mean Gaussian states is `1/sqrt(det(Va + Vb))`
//! in this crate's covariance convention. That overlap is the only fidelity
//! primitive here; mixed–mixed fidelities are not provided.

use serde::{Deserialize, Serialize};

use crate::classicality::ModeParams;
use crate::covariance::{build_covariance, is_physical, is_separable, CovMat4, GaussianParams};
use crate::linalg;
use crate::{Error, Result, C64};

// Roundoff allowance above 1 for overlaps of (numerically) identical pure states.
const FIDELITY_SLACK: f64 = 1e-12;

/// Pure references parameterized by the squeezing `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceStates {
    pub r: f64,
    /// `tanh r`.
    pub lambda: f64,
    /// Two-mode squeezed vacuum: `n = cosh 2r / 2`, `mc = -sinh 2r / 2`.
    pub tmsv: GaussianParams,
    /// `tmsv` with the correlations removed (product of its thermal marginals).
    pub sep: GaussianParams,
    /// One-mode squeezed vacuum: `n = cosh 2r / 2`, `m = -sinh 2r / 2`.
    pub omss: ModeParams,
}

impl ReferenceStates {
    pub fn new(r: f64) -> Self {
        let n = (2.0 * r).cosh() / 2.0;
        let m = -(2.0 * r).sinh() / 2.0;
        let tmsv = GaussianParams::symmetric(n, m);
        Self {
            r,
            lambda: r.tanh(),
            tmsv,
            sep: GaussianParams::symmetric(n, 0.0),
            omss: ModeParams::real(n, m),
        }
    }

    /// `tmsv` with its correlation rotated onto the phase of `mc`.
    ///
    /// A zero `mc` has no phase and keeps the default reference.
    pub fn tmsv_aligned(&self, mc: C64) -> GaussianParams {
        let mut out = self.tmsv;
        if mc.norm() > 0.0 {
            out.mc = C64::from_polar(self.tmsv.mc.norm(), mc.arg());
        }
        out
    }

    /// `omss` with its anomalous moment rotated onto the phase of `m`.
    pub fn omss_aligned(&self, m: C64) -> ModeParams {
        let mut out = self.omss;
        if m.norm() > 0.0 {
            out.m = C64::from_polar(self.omss.m.norm(), m.arg());
        }
        out
    }
}

/// `Tr(ρ_a ρ_b) = 1/sqrt(det(Va + Vb))` for two-mode states.
pub fn trace_overlap(va: &CovMat4, vb: &CovMat4) -> Result<f64> {
    let w = va.matrix() + vb.matrix();
    let scale = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    overlap_from_det(linalg::det_real(&w), scale)
}

/// One-mode version of [`trace_overlap`].
pub fn trace_overlap_mode(a: &ModeParams, b: &ModeParams) -> Result<f64> {
    let det = (a.n + b.n).powi(2) - (a.m + b.m).norm_sqr();
    overlap_from_det(det, (a.n + b.n).abs())
}

// Overlaps of states never exceed 1; an excess within the rounding of the
// determinant (relative error ~ eps·|W|²) is clamped.
fn overlap_from_det(det: f64, scale: f64) -> Result<f64> {
    if !(det.is_finite() && det > 0.0) {
        return Err(Error::NumericDomain(format!(
            "det(Va + Vb) = {det:e} is not positive"
        )));
    }
    let f = det.sqrt().recip();
    let allowance = 8.0 * f64::EPSILON * (1.0 + scale).powi(2);
    Ok(if f > 1.0 && f - 1.0 <= allowance {
        1.0
    } else {
        f
    })
}

/// Fidelity of an output port with the one-mode squeezed reference,
///
/// `[n² - m² + n cosh 2r + m sinh 2r + 1/4]^{-1/2}`,
///
/// evaluated with the port's anomalous moment rotated onto the reference
/// phase, so that `m sinh 2r = -|m| |sinh 2r|`. Equals
/// `trace_overlap_mode(md, omss_aligned(md.m))`.
pub fn output_port_fidelity(md: &ModeParams, r: f64) -> Result<f64> {
    let a = md.m.norm();
    let bracket = md.n * md.n - a * a + md.n * (2.0 * r).cosh() - a * (2.0 * r).sinh().abs() + 0.25;
    if !(bracket.is_finite() && bracket > 0.0) {
        return Err(Error::NumericDomain(format!(
            "port fidelity bracket {bracket:e} is not positive"
        )));
    }
    Ok(bracket.sqrt().recip())
}

/// `d_B = 2 - 2 sqrt(F)`.
pub fn bures_from_fidelity(f: f64) -> Result<f64> {
    if !(f > 0.0 && f <= 1.0 + FIDELITY_SLACK) {
        return Err(Error::FidelityOutOfRange(f));
    }
    Ok(2.0 - 2.0 * f.min(1.0).sqrt())
}

/// Bures distance of a product of two fidelities from the per-factor
/// distances: `d1 + d2 - d1·d2/2`.
pub fn compose_bures(d1: f64, d2: f64) -> f64 {
    d1 + d2 - 0.5 * d1 * d2
}

/// Fidelity, Bures distance and entanglement degree of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    /// Reference squeezing.
    pub r: f64,
    pub fidelity: f64,
    pub bures: f64,
    /// `d_B(ρ_sep, σ)`, the normalizer.
    pub reference_bures: f64,
    /// `1 - d_B(ρ, σ) / d_B(ρ_sep, σ)`; negative far from `σ`.
    pub degree: f64,
    pub physical: bool,
    pub separable: bool,
}

/// Entanglement degree of `p` against the two-mode squeezed vacuum of
/// squeezing `r`, normalized by the distance of its separable counterpart.
pub fn entanglement_degree(p: &GaussianParams, r: f64, tol: f64) -> Result<MeasureReport> {
    p.validate()?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::DegenerateReference(r));
    }
    if !is_physical(p, tol) {
        return Err(Error::Nonphysical);
    }
    let separable = is_separable(p, tol)?;
    let (fidelity, bures, reference_bures) = degree_parts(p, r)?;
    Ok(MeasureReport {
        r,
        fidelity,
        bures,
        reference_bures,
        degree: 1.0 - bures / reference_bures,
        physical: true,
        separable,
    })
}

/// `(F(ρ, σ), d_B(ρ, σ), d_B(ρ_sep, σ))` without the physicality gate.
pub(crate) fn degree_parts(p: &GaussianParams, r: f64) -> Result<(f64, f64, f64)> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::DegenerateReference(r));
    }
    let refs = ReferenceStates::new(r);
    let sigma = build_covariance(&refs.tmsv_aligned(p.mc))?;
    let fidelity = trace_overlap(&build_covariance(p)?, &sigma)?;
    let bures = bures_from_fidelity(fidelity)?;

    let sigma0 = build_covariance(&refs.tmsv)?;
    let f_sep = trace_overlap(&build_covariance(&refs.sep)?, &sigma0)?;
    let reference_bures = bures_from_fidelity(f_sep)?;
    if reference_bures <= 0.0 {
        return Err(Error::DegenerateReference(r));
    }
    Ok((fidelity, bures, reference_bures))
}

/// `(n, m)` on the pure-state boundary `n = sqrt(m² + 1/4)` for squeezing `r`.
pub fn pure_symmetric_point(r: f64) -> (f64, f64) {
    ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::covariance::DEFAULT_TOL;

    fn cov(p: &GaussianParams) -> CovMat4 {
        build_covariance(p).unwrap()
    }

    #[test]
    fn reference_states_are_pure() {
        for r in [0.0f64, 0.3, 1.0, 2.5] {
            let refs = ReferenceStates::new(r);
            let (n, m) = (refs.tmsv.n1, refs.tmsv.mc.norm());
            assert!((n * n - m * m - 0.25).abs() < 1e-12 * n * n);
            assert_eq!(refs.sep.mc, c64(0.0, 0.0));
            assert_eq!(refs.sep.n1, refs.tmsv.n1);
            assert!((refs.lambda - r.tanh()).abs() < 1e-15);
        }
    }

    #[test]
    fn overlap_examples() {
        let vac = cov(&GaussianParams::vacuum());
        assert!((trace_overlap(&vac, &vac).unwrap() - 1.0).abs() < 1e-15);

        let nbar = 0.7;
        let th = ModeParams::real(nbar + 0.5, 0.0);
        assert!((trace_overlap_mode(&th, &th).unwrap() - 1.0 / (2.0 * nbar + 1.0)).abs() < 1e-15);

        // two TMSVs: (1 - l1²)(1 - l2²)/(1 - l1 l2)²
        let (r1, r2): (f64, f64) = (1.0, 0.5493061443340549); // tanh r2 = 0.5
        let (l1, l2) = (r1.tanh(), r2.tanh());
        let a = cov(&ReferenceStates::new(r1).tmsv);
        let b = cov(&ReferenceStates::new(r2).tmsv);
        let expect = (1.0 - l1 * l1) * (1.0 - l2 * l2) / (1.0 - l1 * l2).powi(2);
        assert!((trace_overlap(&a, &b).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn overlap_rejects_nonpositive_determinant() {
        let a = ModeParams::real(0.1, 2.0);
        assert!(matches!(
            trace_overlap_mode(&a, &a),
            Err(Error::NumericDomain(_))
        ));
    }

    #[test]
    fn port_fidelity_examples() {
        let refs = ReferenceStates::new(1.0);
        assert!((output_port_fidelity(&refs.omss, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let vac = ModeParams::real(0.5, 0.0);
        assert!((output_port_fidelity(&vac, 0.0).unwrap() - 1.0).abs() < 1e-15);

        // (n', m') = (2, 1.8) at r = 1, phase-aligned
        let md = ModeParams::real(2.0, 1.8);
        let f = output_port_fidelity(&md, 1.0).unwrap();
        let g = trace_overlap_mode(&md, &refs.omss_aligned(md.m)).unwrap();
        assert!((f - g).abs() < 1e-12);
        assert!((f - 0.706_040_5).abs() < 1e-6, "{f}");
        // the anti-aligned pairing gives the smaller overlap 0.25766
        let g_anti = trace_overlap_mode(&md, &refs.omss).unwrap();
        assert!((g_anti - 0.257_66).abs() < 1e-5, "{g_anti}");
    }

    #[test]
    fn bures_examples() {
        assert_eq!(bures_from_fidelity(1.0).unwrap(), 0.0);
        assert_eq!(bures_from_fidelity(0.25).unwrap(), 1.0);
        assert!((bures_from_fidelity(0.092034).unwrap() - 1.39326).abs() < 1e-5);
        assert!(bures_from_fidelity(0.0).is_err());
        assert!(bures_from_fidelity(1.5).is_err());
        assert!(bures_from_fidelity(f64::NAN).is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_bures(0.0, 0.7), 0.7);
        assert_eq!(compose_bures(1.0, 1.0), 1.5);
        let joint = bures_from_fidelity(0.25 * 0.25).unwrap();
        assert!((compose_bures(1.0, 1.0) - joint).abs() < 1e-15);
    }

    #[test]
    fn degree_anchors() {
        let refs = ReferenceStates::new(1.0);
        let top = entanglement_degree(&refs.tmsv, 1.0, DEFAULT_TOL).unwrap();
        assert!((top.degree - 1.0).abs() < 1e-12);
        assert!(!top.separable);
        let bottom = entanglement_degree(&refs.sep, 1.0, DEFAULT_TOL).unwrap();
        assert!(bottom.degree.abs() < 1e-12);
        assert!(bottom.separable);
    }

    #[test]
    fn degree_reference_value() {
        let (n, _) = pure_symmetric_point(1.0);
        let rep =
            entanglement_degree(&GaussianParams::symmetric(n, 1.6), 1.0, DEFAULT_TOL).unwrap();
        assert!((rep.fidelity - 0.39958).abs() < 1e-4);
        assert!((rep.bures - 0.73574).abs() < 1e-4);
        assert!((rep.reference_bures - 1.39326).abs() < 1e-4);
        assert!((rep.degree - 0.4719).abs() < 1e-3);
        assert!((rep.bures - (2.0 - 2.0 * rep.fidelity.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn degree_ignores_correlation_phase() {
        let a =
            entanglement_degree(&GaussianParams::symmetric(2.0, 1.2), 1.0, DEFAULT_TOL).unwrap();
        let mut p = GaussianParams::symmetric(2.0, 0.0);
        p.mc = C64::from_polar(1.2, 2.1);
        let b = entanglement_degree(&p, 1.0, DEFAULT_TOL).unwrap();
        assert!((a.degree - b.degree).abs() < 1e-12);
    }

    #[test]
    fn degree_errors() {
        let p = GaussianParams::symmetric(2.0, 1.8);
        assert_eq!(
            entanglement_degree(&p, 0.0, DEFAULT_TOL),
            Err(Error::DegenerateReference(0.0))
        );
        assert_eq!(
            entanglement_degree(&GaussianParams::symmetric(1.0, 1.8), 1.0, DEFAULT_TOL),
            Err(Error::Nonphysical)
        );
    }
}
