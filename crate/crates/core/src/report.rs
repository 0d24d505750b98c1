//! Composite reports behind the `check` and `transform` commands.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::classicality::{is_p_representable_mode, nonclassicality_margin, ModeParams};
use crate::covariance::{build_covariance, is_physical, CovMat4, GaussianParams};
use crate::measures::{entanglement_degree, output_port_fidelity, MeasureReport};
use crate::mixer::{
    coupling_residuals, is_ssld, solve_decoupling_phases, transform_blocks, MixerConfig,
};
use crate::tmtss::{classify_symmetric, SymmetricClass};
use crate::{Error, Result, C64};

/// Classicality of one mixer output port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortReport {
    pub n: f64,
    pub m: C64,
    pub p_representable: bool,
    /// `|m| + 1/2 - n`.
    pub nonclassicality_margin: f64,
    /// Fidelity with the one-mode squeezed reference of the same `r`.
    pub fidelity: f64,
}

impl PortReport {
    fn new(md: ModeParams, r: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            n: md.n,
            m: md.m,
            p_representable: is_p_representable_mode(&md, tol),
            nonclassicality_margin: nonclassicality_margin(&md),
            fidelity: output_port_fidelity(&md, r)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub params: GaussianParams,
    pub tol: f64,
    pub ssld: bool,
    /// Only for symmetric-class inputs.
    pub symmetric_class: Option<SymmetricClass>,
    pub measures: MeasureReport,
    /// 50:50 mixer used for the port analysis.
    pub mixer: MixerConfig,
    /// Whether the mixer output factorizes (`C' = 0`).
    pub decoupled: bool,
    pub ports: [PortReport; 2],
}

/// Physicality, separability and entanglement degree of `p`, plus the
/// classicality of its two 50:50 output ports.
///
/// The port phases come from [`solve_decoupling_phases`] when the input
/// admits them, and are zero otherwise.
pub fn run_check(p: &GaussianParams, r: f64, tol: f64) -> Result<CheckReport> {
    p.validate()?;
    if !is_physical(p, tol) {
        return Err(Error::Nonphysical);
    }
    let measures = entanglement_degree(p, r, tol)?;
    let (phi0, phi1) = solve_decoupling_phases(p, tol).unwrap_or((0.0, 0.0));
    let mixer = MixerConfig::new(std::f64::consts::FRAC_PI_4, phi0, phi1);
    let blocks = transform_blocks(p, &mixer);
    let symmetric_class = p
        .is_symmetric_class(tol)
        .then(|| classify_symmetric(p.n1, p.mc.norm(), tol));
    Ok(CheckReport {
        params: *p,
        tol,
        ssld: is_ssld(p, tol),
        symmetric_class,
        measures,
        mixer,
        decoupled: blocks.coupling_norm() <= tol,
        ports: [
            PortReport::new(blocks.mode1(), r, tol)?,
            PortReport::new(blocks.mode2(), r, tol)?,
        ],
    })
}

/// Row-major `[re, im]` pairs of a 2×2 block.
pub fn block_rows(b: &Matrix2<C64>) -> [[[f64; 2]; 2]; 2] {
    let mut rows = [[[0.0; 2]; 2]; 2];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = [b[(i, j)].re, b[(i, j)].im];
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub mixer: MixerConfig,
    pub input: [[[f64; 2]; 4]; 4],
    pub output: [[[f64; 2]; 4]; 4],
    pub v1p: [[[f64; 2]; 2]; 2],
    pub v2p: [[[f64; 2]; 2]; 2],
    pub cp: [[[f64; 2]; 2]; 2],
    pub mode1: ModeParams,
    pub mode2: ModeParams,
    pub residuals: [C64; 2],
    pub coupling_norm: f64,
    pub decoupled: bool,
}

/// Output blocks and decoupling residuals of `v` under `mixer`.
pub fn run_transform(v: &CovMat4, mixer: &MixerConfig, tol: f64) -> Result<TransformReport> {
    let p = v.params();
    let blocks = transform_blocks(&p, mixer);
    let output = CovMat4::project(blocks.assemble());
    let (r1, r2) = coupling_residuals(&p, mixer);
    let coupling_norm = blocks.coupling_norm();
    Ok(TransformReport {
        mixer: *mixer,
        input: build_covariance(&p)?.to_rows(),
        output: output.to_rows(),
        v1p: block_rows(&blocks.v1p),
        v2p: block_rows(&blocks.v2p),
        cp: block_rows(&blocks.cp),
        mode1: blocks.mode1(),
        mode2: blocks.mode2(),
        residuals: [r1, r2],
        coupling_norm,
        decoupled: coupling_norm <= tol,
    })
}
