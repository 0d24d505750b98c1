//! Two-mode Gaussian states described by their covariance data.
//!
//! The crate decides physicality and separability of a two-mode Gaussian
//! state from closed-form Schur-complement inequalities, pushes states
//! through passive bilinear mixers (beam-splitter family), tests
//! P-representability of the output ports, and quantifies entanglement of
//! the input through a Bures-distance degree measured against a pure
//! two-mode squeezed reference.
//!
//! All matrices use the ordered basis `(a1†, a1, a2†, a2)`; the vacuum has
//! covariance `I/2`.

pub mod classicality;
pub mod covariance;
mod error;
pub mod linalg;
pub mod measures;
pub mod mixer;
pub mod report;
pub mod sweep;
pub mod tmtss;

pub use classicality::ModeParams;
pub use covariance::{CovMat4, GaussianParams, SchurTerms, DEFAULT_TOL};
pub use error::{Error, Result};
pub use measures::{MeasureReport, ReferenceStates};
pub use mixer::{MixerConfig, OutputBlocks};
pub use tmtss::{SymmetricClass, TmtssInputs};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

pub(crate) fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
