//! Two-mode thermal squeezed states from a noisy parametric amplifier, and
//! the classification of the symmetric class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covariance::{is_physical, GaussianParams};
use crate::{Error, Result};

/// Model inputs: diffusion `d = γt`, squeezing `r = κt`, thermal occupation `nbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TmtssInputs {
    pub d: f64,
    pub r: f64,
    pub nbar: f64,
}

impl TmtssInputs {
    pub fn new(d: f64, r: f64, nbar: f64) -> Self {
        Self { d, r, nbar }
    }

    pub fn p1(&self) -> f64 {
        self.d + 2.0 * self.r
    }

    pub fn p2(&self) -> f64 {
        self.d - 2.0 * self.r
    }
}

/// Intermediate quantities of the closed-form model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TmtssTerms {
    pub p1: f64,
    pub p2: f64,
    pub h1: f64,
    pub h2: f64,
    pub g: f64,
}

// (1 - e^{-p}) / p, continuous through p = 0
fn relax(p: f64) -> f64 {
    if p.abs() < 1e-4 {
        1.0 - p / 2.0 + p * p / 6.0 - p * p * p / 24.0
    } else {
        -(-p).exp_m1() / p
    }
}

/// `h_i = e^{-p_i} + d(2n̄+1)(1 - e^{-p_i})/p_i` and `g = h1 h2 / (h1² - h2²)`.
pub fn tmtss_terms(input: &TmtssInputs) -> Result<TmtssTerms> {
    let TmtssInputs { d, r, nbar } = *input;
    for (name, x) in [("d", d), ("r", r), ("nbar", nbar)] {
        if !x.is_finite() {
            return Err(Error::NonFinite(name));
        }
    }
    if d < 0.0 || nbar < 0.0 {
        return Err(Error::NumericDomain(format!(
            "diffusion and thermal occupation must be >= 0 (d = {d}, nbar = {nbar})"
        )));
    }
    let h = |p: f64| (-p).exp() + d * (2.0 * nbar + 1.0) * relax(p);
    let (p1, p2) = (input.p1(), input.p2());
    let (h1, h2) = (h(p1), h(p2));
    let denom = h1 * h1 - h2 * h2;
    if denom.abs() <= 1e-14 * (h1 * h1).max(h2 * h2) {
        return Err(Error::TmtssDegenerate { h1, h2 });
    }
    Ok(TmtssTerms {
        p1,
        p2,
        h1,
        h2,
        g: h1 * h2 / denom,
    })
}

/// Symmetric-class parameters `n1 = n2 = g h1`, `mc = g h2` of the model.
///
/// The formulas are applied as they stand; a nonphysical result is reported
/// as [`Error::TmtssInvalid`] with the raw `(n, m)`.
pub fn tmtss_params(input: &TmtssInputs, tol: f64) -> Result<GaussianParams> {
    let t = tmtss_terms(input)?;
    let n = t.g * t.h1;
    let m = t.g * t.h2;
    let p = GaussianParams::symmetric(n, m);
    if n < 0.0 || !is_physical(&p, tol) {
        return Err(Error::TmtssInvalid { n, m });
    }
    Ok(p)
}

/// Verdict for a symmetric-class state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetricClass {
    Nonphysical,
    Entangled,
    Separable,
}

impl SymmetricClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Nonphysical => "nonphysical",
            Self::Entangled => "entangled",
            Self::Separable => "separable",
        }
    }
}

impl fmt::Display for SymmetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sqrt(m² + 1/4) <= n < m + 1/2` is entangled; below is nonphysical,
/// above is separable. `m` is the magnitude of the cross moment.
pub fn classify_symmetric(n: f64, m: f64, tol: f64) -> SymmetricClass {
    let m = m.abs();
    if n < (m * m + 0.25).sqrt() - tol {
        SymmetricClass::Nonphysical
    } else if n >= m + 0.5 - tol {
        SymmetricClass::Separable
    } else {
        SymmetricClass::Entangled
    }
}
