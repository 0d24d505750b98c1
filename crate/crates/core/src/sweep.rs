//! Entanglement-degree surface over the symmetric-class `(n, m)` plane.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariance::{GaussianParams, DEFAULT_TOL};
use crate::measures::degree_parts;
use crate::tmtss::{classify_symmetric, SymmetricClass};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Squeezing of the reference state.
    pub r: f64,
    pub n_min: f64,
    pub n_max: f64,
    pub n_steps: usize,
    pub m_min: f64,
    pub m_max: f64,
    pub m_steps: usize,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            r: 1.0,
            n_min: 0.5,
            n_max: 3.5,
            n_steps: 141,
            m_min: 0.0,
            m_max: 3.0,
            m_steps: 121,
            tol: DEFAULT_TOL,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::InvalidSweep(format!(
                "r must be > 0, got {}",
                self.r
            )));
        }
        if self.n_steps < 2 || self.m_steps < 2 {
            return Err(Error::InvalidSweep("steps must be >= 2".into()));
        }
        for (lo, hi, name) in [(self.n_min, self.n_max, "n"), (self.m_min, self.m_max, "m")] {
            if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                return Err(Error::InvalidSweep(format!(
                    "{name} range needs max > min, got [{lo}, {hi}]"
                )));
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidSweep(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub fn n_values(&self) -> Vec<f64> {
        linspace(self.n_min, self.n_max, self.n_steps)
    }

    pub fn m_values(&self) -> Vec<f64> {
        linspace(self.m_min, self.m_max, self.m_steps)
    }

    pub fn len(&self) -> usize {
        self.n_steps * self.m_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

// endpoints exact
fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: f64,
    pub m: f64,
    pub class: SymmetricClass,
    /// Absent for nonphysical points.
    pub degree: Option<f64>,
}

/// Classifies one symmetric-class point and, when physical, computes its
/// entanglement degree.
pub fn evaluate_point(n: f64, m: f64, r: f64, tol: f64) -> Result<SweepRecord> {
    let class = classify_symmetric(n, m, tol);
    let degree = match class {
        SymmetricClass::Nonphysical => None,
        _ => {
            let (_, bures, reference) = degree_parts(&GaussianParams::symmetric(n, m), r)?;
            Some(1.0 - bures / reference)
        }
    };
    Ok(SweepRecord {
        n,
        m,
        class,
        degree,
    })
}

/// All grid points, `n` outer and `m` inner.
pub fn sweep_grid(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let ns = cfg.n_values();
    let ms = cfg.m_values();
    (0..cfg.len())
        .into_par_iter()
        .map(|k| evaluate_point(ns[k / cfg.m_steps], ms[k % cfg.m_steps], cfg.r, cfg.tol))
        .collect()
}

/// Nine significant digits, scientific.
pub fn format_sci(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

pub const CSV_HEADER: &str = "n,m,class,E";

/// `n,m,class,E` rows; `E` is empty for nonphysical points.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for rec in records {
        let e = rec.degree.map(format_sci).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{}",
            format_sci(rec.n),
            format_sci(rec.m),
            rec.class,
            e
        )?;
    }
    Ok(())
}

/// gnuplot `nonuniform matrix` block: the first row holds the column count
/// followed by the `m` values, each further row an `n` value followed by
/// `E` across `m` (`nan` where nonphysical).
pub fn write_matrix<W: Write>(
    cfg: &SweepConfig,
    records: &[SweepRecord],
    mut out: W,
) -> io::Result<()> {
    let ms = cfg.m_values();
    let mut head = vec![cfg.m_steps.to_string()];
    head.extend(ms.iter().map(|&m| format_sci(m)));
    writeln!(out, "{}", head.join(" "))?;
    for row in records.chunks(cfg.m_steps) {
        let mut line = vec![format_sci(row[0].n)];
        line.extend(
            row.iter()
                .map(|rec| rec.degree.map(format_sci).unwrap_or_else(|| "nan".into())),
        );
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}
