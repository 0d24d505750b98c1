#![allow(dead_code)]

use cvsep::covariance::{build_covariance, CovMat4, GaussianParams};
use cvsep::{ModeParams, C64};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn polar(rng: &mut TestRng, max_abs: f64) -> C64 {
    C64::from_polar(
        rng.gen_range(0.0..=max_abs),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Unconstrained draw: `n ∈ [0.5, 5]`, `|m| ∈ [0, 5]`, uniform phases.
pub fn raw_params(rng: &mut TestRng) -> GaussianParams {
    GaussianParams::new(
        rng.gen_range(0.5..=5.0),
        polar(rng, 5.0),
        rng.gen_range(0.5..=5.0),
        polar(rng, 5.0),
        polar(rng, 5.0),
        polar(rng, 5.0),
    )
}

/// Physical draw (rejection on the oracle's minimum eigenvalue), biased so
/// that a sizeable fraction is entangled.
pub fn physical_params(rng: &mut TestRng) -> GaussianParams {
    loop {
        let n1: f64 = rng.gen_range(0.5..=5.0);
        let n2: f64 = rng.gen_range(0.5..=5.0);
        let local = |rng: &mut TestRng, n: f64| polar(rng, (n * n - 0.25).max(0.0).sqrt() * 0.8);
        let m1 = local(rng, n1);
        let m2 = local(rng, n2);
        let scale = n1.min(n2);
        let (mc, ms) = if rng.gen_bool(0.5) {
            (polar(rng, scale), polar(rng, 0.3 * scale))
        } else {
            (polar(rng, 0.3 * scale), polar(rng, scale))
        };
        let p = GaussianParams::new(n1, m1, n2, m2, ms, mc);
        if oracle_min_eig_physical(&p) > 0.0 {
            return p;
        }
    }
}

/// Physical symmetric-class draw with a random correlation phase.
pub fn symmetric_physical(rng: &mut TestRng) -> GaussianParams {
    loop {
        let n = rng.gen_range(0.5..=5.0);
        let m: f64 = rng.gen_range(0.0..=5.0);
        if n >= (m * m + 0.25).sqrt() {
            let mut p = GaussianParams::symmetric(n, 0.0);
            p.mc = C64::from_polar(m, rng.gen_range(0.0..std::f64::consts::TAU));
            return p;
        }
    }
}

/// Physical one-mode draw.
pub fn physical_mode(rng: &mut TestRng) -> ModeParams {
    let n: f64 = rng.gen_range(0.5..=5.0);
    let m = polar(rng, (n * n - 0.25).sqrt());
    ModeParams::new(n, m)
}

pub fn to_rows(v: &CovMat4) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let z = v.matrix()[(i, j)];
            *slot = Complex64::new(z.re, z.im);
        }
    }
    out
}

pub fn mode_rows(md: &ModeParams) -> [[Complex64; 2]; 2] {
    let m = Complex64::new(md.m.re, md.m.im);
    [
        [Complex64::new(md.n, 0.0), m],
        [m.conj(), Complex64::new(md.n, 0.0)],
    ]
}

pub fn oracle_min_eig_physical(p: &GaussianParams) -> f64 {
    cvsep_oracle::min_eig_uncertainty(&to_rows(&build_covariance(p).unwrap())).unwrap()
}

pub fn oracle_min_eig_mirrored(p: &GaussianParams) -> f64 {
    cvsep_oracle::min_eig_mirrored(&to_rows(&build_covariance(p).unwrap())).unwrap()
}

/// Physical draw with both correlations scaled by a factor in `[0.8, 1.25]`,
/// so the result straddles the physical boundary.
pub fn near_boundary_params(rng: &mut TestRng) -> GaussianParams {
    let mut p = physical_params(rng);
    let t = rng.gen_range(0.8..=1.25);
    p.ms *= t;
    p.mc *= t;
    p
}

/// Physical draw with weak local squeezing and a strong `mc`, where most
/// entangled states live.
pub fn physical_correlated(rng: &mut TestRng) -> GaussianParams {
    loop {
        let n1: f64 = rng.gen_range(0.5..=5.0);
        let n2: f64 = rng.gen_range(0.5..=5.0);
        let local = |rng: &mut TestRng, n: f64| polar(rng, 0.3 * (n * n - 0.25).sqrt());
        let m1 = local(rng, n1);
        let m2 = local(rng, n2);
        let ms = polar(rng, 0.2 * n1.min(n2));
        let mc = C64::from_polar(
            rng.gen_range(0.5..=1.05) * (n1 * n2).sqrt(),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let p = GaussianParams::new(n1, m1, n2, m2, ms, mc);
        if oracle_min_eig_physical(&p) > 0.0 {
            return p;
        }
    }
}
