use num_complex::Complex64;

use crate::{OracleError, Result};

/// Tensor-product Gauss–Hermite grid, `order` nodes per real dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrature {
    pub order: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { order: 32 }
    }
}

/// Nodes and weights for `∫ e^{-x²} f(x) dx`, by Newton iteration on the
/// orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, lw) = gauss_hermite_log(n);
    (x, lw.into_iter().map(f64::exp).collect())
}

/// As [`gauss_hermite`], with the natural log of each weight. The outer
/// weights underflow long before the nodes stop being useful.
///
/// Positive roots are bracketed by a sign scan of the orthonormal Hermite
/// polynomial and then bisected, which stays reliable at high order where
/// Newton from asymptotic guesses collapses onto neighbouring roots.
pub fn gauss_hermite_log(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let mut roots = Vec::with_capacity(n);
    if n % 2 == 1 {
        roots.push(0.0);
    }
    let h = std::f64::consts::PI / (2.0 * nf + 1.0).sqrt() / 16.0;
    let top = (2.0 * nf + 1.0).sqrt() + 1.0;
    let mut a = if n % 2 == 1 { h / 2.0 } else { 0.0 };
    let mut fa = hermite(a, n).0;
    while a < top && roots.len() < n.div_ceil(2) {
        let b = a + h;
        let fb = hermite(b, n).0;
        if fa == 0.0 {
            roots.push(a);
        } else if fa.signum() != fb.signum() {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = hermite(mid, n).0;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    debug_assert_eq!(roots.len(), n.div_ceil(2));

    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for &z in roots.iter().rev() {
        if z != 0.0 {
            x.push(-z);
            w.push(log_weight(z, n));
        }
    }
    for &z in &roots {
        x.push(z);
        w.push(log_weight(z, n));
    }
    (x, w)
}

// (H̃_n(z), H̃_{n-1}(z)) for the orthonormal Hermite polynomials
fn hermite(z: f64, n: usize) -> (f64, f64) {
    const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    let mut p1 = PIM4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}

fn log_weight(z: f64, n: usize) -> f64 {
    let pp = (2.0 * n as f64).sqrt() * hermite(z, n).1;
    std::f64::consts::LN_2 - 2.0 * pp.abs().ln()
}

/// `Tr(ρ_a ρ_b)` from the symmetric characteristic functions
/// `χ(η) = exp(-½ η† V η)`:
///
/// `Tr(ρ_a ρ_b) = π^{-k} ∫ d^{2k}η χ_a(η) χ_b(-η)` for `k` modes.
///
/// The `π^{-k}` normalization is the value that returns exactly 1 for the
/// vacuum paired with itself (`V = I/2`). Works for `N = 2` (one mode) and
/// `N = 4` (two modes), with the complex coordinate vector ordered as
/// `(η1, η1*, η2, η2*)`.
pub fn overlap_numint<const N: usize>(
    va: &[[Complex64; N]; N],
    vb: &[[Complex64; N]; N],
    grid: Quadrature,
) -> Result<f64> {
    if N != 2 && N != 4 {
        return Err(OracleError::Dimension(N));
    }
    if grid.order < 2 {
        return Err(OracleError::Domain("quadrature order must be >= 2".into()));
    }
    let mut w = [[Complex64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for j in 0..N {
            w[i][j] = va[i][j] + vb[i][j];
        }
    }

    // real quadratic form q^T A q = ½ η† W η, recovered by polarization
    let form = |q: &[f64; N]| -> f64 {
        let mut eta = [Complex64::new(0.0, 0.0); N];
        for k in 0..N / 2 {
            let z = Complex64::new(q[2 * k], q[2 * k + 1]);
            eta[2 * k] = z;
            eta[2 * k + 1] = z.conj();
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..N {
            for j in 0..N {
                acc += eta[i].conj() * w[i][j] * eta[j];
            }
        }
        0.5 * acc.re
    };
    let mut a = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut ei = [0.0; N];
            ei[i] = 1.0;
            let mut ej = [0.0; N];
            ej[j] = 1.0;
            let mut eij = [0.0; N];
            eij[i] += 1.0;
            eij[j] += 1.0;
            a[i][j] = 0.5 * (form(&eij) - form(&ei) - form(&ej));
        }
    }
    if !positive_definite(&a) {
        return Err(OracleError::NonDecaying);
    }

    let trace: f64 = (0..N).map(|i| a[i][i]).sum();
    let s = (N as f64 / trace).sqrt();
    let (nodes, log_weights) = gauss_hermite_log(grid.order);
    let n = grid.order;

    let mut idx = [0usize; N];
    let mut total = 0.0;
    loop {
        let mut t = [0.0; N];
        let mut lw = 0.0;
        let mut t2 = 0.0;
        for k in 0..N {
            t[k] = nodes[idx[k]];
            lw += log_weights[idx[k]];
            t2 += t[k] * t[k];
        }
        let mut quad = 0.0;
        for i in 0..N {
            for j in 0..N {
                quad += t[i] * a[i][j] * t[j];
            }
        }
        total += (lw + t2 - s * s * quad).exp();

        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == N {
                break;
            }
        }
        if k == N {
            break;
        }
    }
    let modes = (N / 2) as i32;
    let value = s.powi(N as i32) * total / std::f64::consts::PI.powi(modes);
    if !value.is_finite() {
        return Err(OracleError::NonDecaying);
    }
    Ok(value)
}

// Cholesky without pivoting; succeeds iff the matrix is positive definite.
fn positive_definite<const N: usize>(a: &[[f64; N]; N]) -> bool {
    let mut l = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return false;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    true
}
