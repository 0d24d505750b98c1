use num_complex::Complex64;

use crate::{OracleError, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 64;

/// Minimum eigenvalue of a small Hermitian matrix by cyclic Jacobi rotations.
pub fn eig_min_hermitian<const N: usize>(h: &[[Complex64; N]; N]) -> Result<f64> {
    let ev = eigenvalues_hermitian(h)?;
    Ok(ev.into_iter().fold(f64::INFINITY, f64::min))
}

/// All eigenvalues (unsorted) of a Hermitian matrix with `N <= 4`.
pub fn eigenvalues_hermitian<const N: usize>(h: &[[Complex64; N]; N]) -> Result<[f64; N]> {
    if N == 0 || N > 4 {
        return Err(OracleError::Dimension(N));
    }
    let mut dev: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            if !h[i][j].re.is_finite() || !h[i][j].im.is_finite() {
                return Err(OracleError::Domain("non-finite entry".into()));
            }
            dev = dev.max((h[i][j] - h[j][i].conj()).norm());
        }
    }
    if dev > HERMITIAN_TOL {
        return Err(OracleError::NotHermitian(dev));
    }

    let mut a = *h;
    // symmetrize exactly so the diagonal stays real through the sweeps
    for i in 0..N {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
        for j in (i + 1)..N {
            let avg = (a[i][j] + a[j][i].conj()) * 0.5;
            a[i][j] = avg;
            a[j][i] = avg.conj();
        }
    }

    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut out = [0.0; N];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = a[i][i].re;
    }
    Ok(out)
}

// Annihilates a[p][q] with U = D·G, D = diag(1, e^{-iφ}) on (p, q) and G a
// real Givens rotation; A <- U† A U.
fn rotate<const N: usize>(a: &mut [[Complex64; N]; N], p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let alpha = a[p][p].re;
    let gamma = a[q][q].re;
    let theta = 0.5 * (2.0 * mag).atan2(gamma - alpha);
    let (s, c) = theta.sin_cos();

    // U restricted to (p, q): [[c, s], [-s·conj(phase), c·conj(phase)]]
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    for row in a.iter_mut() {
        let xp = row[p];
        let xq = row[q];
        row[p] = xp * upp + xq * uqp;
        row[q] = xp * upq + xq * uqq;
    }
    for j in 0..N {
        let yp = a[p][j];
        let yq = a[q][j];
        a[p][j] = upp.conj() * yp + uqp.conj() * yq;
        a[q][j] = upq.conj() * yp + uqq.conj() * yq;
    }
    a[p][q] = Complex64::new(0.0, 0.0);
    a[q][p] = Complex64::new(0.0, 0.0);
    a[p][p] = Complex64::new(a[p][p].re, 0.0);
    a[q][q] = Complex64::new(a[q][q].re, 0.0);
}
