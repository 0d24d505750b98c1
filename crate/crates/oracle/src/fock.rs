use crate::{OracleError, Result};

const TAIL_TOL: f64 = 1e-15;

/// `|<Ψ(l1)|Ψ(l2)>|²` for two-mode squeezed vacua
/// `|Ψ(l)> = sqrt(1 - l²) Σ_k l^k |k, k>`, summed term by term.
///
/// Summation stops once the geometric tail bound drops below `1e-15`.
pub fn overlap_fock_tmsv(l1: f64, l2: f64) -> Result<f64> {
    if !(l1.abs() < 1.0 && l2.abs() < 1.0) {
        return Err(OracleError::Domain(format!(
            "|lambda| must be < 1, got ({l1}, {l2})"
        )));
    }
    let norm = ((1.0 - l1 * l1) * (1.0 - l2 * l2)).sqrt();
    let ratio = l1 * l2;
    let mut amp = 0.0;
    let mut term = norm;
    loop {
        amp += term;
        term *= ratio;
        let tail = term.abs() / (1.0 - ratio.abs());
        if tail < TAIL_TOL * amp.abs().max(TAIL_TOL) || term == 0.0 {
            break;
        }
    }
    Ok(amp * amp)
}
