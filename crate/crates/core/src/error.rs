use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error(
        "matrix does not follow the (a1†, a1, a2†, a2) covariance layout (max deviation {0:e})"
    )]
    Layout(f64),
    #[error("state is not physical: the uncertainty condition V + E/2 >= 0 fails")]
    Nonphysical,
    #[error("local block of party {party} is degenerate (det = {det:e})")]
    DegenerateLocalBlock { party: u8, det: f64 },
    #[error("numeric domain error: {0}")]
    NumericDomain(String),
    #[error("fidelity {0} outside (0, 1]")]
    FidelityOutOfRange(f64),
    #[error("degenerate reference: squeezing r = {0} gives zero separable distance")]
    DegenerateReference(f64),
    #[error("thermal squeezed model is singular: h1 = {h1}, h2 = {h2} (h1² = h2²)")]
    TmtssDegenerate { h1: f64, h2: f64 },
    #[error("thermal squeezed model produced a nonphysical state: n = {n}, m = {m}")]
    TmtssInvalid { n: f64, m: f64 },
    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
