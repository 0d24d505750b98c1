use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cvsep::covariance::{build_covariance, CovMat4, GaussianParams, DEFAULT_TOL};
use cvsep::mixer::MixerConfig;
use cvsep::report::{run_check, run_transform};
use cvsep::sweep::{sweep_grid, write_csv, write_matrix, SweepConfig};
use cvsep::tmtss::{
    classify_symmetric, tmtss_params, tmtss_terms, SymmetricClass, TmtssInputs, TmtssTerms,
};
use cvsep::C64;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "cvsep",
    version,
    about = "Separability and classicality of two-mode Gaussian states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Physicality, separability, entanglement degree and port classicality.
    Check(CheckArgs),
    /// Apply a two-mode mixer to a state read from a JSON file.
    Transform(TransformArgs),
    /// Entanglement degree over the symmetric-class (n, m) plane.
    Sweep(SweepArgs),
    /// Thermal squeezed state from the noisy amplifier model.
    Tmtss(TmtssArgs),
    /// Independent eigenvalue and overlap checks.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    n1: f64,
    /// Complex as `re[,im]`.
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    m1: C64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    n2: f64,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    m2: C64,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    ms: C64,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    mc: C64,
}

impl StateArgs {
    fn params(&self) -> GaussianParams {
        GaussianParams::new(self.n1, self.m1, self.n2, self.m2, self.ms, self.mc)
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Squeezing of the reference states.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    r: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct TransformArgs {
    /// JSON with fields n1, m1, n2, m2, ms, mc, or {"covariance": 4x4 rows of [re, im]}.
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi1: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Matrix,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    r: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    n_min: f64,
    #[arg(long, default_value_t = 3.5, allow_negative_numbers = true)]
    n_max: f64,
    #[arg(long, default_value_t = 141)]
    n_steps: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    m_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    m_max: f64,
    #[arg(long, default_value_t = 121)]
    m_steps: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct TmtssArgs {
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nbar: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Also report the Fock-sum overlap of TMSV(r) with TMSV(r2).
    #[arg(long, num_args = 2, value_names = ["R1", "R2"], allow_negative_numbers = true)]
    fock: Option<Vec<f64>>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<cvsep::Error> for Failure {
    fn from(e: cvsep::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number or `re,im` pair"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(s)?, 0.0)),
    }
}

fn complex_field(v: &Value, name: &str) -> Result<C64, String> {
    match v.get(name) {
        None | Some(Value::Null) => Ok(C64::new(0.0, 0.0)),
        Some(Value::Number(x)) => Ok(C64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
        Some(Value::Array(a)) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(format!("`{name}` must hold two numbers")),
        },
        Some(_) => Err(format!("`{name}` must be a number or [re, im]")),
    }
}

fn real_field(v: &Value, name: &str) -> Result<f64, String> {
    v.get(name)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing numeric field `{name}`"))
}

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn read_state(path: &PathBuf) -> Result<CovMat4, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Some(rows) = v.get("covariance") {
        let rows: [[[f64; 2]; 4]; 4] = serde_json::from_value(rows.clone()).map_err(|e| {
            Failure::Usage(format!("`covariance` must be 4x4 rows of [re, im]: {e}"))
        })?;
        return Ok(CovMat4::from_rows(&rows)?);
    }
    let p = GaussianParams::new(
        usage(real_field(&v, "n1"))?,
        usage(complex_field(&v, "m1"))?,
        usage(real_field(&v, "n2"))?,
        usage(complex_field(&v, "m2"))?,
        usage(complex_field(&v, "ms"))?,
        usage(complex_field(&v, "mc"))?,
    );
    p.validate()?;
    Ok(build_covariance(&p)?)
}

fn print_json(v: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Domain(e.to_string()))?;
    emit(writeln!(io::stdout().lock(), "{text}"))
}

// a closed pipe downstream is not an error
fn emit(r: io::Result<()>) -> Result<(), Failure> {
    match r {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(Failure::Domain(format!("write failed: {e}")))
        }
        _ => Ok(()),
    }
}

fn check(args: &CheckArgs) -> Result<(), Failure> {
    print_json(&run_check(&args.state.params(), args.r, args.tol)?)
}

fn transform(args: &TransformArgs) -> Result<(), Failure> {
    let v = read_state(&args.state)?;
    let mixer = MixerConfig::new(args.theta, args.phi0, args.phi1);
    print_json(&run_transform(&v, &mixer, args.tol)?)
}

fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let cfg = SweepConfig {
        r: args.r,
        n_min: args.n_min,
        n_max: args.n_max,
        n_steps: args.n_steps,
        m_min: args.m_min,
        m_max: args.m_max,
        m_steps: args.m_steps,
        tol: args.tol,
    };
    let records = sweep_grid(&cfg)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            File::create(path)
                .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    let written = match args.format {
        Format::Csv => write_csv(&records, &mut out),
        Format::Matrix => write_matrix(&cfg, &records, &mut out),
    };
    emit(written.and_then(|_| out.flush()))
}

#[derive(Serialize)]
struct TmtssReport {
    inputs: TmtssInputs,
    terms: TmtssTerms,
    params: GaussianParams,
    class: SymmetricClass,
}

fn tmtss(args: &TmtssArgs) -> Result<(), Failure> {
    let inputs = TmtssInputs::new(args.d, args.r, args.nbar);
    let terms = tmtss_terms(&inputs)?;
    let params = tmtss_params(&inputs, args.tol)?;
    print_json(&TmtssReport {
        inputs,
        terms,
        params,
        class: classify_symmetric(params.n1, params.mc.norm(), args.tol),
    })
}

#[derive(Serialize)]
struct OracleReport {
    params: GaussianParams,
    min_eig_physical: f64,
    min_eig_mirrored: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fock_overlap: Option<f64>,
}

fn oracle(args: &OracleArgs) -> Result<(), Failure> {
    let p = args.state.params();
    let v = build_covariance(&p)?;
    let m = v.matrix();
    let mut rows = [[C64::new(0.0, 0.0); 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = C64::new(m[(i, j)].re, m[(i, j)].im);
        }
    }
    let domain = |e: cvsep_oracle::OracleError| Failure::Domain(e.to_string());
    let fock_overlap = match &args.fock {
        Some(r) => Some(cvsep_oracle::overlap_fock_tmsv(r[0].tanh(), r[1].tanh()).map_err(domain)?),
        None => None,
    };
    print_json(&OracleReport {
        params: p,
        min_eig_physical: cvsep_oracle::min_eig_uncertainty(&rows).map_err(domain)?,
        min_eig_mirrored: cvsep_oracle::min_eig_mirrored(&rows).map_err(domain)?,
        fock_overlap,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Transform(a) => transform(a),
        Command::Sweep(a) => sweep(a),
        Command::Tmtss(a) => tmtss(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
