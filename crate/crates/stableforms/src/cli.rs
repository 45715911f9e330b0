//! Command-line front end.
//!
//! Subcommands expose classification, eigenspace extraction, restriction,
//! configuration genericity, membership tests, eigenspace derivatives and
//! the verification suites. All inputs are JSON literals (see the form and
//! subspace formats in `exterior` and `grass`); outputs are JSON by default
//! or aligned text with `--format table`.
//!
//! Exit codes: 0 success / pass; 1 verification failure; 2 usage or parse
//! error; 3 the input form is not of stable positive type; 4 a genericity
//! or membership verdict is negative.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::ample::{self, SlicingFrame};
use crate::exterior::AltForm;
use crate::grass::{config_generic, ConfigLit, HyperplaneConfig, Subspace};
use crate::report::VerifyReport;
use crate::scalar::{Coeff, Rat};
use crate::stable::{self, para_complex, StableError};
use crate::tol;
use crate::verify::{registry, run_suite, SuiteSpec, VerifyError};

const EXIT_OK: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_NOT_STABLE: i32 = 3;
const EXIT_NEGATIVE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "stableforms",
    about = "Invariants of stable 3-forms on R^6, hyperplane genericity and ampleness certificates",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Scalar backend for algebraic commands.
    #[arg(long, value_enum, default_value_t = Backend::Exact, global = true)]
    backend: Backend,
    /// Float tolerance context.
    #[arg(long, default_value_t = tol::DEFAULT_EPS, global = true)]
    epsilon: f64,
    /// Master seed; defaults to STABLEFORMS_SEED or 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample-count override for verification suites.
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in verification reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a 3-form by the sign of its quadratic invariant.
    Classify { form: PathBuf },
    /// Volume coefficient, para-complex endomorphism and eigenspaces.
    Eigen { form: PathBuf },
    /// Restrict a 3-form to a hyperplane and test the open-orbit property.
    Restrict {
        form: PathBuf,
        #[arg(long)]
        plane: PathBuf,
    },
    /// Test a hyperplane configuration for genericity.
    Config { form: PathBuf, config: PathBuf },
    /// Membership of a plane 2-form in the sliced stability set.
    Membership {
        form: PathBuf,
        #[arg(long)]
        plane: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        /// Configuration for levels 1..=3; defaults to the singleton plane.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        level: u8,
    },
    /// Closed-form eigenspace derivative, optionally cross-checked by
    /// finite differences.
    Derivative {
        form: PathBuf,
        #[arg(long)]
        direction: PathBuf,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long)]
        fd: bool,
    },
    /// Run verification suites.
    Verify {
        /// Suite name; omit with --all to run everything.
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        /// List registered suites.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for stable::Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => stable::Sign::Plus,
            SignArg::Minus => stable::Sign::Minus,
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let seed = cli.global.seed.unwrap_or_else(|| {
        std::env::var("STABLEFORMS_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    });
    match dispatch(&cli, seed) {
        Ok((value, code)) => {
            if emit(&cli.global, &value).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Parse(String),
    NotStable(String),
    Verify(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m)
            | CliError::Parse(m)
            | CliError::NotStable(m)
            | CliError::Verify(m)
            | CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Verify(_) => EXIT_USAGE,
            CliError::NotStable(_) => EXIT_NOT_STABLE,
            CliError::Internal(_) => EXIT_FAIL,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn emit(opts: &GlobalOpts, value: &serde_json::Value) -> std::io::Result<()> {
    let text = match opts.format {
        Format::Json => serde_json::to_string(value).expect("serializable"),
        Format::Table => render_table(value),
    };
    match &opts.out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")
        }
    }
}

fn render_table(value: &serde_json::Value) -> String {
    fn walk(value: &serde_json::Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match value {
            serde_json::Value::Object(map) => {
                for (k, v) in map {
                    if v.is_object() || (v.is_array() && v.as_array().is_some_and(|a| a.len() > 6)) {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(v, indent + 1, out);
                    } else {
                        out.push_str(&format!("{pad}{k:24} {v}\n"));
                    }
                }
            }
            serde_json::Value::Array(items) => {
                for item in items {
                    walk(item, indent, out);
                    out.push('\n');
                }
            }
            other => out.push_str(&format!("{pad}{other}\n")),
        }
    }
    let mut out = String::new();
    walk(value, 0, &mut out);
    out.trim_end().to_string()
}

fn dispatch(cli: &Cli, seed: u64) -> Result<(serde_json::Value, i32), CliError> {
    match &cli.command {
        Command::Classify { form } => match cli.global.backend {
            Backend::Exact => classify_cmd::<Rat>(form),
            Backend::Float => classify_cmd::<f64>(form),
        },
        Command::Eigen { form } => match cli.global.backend {
            Backend::Exact => eigen_cmd::<Rat>(form, 0.0),
            Backend::Float => eigen_cmd::<f64>(form, cli.global.epsilon),
        },
        Command::Restrict { form, plane } => match cli.global.backend {
            Backend::Exact => restrict_cmd::<Rat>(form, plane, 0.0),
            Backend::Float => restrict_cmd::<f64>(form, plane, cli.global.epsilon),
        },
        Command::Config { form, config } => match cli.global.backend {
            Backend::Exact => config_cmd::<Rat>(form, config, 0.0),
            Backend::Float => config_cmd::<f64>(form, config, cli.global.epsilon),
        },
        Command::Membership {
            form,
            plane,
            nu,
            config,
            level,
        } => match cli.global.backend {
            Backend::Exact => membership_cmd::<Rat>(form, plane, nu, config.as_ref(), *level, 0.0),
            Backend::Float => {
                membership_cmd::<f64>(form, plane, nu, config.as_ref(), *level, cli.global.epsilon)
            }
        },
        Command::Derivative {
            form,
            direction,
            sign,
            fd,
        } => match cli.global.backend {
            Backend::Exact => derivative_cmd::<Rat>(form, direction, (*sign).into(), *fd, 0.0),
            Backend::Float => {
                derivative_cmd::<f64>(form, direction, (*sign).into(), *fd, cli.global.epsilon)
            }
        },
        Command::Verify { suite, all, list } => verify_cmd(cli, suite.as_deref(), *all, *list, seed),
    }
}

fn classify_cmd<K: Coeff>(form: &PathBuf) -> Result<(serde_json::Value, i32), CliError> {
    let rho: AltForm<K> = read_json(form)?;
    let class = stable::lambda_invariant(&rho)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let kind = serde_json::to_value(class.kind).expect("serializable kind");
    Ok((
        json!({ "lambda": class.lambda_coeff.render(), "kind": kind }),
        EXIT_OK,
    ))
}

fn eigen_cmd<K: Coeff>(form: &PathBuf, eps: f64) -> Result<(serde_json::Value, i32), CliError> {
    let rho: AltForm<K> = read_json(form)?;
    let pc = para_complex(&rho, eps).map_err(|e| match e {
        StableError::NotSlType(_) | StableError::IrrationalVolume => {
            CliError::NotStable(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    })?;
    let endo: Vec<Vec<String>> = (0..6)
        .map(|i| (0..6).map(|j| pc.endo[(i, j)].render()).collect())
        .collect();
    Ok((
        json!({
            "vol": pc.vol_coeff.render(),
            "endo": endo,
            "e_plus": serde_json::to_value(&pc.e_plus).expect("serializable"),
            "e_minus": serde_json::to_value(&pc.e_minus).expect("serializable"),
        }),
        EXIT_OK,
    ))
}

fn restrict_cmd<K: Coeff>(
    form: &PathBuf,
    plane: &PathBuf,
    eps: f64,
) -> Result<(serde_json::Value, i32), CliError> {
    let rho: AltForm<K> = read_json(form)?;
    let plane: Subspace<K> = read_json(plane)?;
    let tau = ample::restrict_to_hyperplane(&rho, &plane, eps)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let open_orbit =
        ample::is_ospseudoplectic(&tau, eps).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok((
        json!({
            "restriction": serde_json::to_value(&tau).expect("serializable"),
            "ospseudoplectic": open_orbit,
        }),
        EXIT_OK,
    ))
}

fn config_cmd<K: Coeff>(
    form: &PathBuf,
    config: &PathBuf,
    eps: f64,
) -> Result<(serde_json::Value, i32), CliError> {
    let rho: AltForm<K> = read_json(form)?;
    let lit: ConfigLit = read_json(config)?;
    let mut planes = Vec::new();
    for p in lit.planes {
        let s: Subspace<K> =
            serde_json::from_value(p).map_err(|e| CliError::Parse(e.to_string()))?;
        planes.push(s);
    }
    let xi = HyperplaneConfig::new(planes, tol::SUBSPACE_EQ)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let pc = para_complex(&rho, eps).map_err(|e| match e {
        StableError::NotSlType(_) | StableError::IrrationalVolume => {
            CliError::NotStable(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    })?;
    let (generic, witnesses) = config_generic(&xi, &pc, eps, tol::SUBSPACE_EQ)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let value = json!({
        "generic": generic,
        "witnesses": serde_json::to_value(&witnesses).expect("serializable"),
    });
    Ok((value, if generic { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn membership_cmd<K: Coeff>(
    form: &PathBuf,
    plane: &PathBuf,
    nu: &PathBuf,
    config: Option<&PathBuf>,
    level: u8,
    eps: f64,
) -> Result<(serde_json::Value, i32), CliError> {
    if level > 3 {
        return Err(CliError::Parse("level must be 0..=3".into()));
    }
    let rho: AltForm<K> = read_json(form)?;
    let plane: Subspace<K> = read_json(plane)?;
    let nu: AltForm<K> = read_json(nu)?;
    let frame = SlicingFrame::from_plane(rho, plane, eps)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let (ok, outcome) = if level == 0 {
        let member = ample::in_n0(&frame, &nu).map_err(|e| CliError::Internal(e.to_string()))?;
        (member, json!({ "member": member, "level": 0 }))
    } else {
        let xi = match config {
            Some(path) => {
                let lit: ConfigLit = read_json(path)?;
                let mut planes = Vec::new();
                for p in lit.planes {
                    let s: Subspace<K> =
                        serde_json::from_value(p).map_err(|e| CliError::Parse(e.to_string()))?;
                    planes.push(s);
                }
                HyperplaneConfig::new(planes, tol::SUBSPACE_EQ)
                    .map_err(|e| CliError::Parse(e.to_string()))?
            }
            None => HyperplaneConfig::new(vec![frame.plane.clone()], tol::SUBSPACE_EQ)
                .map_err(|e| CliError::Parse(e.to_string()))?,
        };
        let out = ample::in_n_level(&frame, &xi, &nu, level, eps)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let ok = out.ok;
        (ok, serde_json::to_value(&out).expect("serializable"))
    };
    Ok((outcome, if ok { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn derivative_cmd<K: Coeff>(
    form: &PathBuf,
    direction: &PathBuf,
    sign: stable::Sign,
    fd: bool,
    eps: f64,
) -> Result<(serde_json::Value, i32), CliError> {
    let rho: AltForm<K> = read_json(form)?;
    let alpha: AltForm<K> = read_json(direction)?;
    let hom = stable::d_eigenspace(&rho, &alpha, sign, eps).map_err(|e| match e {
        StableError::NotSlType(_) | StableError::IrrationalVolume => {
            CliError::NotStable(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    })?;
    let mat: Vec<Vec<String>> = (0..3)
        .map(|i| (0..3).map(|j| hom.mat[(i, j)].render()).collect())
        .collect();
    let mut value = json!({ "sign": serde_json::to_value(sign).expect("sign"), "matrix": mat });
    if fd {
        let ladder: Vec<f64> = (5..=12).map(|k| 0.5f64.powi(k)).collect();
        let report = stable::d_eigenspace_fd_check(
            &rho.to_f64(),
            &alpha.to_f64(),
            sign,
            &ladder,
            eps.max(tol::RANK_REL),
        )
        .map_err(|e| CliError::Internal(e.to_string()))?;
        value["fd_check"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok((value, EXIT_OK))
}

fn verify_cmd(
    cli: &Cli,
    suite: Option<&str>,
    all: bool,
    list: bool,
    seed: u64,
) -> Result<(serde_json::Value, i32), CliError> {
    if list {
        let suites: Vec<serde_json::Value> = registry()
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "claim": e.claim,
                    "default_samples": e.default_samples,
                })
            })
            .collect();
        return Ok((json!(suites), EXIT_OK));
    }
    let reports: Vec<VerifyReport> = if all || suite.is_none() {
        let mut reports = Vec::new();
        for entry in registry() {
            let mut spec = SuiteSpec::new(entry.name, crate::sample::mix_name(seed, entry.name));
            spec.samples = cli.global.samples;
            spec.epsilon = Some(cli.global.epsilon.max(tol::RANK_REL));
            reports.push(run_timed(&spec, cli.global.timing)?);
        }
        reports
    } else {
        let name = suite.expect("checked above");
        let mut spec = SuiteSpec::new(name, seed);
        spec.samples = cli.global.samples;
        spec.epsilon = Some(cli.global.epsilon.max(tol::RANK_REL));
        vec![run_timed(&spec, cli.global.timing)?]
    };
    let pass = reports.iter().all(|r| r.pass);
    let value = serde_json::to_value(&reports).expect("serializable");
    Ok((value, if pass { EXIT_OK } else { EXIT_FAIL }))
}

fn run_timed(spec: &SuiteSpec, timing: bool) -> Result<VerifyReport, CliError> {
    let start = std::time::Instant::now();
    let mut report = run_suite(spec).map_err(|e| match e {
        VerifyError::UnknownSuite(_) => CliError::Verify(e.to_string()),
        VerifyError::SuiteFailed(_, _) => CliError::Internal(e.to_string()),
    })?;
    if timing {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
