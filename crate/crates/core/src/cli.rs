//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns the exit code with the text for stdout/stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num::traits::Zero;
use serde_json::{json, Value};

use crate::acceptance::{self, DEFAULT_SEED};
use crate::baxter::{
    baxterize_auto, baxterize_principal, baxterize_quadratic, baxterize_small, char_matrix,
    constant_re_residual, describe, instantiate, minimal_polynomial, spectral_re_residual, AnnPoly,
    BaxterError, CharMatrixSpec, KPolynomial,
};
use crate::exact::{format_rational, parse_rational, rational_sqrt, JsonScalar, Rational};
use crate::hecke::{HeckeAlgebra, HeckeParams};
use crate::report::{
    hecke_witnesses, matrix_witnesses, rational_matrix_witnesses, VerificationReport, Witness,
};
use crate::rmatrix::{jimbo_r, RSpec};
use crate::tensor::RingMatrix;

#[derive(Parser, Debug)]
#[command(
    name = "re-baxter",
    version,
    about = "Exact baxterization of reflection-equation solutions"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the standard Hecke R-matrix on V⊗V.
    Jimbo {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Minimal (or characteristic) annihilating polynomial of a matrix.
    Minpoly {
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        characteristic: bool,
    },
    /// Build K(x) from a constant K.
    Baxterize {
        #[arg(long)]
        k: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// The small solution (needs deg p = 4).
        #[arg(long, conflicts_with = "quadratic")]
        small: bool,
        #[arg(long, allow_hyphen_values = true, requires = "small")]
        root: Option<String>,
        /// The two-parameter solution for deg p = 2 (ξ and ζ unconstrained).
        #[arg(long)]
        quadratic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the constant reflection equation.
    VerifyRe {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        k: PathBuf,
    },
    /// Check the spectral reflection equation for a baxterized K(x).
    VerifySpectral {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        kx: PathBuf,
    },
    /// Check the spectral reflection equation in the cyclotomic Hecke algebra.
    AbstractVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value = "principal")]
        solution: SolutionArg,
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
    },
    /// Emit a matrix of the character family.
    CharMatrix {
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        lambdas: usize,
        #[arg(long)]
        zeros: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        u: String,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolutionArg {
    Principal,
    Small,
}

/// What a run prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// An input problem: exit code 2.
#[derive(Debug)]
struct InputError {
    kind: String,
    message: String,
}

impl InputError {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        InputError {
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

/// The variant name of an error's `Debug` form, e.g. `ConstraintViolated`.
fn variant_name(e: &impl std::fmt::Debug) -> String {
    format!("{e:?}")
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect()
}

fn input_err<E: std::fmt::Debug + std::fmt::Display>(e: E) -> InputError {
    let kind = match variant_name(&e).as_str() {
        // wrapped errors name their inner variant
        "Tensor" | "Exact" => format!("{e:?}")
            .split(['(', ')'])
            .nth(1)
            .map(|s| s.chars().take_while(|c| c.is_alphanumeric()).collect())
            .unwrap_or_else(|| "InputError".into()),
        v => v.to_string(),
    };
    InputError::new(&kind, e.to_string())
}

enum Emit {
    Artifact { json: Value, pretty: String },
    Report(VerificationReport),
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let command = command_name(&cli.command);
    let result = run(&cli);
    let elapsed = start.elapsed().as_millis() as u64;
    match result {
        Ok(Emit::Artifact { json, pretty }) => Outcome {
            code: 0,
            stdout: if cli.pretty { pretty } else { to_string(&json) },
            stderr: String::new(),
        },
        Ok(Emit::Report(mut report)) => {
            report.timing_ms = elapsed;
            render_report(&report, cli.pretty, String::new())
        }
        Err(e) => {
            let mut report = VerificationReport::new(command, &Value::Null);
            report.fail_with(e.to_string());
            report.timing_ms = elapsed;
            render_report(&report, cli.pretty, format!("error: {e}"))
        }
    }
}

fn render_report(report: &VerificationReport, pretty: bool, stderr: String) -> Outcome {
    Outcome {
        code: report.status.exit_code(),
        stdout: if pretty {
            report.render_pretty()
        } else {
            to_string(&report.to_json())
        },
        stderr,
    }
}

fn to_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Jimbo { .. } => "jimbo",
        Command::Minpoly { .. } => "minpoly",
        Command::Baxterize { .. } => "baxterize",
        Command::VerifyRe { .. } => "verify-re",
        Command::VerifySpectral { .. } => "verify-spectral",
        Command::AbstractVerify { .. } => "abstract-verify",
        Command::CharMatrix { .. } => "char-matrix",
        Command::Selftest => "selftest",
    }
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, InputError> {
    parse_rational(s).map_err(|e| InputError::new("Parse", format!("--{name}: {e}")))
}

fn rational_list(name: &str, s: &str) -> Result<Vec<Rational>, InputError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| rational_arg(name, t.trim())).collect()
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError::new("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::new("Parse", format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<RingMatrix<Rational>, InputError> {
    RingMatrix::from_json(&read_json(path)?).map_err(input_err)
}

fn read_rspec(path: &Path) -> Result<RSpec, InputError> {
    RSpec::from_json(&read_json(path)?).map_err(input_err)
}

fn pretty_matrix(m: &RingMatrix<Rational>) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| format!("{:>6}", format_rational(m.get(i, j))))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Result<Emit, InputError> {
    match &cli.command {
        Command::Jimbo { dim, q } => {
            let rs = jimbo_r(*dim, rational_arg("q", q)?).map_err(input_err)?;
            Ok(Emit::Artifact {
                json: rs.to_json(),
                pretty: format!(
                    "R on V⊗V, dim V = {dim}, q = {}, ω = {}\n{}",
                    format_rational(rs.q()),
                    format_rational(rs.omega()),
                    pretty_matrix(rs.matrix())
                ),
            })
        }
        Command::Minpoly { k, characteristic } => {
            let m = read_matrix(k)?;
            let p = minimal_polynomial(&m, *characteristic).map_err(input_err)?;
            Ok(Emit::Artifact {
                json: annihilator_json(&p, *characteristic),
                pretty: describe(&p),
            })
        }
        Command::Baxterize {
            k,
            xi,
            zeta,
            small,
            root,
            quadratic,
            out,
        } => {
            let m = read_matrix(k)?;
            let p = minimal_polynomial(&m, false).map_err(input_err)?;
            if p.n() < 1 {
                return Err(InputError::new(
                    "WrongDegree",
                    "K is scalar; baxterization needs an annihilator of degree >= 2",
                ));
            }
            let xi = xi.as_deref().map(|s| rational_arg("xi", s)).transpose()?;
            let zeta = zeta
                .as_deref()
                .map(|s| rational_arg("zeta", s))
                .transpose()?;
            let kp = if *small {
                let root = match root {
                    Some(r) => rational_arg("root", r)?,
                    None => small_root(&p)?,
                };
                baxterize_small(&p, &root).map_err(input_err)?
            } else if *quadratic {
                if p.n() != 1 {
                    return Err(InputError::new(
                        "WrongDegree",
                        format!("--quadratic needs deg p = 2, got {}", p.n() + 1),
                    ));
                }
                let a = p.coeffs();
                baxterize_quadratic(
                    &a[0],
                    &a[1],
                    &xi.unwrap_or_else(Rational::zero),
                    &zeta.unwrap_or_else(Rational::zero),
                )
            } else {
                let xi =
                    xi.ok_or_else(|| InputError::new("MissingArgument", "--xi is required"))?;
                match zeta {
                    Some(z) => baxterize_principal(&p, &xi, &z),
                    None => baxterize_auto(&p, &xi),
                }
                .map_err(input_err)?
            };
            let json = kp.to_json(Some(&m));
            let pretty = format!("K(x) = {kp}\np(u) = {}", describe(&p));
            match out {
                Some(path) => {
                    fs::write(path, to_string(&json))
                        .map_err(|e| InputError::new("Io", format!("{}: {e}", path.display())))?;
                    let mut report = VerificationReport::new("baxterize", &json);
                    report.details = Some(
                        json!({"written": path.display().to_string(), "kind": kp.kind().as_str()}),
                    );
                    Ok(Emit::Report(report))
                }
                None => Ok(Emit::Artifact { json, pretty }),
            }
        }
        Command::VerifyRe { r, k } => {
            let rs = read_rspec(r)?;
            let m = read_matrix(k)?;
            let res = constant_re_residual(&rs, &m).map_err(input_err)?;
            let mut report =
                VerificationReport::new("verify-re", &json!({"r": rs.to_json(), "k": m.to_json()}));
            report.absorb(rational_matrix_witnesses(&res));
            Ok(Emit::Report(report))
        }
        Command::VerifySpectral { r, kx } => {
            let rs = read_rspec(r)?;
            let kx_json = read_json(kx)?;
            let (kp, m) = KPolynomial::from_json(&kx_json).map_err(input_err)?;
            let m = m.ok_or_else(|| InputError::new("Malformed", "KX.json has no k_matrix"))?;
            let inst = instantiate(&kp, &m).map_err(input_err)?;
            let res = spectral_re_residual(&rs, &inst.numerator).map_err(input_err)?;
            let mut report = VerificationReport::new(
                "verify-spectral",
                &json!({"r": rs.to_json(), "kx": kp.to_json(Some(&m))}),
            );
            report.absorb(matrix_witnesses(&res));
            Ok(Emit::Report(report))
        }
        Command::AbstractVerify {
            n,
            coeffs,
            xi,
            zeta,
            q,
            solution,
            root,
        } => {
            let a = rational_list("coeffs", coeffs)?;
            if a.len() != n + 1 {
                return Err(InputError::new(
                    "ParamMismatch",
                    format!("--n {n} needs {} coefficients, got {}", n + 1, a.len()),
                ));
            }
            let p = AnnPoly::new(a).map_err(input_err)?;
            let q = rational_arg("q", q)?;
            let kp = match solution {
                SolutionArg::Principal => {
                    let xi = xi
                        .as_deref()
                        .ok_or_else(|| InputError::new("MissingArgument", "--xi is required"))?;
                    let xi = rational_arg("xi", xi)?;
                    match zeta {
                        Some(z) => baxterize_principal(&p, &xi, &rational_arg("zeta", z)?),
                        None => baxterize_auto(&p, &xi),
                    }
                    .map_err(input_err)?
                }
                SolutionArg::Small => {
                    let root = match root {
                        Some(r) => rational_arg("root", r)?,
                        None => small_root(&p)?,
                    };
                    baxterize_small(&p, &root).map_err(input_err)?
                }
            };
            let h = HeckeParams::new(p, q.clone())
                .and_then(HeckeAlgebra::new)
                .map_err(input_err)?;
            let res = h.re_spectral_residual(kp.coeffs()).map_err(input_err)?;
            let mut report = VerificationReport::new(
                "abstract-verify",
                &json!({"q": format_rational(&q), "kx": kp.to_json(None)}),
            );
            report.absorb(hecke_witnesses(&res));
            Ok(Emit::Report(report))
        }
        Command::CharMatrix {
            pairs,
            lambdas,
            zeros,
            lambda,
            mu,
            u,
        } => {
            let spec = CharMatrixSpec {
                pairs: *pairs,
                lambdas: *lambdas,
                zeros: *zeros,
                lambda: rational_arg("lambda", lambda)?,
                mu: rational_arg("mu", mu)?,
                u: rational_list("u", u)?,
            };
            let m = char_matrix(&spec).map_err(input_err)?;
            Ok(Emit::Artifact {
                pretty: pretty_matrix(&m),
                json: m.to_json(),
            })
        }
        Command::Selftest => {
            let seed = cli.seed.unwrap_or(DEFAULT_SEED);
            let outcomes = acceptance::run_all(seed);
            let mut report = VerificationReport::new("selftest", &json!({"seed": seed}));
            report.seed = Some(seed);
            report.absorb(
                outcomes
                    .iter()
                    .filter(|o| !o.passed)
                    .map(|o| Witness {
                        location: format!("criterion {}", o.id),
                        value: o.detail.clone(),
                    })
                    .collect(),
            );
            report.details = Some(json!({
                "criteria": outcomes.iter().map(|o| json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "checks": o.checks,
                })).collect::<Vec<_>>()
            }));
            if cli.pretty {
                let lines: Vec<String> = outcomes.iter().map(|o| o.line()).collect();
                report.details = Some(Value::String(lines.join("\n")));
            }
            Ok(Emit::Report(report))
        }
    }
}

fn small_root(p: &AnnPoly) -> Result<Rational, InputError> {
    let minus_a3 = -p.constant_term().clone();
    rational_sqrt(&minus_a3).ok_or_else(|| {
        input_err(BaxterError::NotASquare(format!(
            "-A_n = {} has no rational square root; pass --root",
            format_rational(&minus_a3)
        )))
    })
}

fn annihilator_json(p: &AnnPoly, characteristic: bool) -> Value {
    json!({
        "n": p.n(),
        "annihilator": p.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "characteristic": characteristic,
        "polynomial": describe(p),
        "invertible": !p.constant_term().is_zero(),
    })
}
