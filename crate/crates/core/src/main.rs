use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use assoc_scheme::duality::{classify_all_orderings, evaluate_ordering, OrderingPermutation};
use assoc_scheme::fixtures::{generate_fixture, FixtureSpec};
use assoc_scheme::group_scheme::{
    classify_linear_orderings, closed_form_eigenmatrix, sigma_from_matrix, Gf2Matrix,
    GroupSchemeContext,
};
use assoc_scheme::numerics::{Mode, Rational, Scalar, Tolerance};
use assoc_scheme::report::{render_matrix, run_analyze, run_poly_check};
use assoc_scheme::scheme::{read_scm, verify_scheme, write_scm, AssociationScheme};
use assoc_scheme::spectral::{decompose, krein_parameters};
use assoc_scheme::{Error, Result};

/// Parameters and self-duality of symmetric association schemes.
///
/// Exit codes: 0 success, 1 parse/usage error, 2 axiom violation,
/// 3 spectral failure, 4 internal inconsistency.
#[derive(Parser)]
#[command(name = "assoc-scheme", version)]
struct Cli {
    /// Arithmetic mode.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,
    /// Equality tolerance in approx mode.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    BinaryGroup,
    Hamming,
    Cycle,
}

/// A scheme file or a generated fixture.
#[derive(Args)]
struct Input {
    /// Scheme file in scm-v1 format.
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    family: Option<Family>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the scheme axioms.
    Verify(Input),
    /// Full parameter report.
    Analyze(Input),
    /// Self-duality of one ordering or of all orderings.
    Selfdual {
        #[command(flatten)]
        input: Input,
        /// Ordering of the idempotents, e.g. 0,2,1,3.
        #[arg(long, conflicts_with = "enumerate")]
        sigma: Option<OrderingPermutation>,
        #[arg(long)]
        enumerate: bool,
    },
    /// The group scheme of Z_2^m.
    GroupScheme {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        emit_scm: Option<PathBuf>,
        /// GF(2) matrix whose ordering to evaluate, rows as bit strings (e.g. 10,11).
        #[arg(long = "S")]
        s: Option<Gf2Matrix>,
    },
    /// Classify the orderings induced by GL(m, 2).
    Gl2Classify {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        trials_nonlinear: usize,
    },
    /// P-/Q-polynomial checks.
    PolyCheck(Input),
    /// Write a fixture as an scm-v1 file.
    Gen {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Input {
    fn spec(&self) -> Result<FixtureSpec> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required for this family")))
        };
        match self.family {
            Some(Family::BinaryGroup) => Ok(FixtureSpec::BinaryGroup {
                m: need(self.m, "m")?,
            }),
            Some(Family::Hamming) => Ok(FixtureSpec::Hamming {
                n: need(self.n, "n")?,
                q: need(self.q, "q")?,
            }),
            Some(Family::Cycle) => Ok(FixtureSpec::Cycle {
                n: need(self.n, "n")?,
            }),
            None => Err(Error::InvalidArgument(
                "give a scheme file or --family".into(),
            )),
        }
    }

    fn load(&self) -> Result<AssociationScheme> {
        match &self.file {
            Some(path) => verify_scheme(read_scm(path)?),
            None => generate_fixture(self.spec()?),
        }
    }
}

fn tolerance(mode: Mode, eps: Option<f64>) -> Result<Tolerance> {
    match (mode, eps) {
        (Mode::Exact, Some(_)) => Err(Error::InvalidArgument(
            "--eps only applies to --mode approx".into(),
        )),
        (Mode::Exact, None) => Ok(Tolerance::exact()),
        (Mode::Approx, None) => Ok(Tolerance::default_approx()),
        (Mode::Approx, Some(e)) => {
            let def = Tolerance::default_approx();
            Tolerance::approx(e, def.eps_cluster().max(e))
        }
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistent(format!("serialization failed: {e}")))
}

fn run<S: Scalar>(cli: &Cli, tol: &Tolerance) -> Result<Value> {
    match &cli.command {
        Command::Verify(input) => {
            let s = input.load()?;
            Ok(json!({
                "valid": true,
                "n": s.n(),
                "d": s.d(),
                "k": s.params().k,
                "exhaustively_verified": s.exhaustively_verified(),
            }))
        }
        Command::Analyze(input) => to_value(run_analyze::<S>(&input.load()?, tol)?),
        Command::PolyCheck(input) => to_value(run_poly_check::<S>(&input.load()?, tol)?),
        Command::Selfdual {
            input,
            sigma,
            enumerate,
        } => {
            let s = input.load()?;
            let params = s.params();
            let sp = decompose::<S>(&s, params, tol)?;
            let kt = krein_parameters(&sp, params, tol)?;
            if *enumerate {
                to_value(classify_all_orderings(params, &sp, &kt, tol)?)
            } else {
                let sigma = sigma
                    .clone()
                    .unwrap_or_else(|| OrderingPermutation::identity(s.d()));
                to_value(evaluate_ordering(params, &sp, &kt, &sigma, tol)?)
            }
        }
        Command::GroupScheme { m, emit_scm, s } => {
            let ctx = GroupSchemeContext::<S>::new(*m, tol)?;
            if let Some(path) = emit_scm {
                fs::write(path, write_scm(ctx.scheme.relations()))?;
                eprintln!("wrote {}", path.display());
            }
            let mut out = json!({
                "m": m,
                "n": ctx.scheme.n(),
                "d": ctx.scheme.d(),
                "P": render_matrix(&closed_form_eigenmatrix::<S>(*m)?),
            });
            if let Some(s) = s {
                if s.m() != *m {
                    return Err(Error::InvalidArgument(format!(
                        "--S is {0}x{0}, expected {m}x{m}",
                        s.m()
                    )));
                }
                let sigma = sigma_from_matrix(s)?;
                out["ordering"] = to_value(evaluate_ordering(
                    ctx.scheme.params(),
                    &ctx.spectral,
                    &ctx.krein,
                    &sigma,
                    tol,
                )?)?;
            }
            Ok(out)
        }
        Command::Gl2Classify {
            m,
            trials_nonlinear,
        } => {
            let ctx = GroupSchemeContext::<S>::new(*m, tol)?;
            to_value(classify_linear_orderings(
                &ctx,
                *trials_nonlinear,
                cli.seed,
                tol,
            )?)
        }
        Command::Gen { input, out } => {
            let spec = input.spec()?;
            let s = generate_fixture(spec)?;
            fs::write(out, write_scm(s.relations()))?;
            Ok(json!({
                "fixture": spec.to_string(),
                "n": s.n(),
                "d": s.d(),
                "path": out.display().to_string(),
            }))
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let tol = tolerance(cli.mode, cli.eps)?;
    let value = match cli.mode {
        Mode::Exact => run::<Rational>(cli, &tol)?,
        Mode::Approx => run::<f64>(cli, &tol)?,
    };
    let text =
        serde_json::to_string_pretty(&value).map_err(|e| Error::Inconsistent(e.to_string()))?;
    if let Some(path) = &cli.json {
        fs::write(path, format!("{text}\n"))?;
    }
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(io::stdout().lock(), "{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
