//! `holokit`: JSON reports on stdout, a short summary on stderr.
//!
//! Exit codes: 0 all checks passed, 2 a check failed, 1 usage, I/O or validation error.

mod commands;
mod expect;
mod report;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, CliResult, Report};

#[derive(Parser, Debug)]
#[command(
    name = "holokit",
    version,
    about = "Exact holonomy, curvature-space and catalog computations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Write the JSON output to this file instead of stdout (for `catalog build-*`: the built artifact).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock timing in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug)]
pub struct IdArgs {
    /// Identify the algebra against the catalog.
    #[arg(long)]
    identify: bool,
    /// Expected family, `FAMILY[:v1[:v2...]]`; exit 2 on mismatch.
    #[arg(long)]
    expect: Option<String>,
    /// JSON array of FamilySpec candidates (default: the bounded built-in sweep).
    #[arg(long)]
    sweep: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HolArgs {
    /// Highest order of covariant derivatives of R to evaluate.
    #[arg(long, default_value_t = 6)]
    max_order: usize,
    /// Number of consecutive orders without growth that counts as stable.
    #[arg(long, default_value_t = 2)]
    window: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum AlgebraCheck {
    Berger,
    Weakirr,
    Curvspace,
    Invspace,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum USel {
    /// u = 0
    #[default]
    None,
    /// u = ℝJ_m (hol families) or ℝ(J_m − m/(n+2) J_n) (twir families)
    J,
    /// u = u(m)
    Full,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum HSel {
    #[default]
    None,
    So,
    G2,
    Spin7,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family id (e.g. hol-m-u-lambda; the `hol-` prefix may be dropped), an n0-rowK
    /// preset, or a built-in recipe (ikemakhen, g2, spin7) for build-metric.
    name: Option<String>,
    /// FamilySpec JSON file; replaces all other family options.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// MetricRecipe JSON file (build-metric only).
    #[arg(long)]
    recipe: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    l: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value = "0")]
    lambda: String,
    #[arg(long, default_value = "0")]
    gamma1: String,
    #[arg(long, default_value = "0")]
    gamma2: String,
    #[arg(long, value_enum, default_value_t = USel::None)]
    u: USel,
    #[arg(long, value_enum, default_value_t = HSel::None)]
    h: HSel,
    /// Values of φ on the u basis, comma separated.
    #[arg(long, value_delimiter = ',')]
    phi: Vec<String>,
    /// Values of φ̂ on the u basis, comma separated.
    #[arg(long, value_delimiter = ',')]
    phi_hat: Vec<String>,
    /// Value of ψ on one u basis element, comma separated; repeat once per element.
    #[arg(long)]
    psi: Vec<String>,
    /// Values of ζ on the h basis, comma separated.
    #[arg(long, value_delimiter = ',')]
    zeta: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// List family ids, table presets and built-in recipes.
    List,
    /// Build a catalog algebra.
    BuildAlgebra(FamilyArgs),
    /// Build a metric realizing a family.
    BuildMetric(FamilyArgs),
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Holonomy algebra of a polynomial metric (MetricJson file).
    Holonomy {
        metric: PathBuf,
        #[command(flatten)]
        hol: HolArgs,
        #[command(flatten)]
        id: IdArgs,
    },
    /// Connection, curvature and holonomy of a left-invariant metric (LieGroupJson file).
    Liegroup {
        group: PathBuf,
        #[command(flatten)]
        id: IdArgs,
    },
    /// Berger test, weak irreducibility or curvature spaces of an algebra (AlgebraJson file).
    Algebra {
        #[arg(value_enum)]
        check: AlgebraCheck,
        algebra: PathBuf,
        /// Seed for the randomized weak-irreducibility search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Catalog families and the metrics realizing them.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Check a symmetric pair (hol, R): R ∈ R₀(hol) and R(∧²) = hol, plus its Ricci form.
    Symmetric {
        /// JSON file `{"algebra": AlgebraJson, "tensor": CurvatureTensorJson}`.
        pair: Option<PathBuf>,
        /// Built-in pair: 1a…1e, 2, 3, 4, or hol1-pos, hol1-neg, hol2, hol3, hol3-neg.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// λ₅ for pairs 3 and 4.
        #[arg(long, default_value = "0")]
        lambda5: String,
    },
    /// Run the acceptance checks and emit one consolidated report.
    Repro {
        /// Comma-separated criterion numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
        /// Seed of the random metrics in the property suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(cli: &Cli, report: &Report) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match (&cli.output, &cli.cmd) {
        (Some(path), cmd) if !matches!(cmd, Command::Catalog { .. }) => std::fs::write(path, text)
            .map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            }),
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let start = Instant::now();
    let (mut report, summary) = commands::dispatch(&cli.cmd, cli.output.as_deref())?;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    emit(cli, &report)?;
    let pass = report.pass();
    eprintln!("{summary}");
    for c in report.results.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: expected {}, computed {}",
            c.name, c.expected, c.computed
        );
    }
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    match catch_unwind(AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(2),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            eprintln!("error: internal failure: {msg}");
            ExitCode::from(1)
        }
    }
}
