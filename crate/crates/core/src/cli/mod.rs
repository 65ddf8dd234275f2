//! Command-line surface.
//!
//! Exit codes: 0 when a verdict was computed (including "fails"), 1 for input
//! errors, 2 when a float verdict is indeterminate.

pub mod commands;
pub mod instance;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::linalg::LinearAlgebra;
use crate::scalar::{Complex64, GaussianRational, Mode};
use crate::torus::VerifyPlan;

pub use instance::{Diagnostic, InstanceFile, StratificationFile};
pub use report::Report;

pub const MODE_ENV: &str = "KAHLER_MODE";

#[derive(Debug, Parser)]
#[command(name = "kahler", version, about = "Hard Lefschetz and Hodge-Riemann checks on complex tori")]
pub struct Cli {
    /// Arithmetic mode; defaults to exact when every input entry is rational.
    #[arg(long, global = true, value_enum, env = MODE_ENV)]
    pub mode: Option<Mode>,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit human-readable text (default).
    #[arg(long, global = true)]
    pub text: bool,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is multiplication by the product of the factors an isomorphism on H^{p,q}?
    CheckHl { file: PathBuf },
    /// Is the Hodge-Riemann form definite on the primitive subspace defined by M?
    CheckHr { file: PathBuf },
    /// Subset-rank criterion for the factors.
    Criterion { file: PathBuf },
    /// Compare the criterion with direct HL/HR checks on seeded random instances.
    VerifyTheoremA(VerifyArgs),
    /// Defect of semismallness from stratification data.
    Defect {
        file: PathBuf,
        /// Compute the raw defect even when validation fails.
        #[arg(long)]
        force: bool,
        /// Test the m-lef property.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Mixed-discriminant inequality for factors [A, B, rest...].
    Af { file: PathBuf },
    /// Signature of the perturbed forms as t decreases to 0.
    Scan { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Dimensions to sample from.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
    pub dims: Vec<usize>,
    /// Fix p (requires --q).
    #[arg(long, requires = "q")]
    pub p: Option<usize>,
    /// Fix q (requires --p).
    #[arg(long, requires = "p")]
    pub q: Option<usize>,
    /// Fixed factor ranks (requires --p/--q).
    #[arg(long, value_delimiter = ',')]
    pub ranks: Option<Vec<usize>>,
    /// Fixed rank of M (requires --p/--q).
    #[arg(long)]
    pub m_rank: Option<usize>,
    /// Skip the Hodge-Riemann comparison.
    #[arg(long)]
    pub no_hr: bool,
}

impl VerifyArgs {
    pub fn plan(&self) -> VerifyPlan {
        VerifyPlan {
            dims: self.dims.clone(),
            bidegree: self.p.zip(self.q),
            factor_ranks: self.ranks.clone(),
            m_rank: self.m_rank,
            check_hr: !self.no_hr,
        }
    }
}

/// Everything `main` needs to print and exit.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Execution {
    fn failure(d: Diagnostic) -> Self {
        Execution {
            stdout: String::new(),
            stderr: format!("error: {d}\n"),
            code: 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                Execution { stdout: rendered, stderr: String::new(), code }
            } else {
                Execution { stdout: String::new(), stderr: rendered, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Execution {
    let start = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(Diagnostic::new("--threads", "must be positive")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Diagnostic::new("--threads", e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(mut report) => {
            if cli.timings {
                let mut t = BTreeMap::new();
                t.insert("total".to_string(), start.elapsed().as_secs_f64() * 1e3);
                report.timings_ms = Some(t);
            }
            let stdout = if cli.json { report.to_json() } else { report.to_text() };
            Execution {
                stdout,
                stderr: String::new(),
                code: report.exit_code(),
            }
        }
        Err(d) => Execution::failure(d),
    }
}

fn load_instance(path: &std::path::Path) -> Result<InstanceFile, Diagnostic> {
    let text = instance::read_file(path)?;
    InstanceFile::parse(&text).map_err(|d| {
        Diagnostic::new(
            if d.location.is_empty() {
                path.display().to_string()
            } else {
                format!("{}: {}", path.display(), d.location)
            },
            d.message,
        )
    })
}

fn typed_command<F: LinearAlgebra>(
    cmd: &Command,
    inst: &InstanceFile,
) -> Result<Report, Diagnostic> {
    let t = inst.typed::<F>()?;
    match cmd {
        Command::CheckHl { .. } => commands::check_hl(&t),
        Command::CheckHr { .. } => commands::check_hr(&t),
        Command::Criterion { .. } => commands::criterion(&t),
        Command::Af { .. } => commands::af(&t),
        Command::Scan { .. } => commands::scan(&t),
        Command::VerifyTheoremA(_) | Command::Defect { .. } => unreachable!("not file-typed"),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Diagnostic> {
    match &cli.command {
        Command::VerifyTheoremA(args) => {
            let plan = args.plan();
            match cli.mode.unwrap_or(Mode::Exact) {
                Mode::Exact => commands::verify_theorem_a::<GaussianRational>(&plan, args.trials, args.seed),
                Mode::Float => commands::verify_theorem_a::<Complex64>(&plan, args.trials, args.seed),
            }
        }
        Command::Defect { file, force, m } => {
            let text = instance::read_file(file)?;
            let strat = StratificationFile::parse(&text).map_err(|d| {
                Diagnostic::new(format!("{}: {}", file.display(), d.location), d.message)
            })?;
            Ok(commands::defect(&strat, *force, *m)?.with_input(Some(file.display().to_string())))
        }
        Command::CheckHl { file }
        | Command::CheckHr { file }
        | Command::Criterion { file }
        | Command::Af { file }
        | Command::Scan { file } => {
            let inst = load_instance(file)?;
            let mode = inst.resolve_mode(cli.mode);
            let report = match mode {
                Mode::Exact => typed_command::<GaussianRational>(&cli.command, &inst),
                Mode::Float => typed_command::<Complex64>(&cli.command, &inst),
            }
            .map_err(|d| Diagnostic::new(format!("{}: {}", file.display(), d.location), d.message))?;
            Ok(report.with_input(Some(file.display().to_string())))
        }
    }
}
