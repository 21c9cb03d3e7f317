//! `dioswarm` command line: `solve`, `oracle` and `sweep`.
//!
//! Exit codes: 0 on success, 2 when the search found nothing (or the oracle
//! hit its budget), 1 on usage or arithmetic errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dioswarm::oracle::{enumerate_solutions, DEFAULT_BUDGET};
use dioswarm::telemetry::csv::{write_sweep_csv, write_trace_csv};
use dioswarm::telemetry::{sweep, SweepVariable};
use dioswarm::{parse_equation, run_observed, DiophantineEquation, SignConvention, SwarmConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dioswarm",
    version,
    about = "Particle swarm solver for power-sum Diophantine equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for solutions with the particle swarm.
    Solve(SolveArgs),
    /// Enumerate every solution in the feasible box.
    Oracle(OracleArgs),
    /// Measure generations-to-first-solution across a parameter range.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct EquationSource {
    /// Equation text, e.g. "x1^2 + x2^2 = 625".
    #[arg(required_unless_present = "equation_file", conflicts_with = "equation_file")]
    pub equation: Option<String>,
    /// JSON file of the form {"terms":[{"a":1,"p":2},...],"N":625}.
    #[arg(long, value_name = "PATH")]
    pub equation_file: Option<PathBuf>,
}

impl EquationSource {
    fn load(&self) -> Result<DiophantineEquation> {
        match (&self.equation, &self.equation_file) {
            (Some(text), None) => Ok(parse_equation(text)?),
            (None, Some(path)) => {
                let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))
            }
            _ => bail!("give exactly one of an inline equation or --equation-file"),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Standard,
    Paper,
}

impl From<SignArg> for SignConvention {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Standard => SignConvention::Standard,
            SignArg::Paper => SignConvention::PaperLiteral,
        }
    }
}

#[derive(Debug, Args)]
pub struct SwarmArgs {
    #[arg(long, default_value_t = 40)]
    pub pop: usize,
    #[arg(long, default_value_t = 50_000)]
    pub max_gen: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "standard")]
    pub sign: SignArg,
}

impl SwarmArgs {
    fn config(&self) -> SwarmConfig {
        SwarmConfig::default()
            .with_population(self.pop)
            .with_max_generations(self.max_gen)
            .with_seed(self.seed)
            .with_sign(self.sign.into())
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: EquationSource,
    #[command(flatten)]
    pub swarm: SwarmArgs,
    #[arg(long, default_value_t = 1)]
    pub max_solutions: usize,
    /// Write the per-generation trace as CSV.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    /// Print the full result as JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// List solutions lexicographically instead of in harvest order.
    #[arg(long)]
    pub sorted: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: EquationSource,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VarArg {
    Pop,
    Seed,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: EquationSource,
    #[command(flatten)]
    pub swarm: SwarmArgs,
    #[arg(long, value_enum, default_value = "pop")]
    pub var: VarArg,
    /// `start:end:step` (inclusive), or a comma-separated list.
    #[arg(long, default_value = "10:100:10")]
    pub values: String,
    /// Independent runs per value.
    #[arg(long, default_value_t = 30)]
    pub seeds: usize,
    /// CSV destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn parse_values(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, end, step] = parts.as_slice() else {
            bail!("range must be start:end:step, got {spec:?}");
        };
        let (start, end, step): (u64, u64, u64) = (start.parse()?, end.parse()?, step.parse()?);
        if step == 0 || start > end {
            bail!("empty or non-advancing range {spec:?}");
        }
        Ok((start..=end).step_by(step as usize).collect())
    } else {
        spec.split(',')
            .map(|v| v.trim().parse::<u64>().with_context(|| format!("bad value {v:?}")))
            .collect()
    }
}

fn fmt_solution(s: &[u64]) -> String {
    let inner: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("({})", inner.join(", "))
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let eq = args.source.load()?;
    let cfg = args.swarm.config().with_max_solutions(args.max_solutions);
    cfg.validate()?;
    let stream = !args.json && !args.sorted;
    let mut count = 0usize;
    let mut io_result = Ok(());
    let mut result = run_observed(&eq, &cfg, |s, g| {
        count += 1;
        if stream && io_result.is_ok() {
            io_result = writeln!(out, "solution {count}: {} at generation {g}", fmt_solution(s));
        }
    })?;
    io_result?;
    if let Some(path) = &args.trace {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = std::io::BufWriter::new(file);
        write_trace_csv(&mut w, &result.trace.records)?;
        w.flush()?;
    }
    if args.sorted {
        result.solutions.sort();
        result.trace.solutions.sort();
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
    } else {
        if args.sorted {
            for (i, s) in result.solutions.iter().enumerate() {
                writeln!(out, "solution {}: {}", i + 1, fmt_solution(s))?;
            }
        }
        writeln!(out, "equation: {eq}")?;
        writeln!(out, "solutions found: {}", result.solutions.len())?;
        writeln!(out, "generations used: {}", result.generations)?;
        writeln!(out, "termination: {}", result.termination_reason)?;
    }
    Ok(if result.solutions.is_empty() {
        EXIT_NOT_FOUND
    } else {
        EXIT_OK
    })
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let eq = args.source.load()?;
    if args.budget == 0 {
        bail!("--budget must be positive");
    }
    let result = enumerate_solutions(&eq, args.budget);
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
    } else {
        for s in &result.solutions {
            writeln!(out, "{}", fmt_solution(s))?;
        }
        writeln!(out, "equation: {eq}")?;
        writeln!(out, "solutions: {}", result.solutions.len())?;
        writeln!(out, "search space size: {}", result.search_space_size)?;
        writeln!(out, "evaluations: {}", result.evaluations)?;
        writeln!(out, "exhausted: {}", result.exhausted)?;
    }
    Ok(if result.exhausted { EXIT_OK } else { EXIT_NOT_FOUND })
}

#[derive(Serialize)]
struct CellSummary {
    value: u64,
    solved: usize,
    runs: usize,
    mean_generations: f64,
    median_generations: u64,
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let eq = args.source.load()?;
    let values = parse_values(&args.values)?;
    if args.seeds == 0 {
        bail!("--seeds must be positive");
    }
    let variable = match args.var {
        VarArg::Pop => SweepVariable::PopulationSize,
        VarArg::Seed => SweepVariable::Seed,
    };
    let base = args.swarm.config();
    base.validate()?;
    if variable == SweepVariable::PopulationSize {
        if let Some(&bad) = values.iter().find(|&&v| v < 2) {
            bail!("population size {bad} is below 2");
        }
    }
    let report = sweep(&eq, &base, variable, &values, args.seeds)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = std::io::BufWriter::new(file);
            write_sweep_csv(&mut w, &report)?;
            w.flush()?;
            for c in &report.cells {
                let summary = CellSummary {
                    value: c.value,
                    solved: c.solved,
                    runs: c.outcomes.len(),
                    mean_generations: c.mean_generations,
                    median_generations: c.median_generations,
                };
                writeln!(out, "{}", serde_json::to_string(&summary)?)?;
            }
        }
        None => write_sweep_csv(&mut *out, &report)?,
    }
    Ok(EXIT_OK)
}

/// Parses `argv` and runs the chosen subcommand, returning the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
