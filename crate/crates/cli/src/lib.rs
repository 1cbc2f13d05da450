//! Command-line front end for rotor fidelity reports, error-grid sweeps and
//! robust composite-pulse design.

pub mod error;
pub mod library;
pub mod output;
pub mod problem;
pub mod spec;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rotor_fidelity::{
    optimize, report, sequence_propagator, sweep, target_propagator, DesignOutcome, DesignProblem, ErrorGrid,
    ErrorPoint, MonteCarloConfig, Objective,
};
use serde::Serialize;

pub use error::{CliError, Result};
pub use library::PulseLibrary;

#[derive(Debug, Parser)]
#[command(name = "rotorfid", version, about = "Rotor fidelity of NMR composite pulses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity report of one sequence at one error point.
    Fidelity(FidelityArgs),
    /// Fidelity over a pulse-length × off-resonance grid, written as CSV.
    Sweep(SweepArgs),
    /// Design a robust sequence from a problem file.
    Optimize(OptimizeArgs),
    /// List the sequences in a library.
    List(LibraryArgs),
}

#[derive(Debug, Args)]
pub struct LibraryArgs {
    /// Pulse library file; the bundled starter set when omitted.
    #[arg(long)]
    pub library: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub library: LibraryArgs,
    #[arg(long)]
    pub sequence: String,
    /// `axis=<x|y|z|theta,phi> angle=<degrees>`
    #[arg(long, num_args = 1..=2, required = true)]
    pub target: Vec<String>,
    /// Pulse-length error fraction.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub eps: String,
    /// Off-resonance offset as a fraction of the RF amplitude.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub off: String,
    /// Also estimate the fidelity by sampling this many Bloch-sphere states.
    #[arg(long)]
    pub mc_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print one JSON document instead of `key = value` lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub library: LibraryArgs,
    #[arg(long)]
    pub sequence: String,
    #[arg(long, num_args = 1..=2, required = true)]
    pub target: Vec<String>,
    /// Pulse-length error grid `min:max:count`.
    #[arg(long, default_value = "-0.2:0.2:21", allow_hyphen_values = true)]
    pub eps: String,
    /// Off-resonance grid `min:max:count`.
    #[arg(long, default_value = "-0.2:0.2:21", allow_hyphen_values = true)]
    pub off: String,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// Where to write the designed sequence (pulse library format).
    #[arg(long, short)]
    pub output: PathBuf,
    /// Also write the summary to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

impl LibraryArgs {
    pub fn load(&self) -> Result<PulseLibrary> {
        match &self.library {
            Some(path) => PulseLibrary::load(path),
            None => Ok(PulseLibrary::starter()),
        }
    }
}

/// Runs a command and returns what should go to standard output.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::List(args) => {
            let lib = args.load()?;
            Ok(lib
                .sequences()
                .iter()
                .map(|s| format!("{}\t{} pulse(s)\n", s.name(), s.len()))
                .collect())
        }
    }
}

pub fn cmd_fidelity(args: &FidelityArgs) -> Result<String> {
    let lib = args.library.load()?;
    let seq = lib.get(&args.sequence)?;
    let target = spec::parse_target(&args.target)?;
    let error = ErrorPoint::new(spec::parse_number("--eps", &args.eps)?, spec::parse_number("--off", &args.off)?)?;
    let mc = args.mc_samples.map(|samples| MonteCarloConfig {
        samples,
        seed: args.seed,
    });
    let r = report(&target_propagator(&target), &sequence_propagator(seq, error), mc)?;
    let doc = output::ReportDoc::new(seq.name(), &target, error, &r);
    Ok(if args.json { doc.to_json() } else { doc.to_block() })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    let lib = args.library.load()?;
    let seq = lib.get(&args.sequence)?;
    let target = spec::parse_target(&args.target)?;
    let grid = ErrorGrid::new(spec::parse_range(&args.eps)?, spec::parse_range(&args.off)?);
    let surface = sweep(seq, &target, &grid)?;
    write_file(&args.output, &output::surface_csv(&surface))?;
    Ok(format!(
        "wrote {} rows to {}\nmean f_eq8 = {:.12}\nworst f_eq8 = {:.12}\n",
        surface.reports.len(),
        args.output.display(),
        surface.mean(),
        surface.worst()
    ))
}

#[derive(Debug, Serialize)]
pub struct OptimizeSummary {
    pub sequence: String,
    pub objective: &'static str,
    pub objective_before: f64,
    pub objective_after: f64,
    pub evaluations: usize,
    pub max_evaluations: usize,
    pub converged: bool,
    pub best_start: usize,
}

impl OptimizeSummary {
    pub fn new(p: &DesignProblem, out: &DesignOutcome) -> Self {
        OptimizeSummary {
            sequence: out.sequence.name().to_string(),
            objective: match p.objective {
                Objective::Mean => "mean",
                Objective::WorstCase => "worst-case",
            },
            objective_before: out.initial_objective,
            objective_after: out.objective,
            evaluations: out.evaluations,
            max_evaluations: p.max_evaluations,
            converged: out.converged,
            best_start: out.best_start,
        }
    }

    pub fn to_block(&self) -> String {
        format!(
            "sequence = {}\nobjective = {}\nobjective_before = {:.12}\nobjective_after = {:.12}\n\
             evaluations = {}/{}\nconverged = {}\nbest_start = {}\n",
            self.sequence,
            self.objective,
            self.objective_before,
            self.objective_after,
            self.evaluations,
            self.max_evaluations,
            self.converged,
            self.best_start
        )
    }
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<String> {
    let problem = problem::load_problem(&args.problem)?;
    let out = optimize(&problem)?;
    let lib = PulseLibrary::new(vec![out.sequence.clone()])?;
    lib.save(&args.output)?;
    let summary = OptimizeSummary::new(&problem, &out);
    let text = if args.json {
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
    } else {
        summary.to_block()
    };
    if let Some(path) = &args.summary {
        write_file(path, &text)?;
    }
    Ok(text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
