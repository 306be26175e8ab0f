use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qst_core::cli::{self, GraphSource, SweepRange};
use qst_core::cospectral::parse_permutation;
use qst_core::{Model, PeakStrategy, Result};

/// Quantum state transfer under generalized Laplacian walks.
#[derive(Parser, Debug)]
#[command(name = "qst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transfer probability curve on a uniform time grid (CSV `t,probability`).
    Fidelity(FidelityArgs),
    /// Peak fidelity search with cospectral diagnostics (JSON report).
    Peak(PeakArgs),
    /// Peak fidelity of the generalized Laplacian over a range of k (CSV).
    Sweep(SweepArgs),
    /// Guaranteed thresholds on |Q| and |k| for a vertex pair (JSON).
    Bound(BoundArgs),
    /// Cospectrality, involution and sign-pattern analysis (JSON).
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// path:<n> | cycle:<n> | bipartite:<a>,<b> | file:<path>
    #[arg(long)]
    graph: String,
    #[arg(long = "u")]
    u: usize,
    #[arg(long = "v")]
    v: usize,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum StrategyKind {
    TwoLevel,
    Grid,
}

#[derive(Args, Debug)]
struct StrategyArgs {
    #[arg(long, value_enum, default_value = "two-level")]
    strategy: StrategyKind,
    /// Grid search horizon.
    #[arg(long, default_value_t = 200.0)]
    tmax: f64,
    /// Grid search sample count.
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    /// Two-level refinement half-width as a fraction of the candidate time.
    #[arg(long, default_value_t = 0.5)]
    window: f64,
    #[arg(long, default_value_t = 2000)]
    refine_samples: usize,
}

impl StrategyArgs {
    fn strategy(&self) -> PeakStrategy {
        match self.strategy {
            StrategyKind::TwoLevel => PeakStrategy::TwoLevel {
                refine_window_fraction: self.window,
                refine_samples: self.refine_samples,
            },
            StrategyKind::Grid => self.grid(),
        }
    }

    fn grid(&self) -> PeakStrategy {
        PeakStrategy::Grid {
            t_max: self.tmax,
            samples: self.samples,
        }
    }
}

#[derive(Args, Debug)]
struct FidelityArgs {
    #[command(flatten)]
    common: Common,
    /// adjacency | laplacian | signless | generalized:<k> | loops:<u>,<v>,<Q>
    #[arg(long)]
    model: String,
    #[arg(long)]
    tmax: f64,
    #[arg(long)]
    samples: usize,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PeakArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    model: String,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Target error for the reported guaranteed threshold.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Accepted for symmetry with other commands; output is always JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    kmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    kmax: f64,
    #[arg(long)]
    steps: usize,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Mark the first row above the guaranteed threshold.
    #[arg(long)]
    threshold: bool,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
    /// Verify this permutation (comma-separated images) instead of searching.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    json: bool,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fidelity(a) => {
            let src = GraphSource::parse(&a.common.graph)?;
            let model: Model = a.model.parse()?;
            let (u, v) = (a.common.u, a.common.v);
            let text = if a.json {
                cli::fidelity_json(&src.graph, model, u, v, a.tmax, a.samples)?
            } else {
                cli::fidelity_csv(&src.graph, model, u, v, a.tmax, a.samples)?
            };
            emit(&a.common.out, &text)
        }
        Command::Peak(a) => {
            let src = GraphSource::parse(&a.common.graph)?;
            let model: Model = a.model.parse()?;
            let report = cli::peak_report(&src, model, a.common.u, a.common.v, a.strategy.strategy(), a.epsilon)?;
            emit(&a.common.out, &cli::to_json(&report))
        }
        Command::Sweep(a) => {
            let src = GraphSource::parse(&a.common.graph)?;
            let range = SweepRange {
                k_min: a.kmin,
                k_max: a.kmax,
                steps: a.steps,
            };
            let rows = cli::sweep_rows(
                &src.graph,
                a.common.u,
                a.common.v,
                range,
                a.strategy.strategy(),
                a.strategy.grid(),
                a.threshold.then_some(a.epsilon),
            )?;
            let text = if a.json {
                cli::to_json(&rows)
            } else {
                cli::sweep_csv(&rows, a.threshold)
            };
            emit(&a.common.out, &text)
        }
        Command::Bound(a) => {
            let src = GraphSource::parse(&a.common.graph)?;
            let report = cli::bound_report(&src, a.common.u, a.common.v, a.epsilon)?;
            emit(&a.common.out, &cli::to_json(&report))
        }
        Command::Analyze(a) => {
            let src = GraphSource::parse(&a.common.graph)?;
            let sigma = a.sigma.as_deref().map(parse_permutation).transpose()?;
            let report = cli::analyze_report(&src, a.common.u, a.common.v, sigma)?;
            emit(&a.common.out, &cli::to_json(&report))
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.to_string();
            let message = detail
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let message = if message.is_empty() { e.kind().to_string() } else { message };
            eprintln!("{}", cli::error_line("usage", message.trim_start_matches("error: "), 2));
            return ExitCode::from(2);
        }
    };
    match run(parsed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = err.exit_code();
            eprintln!("{}", cli::error_line(err.kind(), &err.to_string(), code));
            ExitCode::from(code as u8)
        }
    }
}
