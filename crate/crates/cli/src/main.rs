use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bergelab::experiment::{emit_outputs, run_experiment, ExperimentConfig, OutputFormat};
use bergelab::hypergraph::fixture;
use bergelab::posa::{
    boosters_with, is_connected, is_expander, is_weak_expander_with, rotation_closure, BoosterMode, ExpanderMode,
};
use bergelab::solvers::{
    find_hamiltonian_berge, find_weak_hamiltonian, longest_berge_path, SolveBudget, SolveMode, SolveStatus,
};
use bergelab::sparsifier::{check_properties, sparsify, Property, PropertyMode, DEFAULT_EPSILON};
use bergelab::{BergeCertificate, Hypergraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Berge Hamiltonicity experiments on random r-uniform hypergraphs.
///
/// Fixtures are text files: a header `n r m`, then one edge per line.
#[derive(Parser)]
#[command(name = "bergelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment described by a JSON config.
    Run(RunArgs),
    /// Search for a (weak) Hamiltonian Berge cycle or a longest Berge path.
    Solve {
        fixture: PathBuf,
        #[arg(long)]
        weak: bool,
        /// Find a longest Berge path instead of a cycle.
        #[arg(long)]
        longest_path: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the structural properties P1 to P7.
    Properties {
        fixture: PathBuf,
        /// Sparsified sub-hypergraph, needed for P7.
        #[arg(long)]
        gamma0: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Properties to check (default: all, or P1 to P6 without --gamma0).
        #[arg(long, value_delimiter = ',')]
        only: Vec<PropertyArg>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Check the (k, alpha)-expander or weak-expander property.
    ExpanderCheck {
        fixture: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        weak: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// List the boosters of a hypergraph.
    Boosters {
        fixture: PathBuf,
        #[arg(long)]
        weak: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Rotation closure of a Berge path (default: a longest path).
    Rotate {
        fixture: PathBuf,
        /// JSON certificate of the base path.
        #[arg(long)]
        path: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Build the sparsified sub-hypergraph.
    Sparsify {
        fixture: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes `<out>.txt` and `<out>.choices.json`; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Exit with status 2 when an acceptance check fails.
    #[arg(long)]
    check: bool,
    #[arg(long, env = "BERGELAB_WORKERS")]
    workers: Option<usize>,
    /// Output prefix; overrides the config's `output`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values = ["json", "csv", "plotdata"])]
    format: Vec<FormatArg>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = SolveBudget::default().node_limit)]
    node_limit: u64,
    #[arg(long, default_value_t = SolveBudget::default().time_limit_ms)]
    time_limit_ms: u64,
    /// Skip the heuristic phase.
    #[arg(long)]
    exact: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SolveBudget> {
        let mode = if self.exact {
            SolveMode::ExactOnly
        } else {
            SolveMode::HeuristicFirst
        };
        Ok(SolveBudget::new(self.node_limit, self.time_limit_ms, mode)?)
    }
}

#[derive(Args)]
struct SamplingArgs {
    /// Sample this many random cases instead of enumerating.
    #[arg(long)]
    sampled: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Plotdata,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

fn read_fixture(path: &Path) -> Result<Hypergraph> {
    fixture::read(path).with_context(|| format!("reading fixture {}", path.display()))
}

fn print(value: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => return run(args),
        Command::Solve {
            fixture,
            weak,
            longest_path,
            budget,
        } => {
            let h = read_fixture(&fixture)?;
            let budget = budget.budget()?;
            let result = if longest_path {
                longest_berge_path(&h, &budget, weak)?
            } else if weak {
                find_weak_hamiltonian(&h, &budget)?
            } else {
                find_hamiltonian_berge(&h, &budget)?
            };
            print(&result)?;
        }
        Command::Properties {
            fixture,
            gamma0,
            epsilon,
            only,
            sampling,
        } => {
            let h = read_fixture(&fixture)?;
            let g = gamma0.as_deref().map(read_fixture).transpose()?;
            let which: Vec<Property> = if only.is_empty() {
                let all = Property::ALL.to_vec();
                if g.is_some() {
                    all
                } else {
                    all.into_iter().filter(|&p| p != Property::P7).collect()
                }
            } else {
                only.iter().map(|&p| Property::ALL[p as usize]).collect()
            };
            let mode = match sampling.sampled {
                Some(trials) => PropertyMode::Sampled {
                    trials,
                    seed: sampling.seed,
                },
                None => PropertyMode::Exact,
            };
            print(&check_properties(&h, g.as_ref(), epsilon, mode, &which)?)?;
        }
        Command::ExpanderCheck {
            fixture,
            k,
            alpha,
            weak,
            sampling,
        } => {
            let h = read_fixture(&fixture)?;
            let mode = match sampling.sampled {
                Some(trials) => ExpanderMode::Sampled {
                    trials,
                    seed: sampling.seed,
                },
                None => ExpanderMode::Exact,
            };
            let report = if weak {
                is_weak_expander_with(&h, k, alpha, mode)?
            } else {
                is_expander(&h, k, alpha, mode)?
            };
            print(&json!({ "weak": weak, "connected": is_connected(&h), "report": report }))?;
        }
        Command::Boosters {
            fixture,
            weak,
            sampling,
            budget,
        } => {
            let h = read_fixture(&fixture)?;
            let mode = match sampling.sampled {
                Some(trials) => BoosterMode::Sampled {
                    trials: trials as usize,
                    seed: sampling.seed,
                },
                None => BoosterMode::Exact,
            };
            print(&boosters_with(&h, &budget.budget()?, weak, mode)?)?;
        }
        Command::Rotate { fixture, path, budget } => {
            let h = read_fixture(&fixture)?;
            let base: BergeCertificate = match path {
                Some(p) => serde_json::from_str(&fs::read_to_string(&p)?)
                    .with_context(|| format!("parsing certificate {}", p.display()))?,
                None => {
                    let res = longest_berge_path(&h, &budget.budget()?, false)?;
                    match res.certificate {
                        Some(c) if res.status == SolveStatus::Found => c,
                        _ => bail!("no longest path within the budget; pass --path"),
                    }
                }
            };
            print(&rotation_closure(&h, &base)?)?;
        }
        Command::Sparsify {
            fixture,
            epsilon,
            seed,
            out,
        } => {
            let h = read_fixture(&fixture)?;
            let s = sparsify(&h, epsilon, seed)?;
            match out {
                Some(prefix) => {
                    fixture::write(with_suffix(&prefix, "txt"), &s.gamma0)?;
                    let sidecar = serde_json::to_string_pretty(&s.sidecar(&h, seed))?;
                    fs::write(with_suffix(&prefix, "choices.json"), sidecar + "\n")?;
                }
                None => emit(&fixture::to_string(&s.gamma0))?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let config = ExperimentConfig::from_json(&text)?;
    let result = run_experiment(&config, args.workers)?;
    let formats: Vec<OutputFormat> = args
        .format
        .iter()
        .map(|f| match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Plotdata => OutputFormat::Plotdata,
        })
        .collect();
    match args.out.or_else(|| config.output.clone()) {
        Some(prefix) => {
            for path in emit_outputs(&result, &prefix, &formats)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print(&result)?,
    }
    for a in &result.aggregates {
        let at = a.point.map_or(String::new(), |c| format!(" c={c}"));
        eprintln!(
            "{}{at}: {:.3} [{:.3}, {:.3}] found {} absent {} inconclusive {}",
            a.measure, a.frequency, a.interval.low, a.interval.high, a.found, a.proved_absent, a.inconclusive
        );
    }
    for c in &result.checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if args.check && !result.all_checks_pass() {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}
