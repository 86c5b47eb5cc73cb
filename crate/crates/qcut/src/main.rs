use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcut::config::{ConfigFile, OrderArg, Overrides};
use qcut::{bench, dot, load_circuit, partition, verify, CliError, OutputFormat, RunConfig};
use qcut_core::fixtures::ising_chain;
use qcut_core::{build_cut_graph, WeightTable};

#[derive(Parser)]
#[command(
    name = "qcut",
    version,
    about = "Find cut locations that minimise circuit-cutting overhead"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition one QASM circuit and report Step 1 and Step 2 metrics.
    Partition {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Partition every .qasm file in a directory; one CSV row per file.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: BenchFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the shot budgets on the 8-qubit validation circuit.
    Verify {
        /// Run the full-scale presets instead of the CI ones.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// JSON file with one preset object or an array of them.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: VerifyFormat,
        /// Also write every per-repetition error to this CSV file.
        #[arg(long)]
        errors_csv: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Export the cut graph of a circuit as DOT.
    Graph {
        file: PathBuf,
        /// Cluster with this qubit cap and group nodes by cluster.
        #[arg(long = "max-qubits", short = 'D')]
        max_qubits: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit an ising-chain style QASM circuit.
    Fixtures {
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Maximum number of qubits per partition.
    #[arg(long = "max-qubits", short = 'D')]
    max_qubits: Option<usize>,
    /// Target standard deviation; adds shot budgets to the report.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report zero stage times so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Table,
    Json,
}

impl RunArgs {
    fn resolve(&self, format: Option<OutputFormat>) -> Result<RunConfig, CliError> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        let mut cfg = RunConfig::resolve(
            file,
            Overrides {
                max_qubits: self.max_qubits,
                eps: self.eps,
                order: self.order,
                restarts: self.restarts,
                format,
                seed: self.seed,
            },
        )?;
        cfg.timing = !self.no_timing;
        Ok(cfg)
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Partition {
            file,
            run,
            format,
            output,
        } => {
            let cfg = run.resolve(format)?;
            let circuit = load_circuit(&file)?;
            let result = partition(&circuit, &cfg)?;
            emit(output.as_deref(), &result.render(cfg.format)?)?;
        }
        Command::Bench {
            dir,
            run,
            format,
            output,
        } => {
            let cfg = run.resolve(None)?;
            let rows = bench::run_bench(&dir, &cfg)?;
            let text = match format {
                BenchFormat::Csv => bench::to_csv(&rows)?,
                BenchFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Verify {
            full,
            seed,
            config,
            format,
            errors_csv,
            output,
        } => {
            let presets = match config {
                Some(path) => verify::load_presets(&path, seed)?,
                None if full => verify::full_presets(seed),
                None => verify::ci_presets(seed),
            };
            let mut summaries = Vec::with_capacity(presets.len());
            for p in &presets {
                log::info!(
                    "preset: {} partitions, eps {}, {} reps",
                    p.partitions,
                    p.eps,
                    p.repetitions
                );
                summaries.push(verify::run_preset(p)?);
            }
            let text = match format {
                VerifyFormat::Table => verify::to_table(&summaries),
                VerifyFormat::Json => verify::to_json(&summaries)?,
            };
            emit(output.as_deref(), &text)?;
            if let Some(path) = errors_csv {
                emit(Some(&path), &verify::errors_csv(&summaries)?)?;
            }
            if let Some(bad) = summaries.iter().find(|s| !s.within_bound()) {
                eprintln!(
                    "error: std {:.6} exceeds eps {} for the {}-partition preset",
                    bad.std, bad.config.eps, bad.config.partitions
                );
                return Ok(ExitCode::from(1));
            }
        }
        Command::Graph {
            file,
            max_qubits,
            output,
        } => {
            let circuit = load_circuit(&file)?;
            let text = match max_qubits {
                Some(d) => {
                    let cfg = RunConfig {
                        max_qubits: d,
                        timing: false,
                        ..RunConfig::default()
                    };
                    let p = partition(&circuit, &cfg)?;
                    dot::to_dot(&p.graph, Some(&p.clustering))
                }
                None => dot::to_dot(&build_cut_graph(&circuit, &WeightTable::default())?, None),
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Fixtures {
            width,
            steps,
            output,
        } => {
            if width < 2 {
                return Err(CliError::Config("--width must be at least 2".into()));
            }
            emit(output.as_deref(), &ising_chain(width, steps).to_qasm())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
