use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use degree_lab::experiment::{emit_report, run_experiment, ReportFormat};
use degree_lab::graph::{split, Subgraph};
use degree_lab::io::{forest_to_string, graph_to_string, multigraph_to_string, read_graph};
use degree_lab::nu::{nu, nu_hat, predicted_interval, NuQuery, DEFAULT_TOL};
use degree_lab::pruefer::sample_forest;
use degree_lab::samplers::{
    sample_complex, sample_cs, sample_gnm, sample_multigraph, sample_pipeline, CoreGraph,
    PipelineOptions, PipelineSpec,
};
use degree_lab::{Degrees, ExperimentConfig, ExperimentKind};

/// Maximum-degree experiments for sparse random graphs.
#[derive(Debug, Parser)]
#[command(name = "degree-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Half-width of the predicted interval.
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Master seed; trial seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pass fraction (default 0.9, census 0.97).
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate ν(n, k), ν̂(n) and the predicted interval.
    Nu {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
    },
    /// Maximum load of k balls in n bins.
    Bins {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum degree of a random forest with roots 1..t.
    Forest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum degree of G(n, m).
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum degree of a random graph without complex components.
    Cs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum degree of a random complex graph with the given core.
    Complex {
        /// Edge-list file of the core.
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Part-wise maximum degrees of graphs assembled from a core.
    Pipeline {
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        shuffle_labels: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare sampled G(n, m) frequencies with the uniform law.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Split a graph into large complex, small complex and non-complex parts.
    Decompose {
        /// Edge-list file.
        file: PathBuf,
    },
    /// Draw one object and print it as an edge list.
    Sample {
        #[command(subcommand)]
        what: SampleCommand,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SampleCommand {
    Multigraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Cs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Forest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    Complex {
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        q: usize,
    },
    Pipeline {
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        shuffle_labels: bool,
    },
}

fn load_core(path: &Path) -> Result<CoreGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let graph =
        read_graph(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    Ok(CoreGraph::new(graph)?)
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn experiment(kind: ExperimentKind, run: RunArgs) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::new(kind, run.trials, run.seed).with_epsilon(run.eps);
    if let Some(threshold) = run.threshold {
        cfg = cfg.with_threshold(threshold);
    }
    let report = run_experiment(&cfg)?;
    let format = match run.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
    };
    write_output(run.out.as_deref(), &emit_report(&report, format)?)?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn part_summary(part: &Subgraph) -> serde_json::Value {
    json!({
        "vertices": part.vertex_count(),
        "edges": part.edge_count(),
        "maxDegree": part.max_degree(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Nu { n, k, eps } => {
            let value = nu(NuQuery::new(n, k)?, DEFAULT_TOL)?;
            let interval = predicted_interval(n, k, eps)?;
            let out = json!({
                "n": n,
                "k": k,
                "eps": eps,
                "nu": value,
                "nuHat": nu_hat(n)?,
                "interval": [interval.lo, interval.hi],
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bins { n, k, run } => experiment(ExperimentKind::Bins { n, k }, run),
        Command::Forest { n, t, run } => experiment(ExperimentKind::Forest { n, t }, run),
        Command::Gnm { n, m, run } => experiment(ExperimentKind::Gnm { n, m }, run),
        Command::Cs { n, m, run } => experiment(ExperimentKind::Cs { n, m }, run),
        Command::Complex { core, q, run } => experiment(
            ExperimentKind::Complex {
                core: load_core(&core)?,
                q,
            },
            run,
        ),
        Command::Pipeline {
            core,
            l,
            r,
            n,
            m,
            shuffle_labels,
            run,
        } => {
            let spec = PipelineSpec::new(load_core(&core)?, l, r, n, m)?;
            experiment(
                ExperimentKind::Pipeline {
                    spec,
                    shuffle_labels,
                },
                run,
            )
        }
        Command::Census { n, m, run } => experiment(ExperimentKind::Census { n, m }, run),
        Command::Decompose { file } => {
            let reader = BufReader::new(
                File::open(&file).with_context(|| format!("opening {}", file.display()))?,
            );
            let g = read_graph(reader)?;
            let d = split(&g);
            let out = json!({
                "n": g.n(),
                "m": g.edge_count(),
                "largeComplex": part_summary(&d.large_complex),
                "smallComplex": part_summary(&d.small_complex),
                "nonComplex": part_summary(&d.non_complex),
                "core": part_summary(&d.core),
                "coreLargestComponent": d.core_largest_component,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { what, seed, out } => {
            let text = match what {
                SampleCommand::Multigraph { n, m } => {
                    multigraph_to_string(&sample_multigraph(n, m, seed)?)
                }
                SampleCommand::Gnm { n, m } => graph_to_string(&sample_gnm(n, m, seed)?.graph),
                SampleCommand::Cs { n, m } => graph_to_string(&sample_cs(n, m, seed)?.graph),
                SampleCommand::Forest { n, t } => forest_to_string(&sample_forest(n, t, seed)?),
                SampleCommand::Complex { core, q } => {
                    graph_to_string(&sample_complex(&load_core(&core)?, q, seed)?.graph)
                }
                SampleCommand::Pipeline {
                    core,
                    l,
                    r,
                    n,
                    m,
                    shuffle_labels,
                } => {
                    let spec = PipelineSpec::new(load_core(&core)?, l, r, n, m)?;
                    let options = PipelineOptions {
                        shuffle_labels,
                        ..PipelineOptions::default()
                    };
                    graph_to_string(&sample_pipeline(&spec, seed, options)?.graph)
                }
            };
            write_output(out.as_deref(), text.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
