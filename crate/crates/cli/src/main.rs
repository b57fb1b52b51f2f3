use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use shell_ergm::cores::{shell_distribution, shell_sequence};
use shell_ergm::enumerate::{enumerate_fiber, statistic_histogram, FIBER_CAP};
use shell_ergm::ergm::{empirical_estimate, PARTITION_CAP_MAX};
use shell_ergm::fiber::{discover, random_relabel, sample_fiber, sort_spec};
use shell_ergm::mcmc::{erdos_renyi, run_chain};
use shell_ergm::stats::gof_compare;
use shell_ergm::{
    from_edge_list, from_labeled_edge_list, rng_from_seed, rng_from_seed_stream, Alpha,
    ChainConfig, Correction, Error, Graph, ShellDistribution,
};

const DEFAULT_SIMULATE_OUT: &str = "shellergm-out";

#[derive(Parser)]
#[command(name = "shellergm", version, about = "Shell-distribution ERGM toolkit")]
struct Cli {
    /// Directory for output files and the run manifest.
    #[arg(long, global = true, env = "SHELLERGM_OUT")]
    out: Option<PathBuf>,

    /// Format of what goes to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrectionArg {
    /// Plain Metropolis ratio, no proposal correction.
    #[value(name = "paper")]
    Plain,
    /// Metropolis-Hastings with the TNT proposal ratio.
    Hastings,
}

impl From<CorrectionArg> for Correction {
    fn from(c: CorrectionArg) -> Self {
        match c {
            CorrectionArg::Plain => Correction::Metropolis,
            CorrectionArg::Hastings => Correction::HastingsCorrected,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file (`u v` per line, optional `n=<int>` header) or a
    /// `.json` graph.
    graph: PathBuf,

    /// Vertex tokens are arbitrary labels rather than 0-based integers.
    #[arg(long)]
    labels: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Shell sequence and shell distribution of a graph.
    Cores {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Draw graphs with a prescribed shell distribution.
    SampleFiber {
        /// Shell distribution, e.g. "(0,2,1,4,0,0,0)".
        #[arg(long)]
        distribution: ShellDistribution,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Randomly relabel each output.
        #[arg(long)]
        labeled: bool,
    },
    /// Fit the model to a graph, run the chain and compare.
    Simulate {
        #[command(flatten)]
        input: GraphInput,
        /// Smoothing: one value broadcast to every shell, or a
        /// comma-separated vector of length n.
        #[arg(long, default_value = "0.2")]
        alpha: String,
        #[arg(long, default_value_t = 20_000)]
        steps: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        burn_in: usize,
        #[arg(long, default_value_t = 1)]
        thin: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = CorrectionArg::Plain)]
        correction: CorrectionArg,
    },
    /// Exact tables by brute force over all labeled graphs.
    Enumerate {
        /// Statistic multiplicities over all graphs on n vertices.
        #[arg(long, conflicts_with = "distribution", required_unless_present = "distribution")]
        n: Option<usize>,
        /// Labeled graphs and isomorphism classes of one fiber.
        #[arg(long)]
        distribution: Option<ShellDistribution>,
    },
}

#[derive(Serialize)]
struct RunManifest {
    tool: String,
    subcommand: String,
    inputs: Vec<String>,
    seed: Option<u64>,
    parameters: BTreeMap<String, Value>,
    output_dir: String,
}

struct Outputs {
    dir: Option<PathBuf>,
    manifest: RunManifest,
}

impl Outputs {
    fn new(dir: Option<PathBuf>, subcommand: &str) -> anyhow::Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Self {
            manifest: RunManifest {
                tool: format!("shellergm {}", env!("CARGO_PKG_VERSION")),
                subcommand: subcommand.into(),
                inputs: Vec::new(),
                seed: None,
                parameters: BTreeMap::new(),
                output_dir: dir.as_ref().map(|d| d.display().to_string()).unwrap_or_default(),
            },
            dir,
        })
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        self.manifest
            .parameters
            .insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    fn write(&self, name: &str, contents: &str) -> anyhow::Result<()> {
        if let Some(d) = &self.dir {
            let path = d.join(name);
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }

    fn finish(self) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(&self.manifest)? + "\n";
        self.write("manifest.json", &text)
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn read_graph(input: &GraphInput) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(&input.graph)
        .with_context(|| format!("reading {}", input.graph.display()))?;
    let g = if input.graph.extension().is_some_and(|e| e == "json") {
        Graph::from_json(&text)?
    } else if input.labels {
        from_labeled_edge_list(&text)?.graph
    } else {
        from_edge_list(&text)?
    };
    Ok(g)
}

fn parse_alpha(raw: &str, n: usize) -> anyhow::Result<Alpha> {
    let values: Vec<f64> = raw
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::InvalidArgument(format!("alpha {raw:?}: {e}")))?;
    let alpha = match values.as_slice() {
        [v] => Alpha::uniform(n, *v)?,
        _ if values.len() == n => Alpha::new(values)?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "alpha has {} entries, expected 1 or {n}",
                values.len()
            ))
            .into())
        }
    };
    Ok(alpha)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(format: Format, value: &Value, csv: impl FnOnce() -> String) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("json") + "\n",
        Format::Csv => csv(),
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn cmd_cores(cli_out: Option<PathBuf>, format: Format, input: &GraphInput) -> anyhow::Result<()> {
    let g = read_graph(input)?;
    let seq = shell_sequence(&g);
    let dist = seq.distribution();
    let report = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "shell_sequence": seq.0,
        "shell_distribution": dist.counts(),
        "truncated": dist.truncated(),
        "largest_shell_index": dist.degeneracy().unwrap_or(0),
        "largest_shell_size": dist.largest_shell_size(),
    });
    let csv = || {
        let mut s = String::from("vertex,shell\n");
        for (v, k) in seq.0.iter().enumerate() {
            s.push_str(&format!("{v},{k}\n"));
        }
        s
    };
    let mut out = Outputs::new(cli_out, "cores")?;
    out.manifest.inputs.push(input.graph.display().to_string());
    out.param("labels", input.labels);
    out.write("cores.json", &(serde_json::to_string_pretty(&report)? + "\n"))?;
    out.write("cores.csv", &csv())?;
    emit(format, &report, csv);
    out.finish()
}

fn cmd_sample_fiber(
    cli_out: Option<PathBuf>,
    format: Format,
    distribution: &ShellDistribution,
    count: usize,
    seed: Option<u64>,
    labeled: bool,
) -> anyhow::Result<()> {
    let spec = sort_spec(distribution)?;
    let seed = resolve_seed(seed);
    let report = discover(&spec, count, labeled, &mut rng_from_seed(seed));
    let mut out = Outputs::new(cli_out, "sample-fiber")?;
    out.manifest.seed = Some(seed);
    out.param("distribution", distribution.to_string());
    out.param("count", count);
    out.param("labeled", labeled);

    if out.dir.is_some() {
        // Same stream as the report, replayed for the graph dump.
        let mut rng = rng_from_seed(seed);
        let mut lines = String::new();
        for _ in 0..count {
            let g = sample_fiber(&spec, &mut rng);
            let g = if labeled { random_relabel(&g, &mut rng) } else { g };
            lines.push_str(&g.to_json());
            lines.push('\n');
        }
        out.write("graphs.jsonl", &lines)?;
    }

    let summary = json!({
        "distribution": distribution.to_string(),
        "runs": report.runs,
        "distinct_labeled": report.distinct_labeled,
        "isomorphism_classes": report.class_count(),
        "runs_to_all_classes": report.class_count().and_then(|c| report.runs_to_find(c)),
        "failures": report.failures,
        "seed": seed,
    });
    out.write("report.json", &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    emit(format, &summary, || {
        format!(
            "runs,distinct_labeled,isomorphism_classes,failures\n{},{},{},{}\n",
            report.runs,
            report.distinct_labeled,
            report.class_count().map(|c| c.to_string()).unwrap_or_default(),
            report.failures
        )
    });
    out.finish()
}

fn cmd_simulate(
    cli_out: Option<PathBuf>,
    format: Format,
    input: &GraphInput,
    alpha: &str,
    cfg: ChainConfig,
) -> anyhow::Result<()> {
    let g = read_graph(input)?;
    let alpha = parse_alpha(alpha, g.n())?;
    let params = empirical_estimate(&g, &alpha)?;
    let init = erdos_renyi(g.n(), g.density(), &mut rng_from_seed_stream(cfg.seed, 1));
    let trace = run_chain(&params, &init, &cfg)?;
    let report = gof_compare(&g, &trace.summaries())?;

    let dir = cli_out.unwrap_or_else(|| PathBuf::from(DEFAULT_SIMULATE_OUT));
    let mut out = Outputs::new(Some(dir), "simulate")?;
    out.manifest.inputs.push(input.graph.display().to_string());
    out.manifest.seed = Some(cfg.seed);
    out.param("alpha", alpha.values());
    out.param("chain", &cfg);
    out.param("labels", input.labels);
    out.param("init", "erdos_renyi(observed density, stream 1)");

    let mut summary = trace.summary_json();
    summary["theta"] = json!(params.theta());
    summary["observed_truncated"] = json!(tuple(&shell_distribution(&g).truncated()));
    summary["modal_distributions"] = json!(trace
        .modes()
        .into_iter()
        .take(10)
        .map(|(d, c)| json!({"truncated": tuple(&d), "visits": c}))
        .collect::<Vec<_>>());

    out.write("trace.csv", &trace.to_csv())?;
    out.write("summary.json", &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    out.write("gof.json", &(report.to_json() + "\n"))?;
    for s in &report.statistics {
        if let Some(csv) = report.histogram_csv(&s.name) {
            out.write(&format!("gof_{}.csv", s.name), &csv)?;
        }
    }
    out.write("gof_boxplots.csv", &report.boxplot_csv())?;

    let brief = json!({
        "output_dir": out.manifest.output_dir,
        "acceptance_rate": trace.acceptance_rate,
        "modal_distributions": summary["modal_distributions"],
        "seed": cfg.seed,
    });
    emit(format, &brief, || {
        let mut s = String::from("truncated,visits\n");
        for (d, c) in trace.modes().into_iter().take(10) {
            s.push_str(&format!("\"{}\",{c}\n", tuple(&d)));
        }
        s
    });
    out.finish()
}

fn cmd_enumerate(
    cli_out: Option<PathBuf>,
    format: Format,
    n: Option<usize>,
    distribution: Option<&ShellDistribution>,
) -> anyhow::Result<()> {
    let mut out = Outputs::new(cli_out, "enumerate")?;
    let (report, csv) = match (n, distribution) {
        (Some(n), None) => {
            out.param("n", n);
            let hist = statistic_histogram(n, PARTITION_CAP_MAX)?;
            let rows: Vec<Value> = hist
                .iter()
                .map(|(t, c)| json!({"truncated": tuple(t), "labeled_count": c}))
                .collect();
            let mut csv = String::from("truncated,labeled_count\n");
            for (t, c) in &hist {
                csv.push_str(&format!("\"{}\",{c}\n", tuple(t)));
            }
            let report = json!({
                "n": n,
                "graphs": hist.values().sum::<u64>(),
                "statistics": rows,
            });
            (report, csv)
        }
        (None, Some(d)) => {
            out.param("distribution", d.to_string());
            if d.n() > FIBER_CAP {
                return Err(Error::CapExceeded {
                    n: d.n(),
                    cap: FIBER_CAP,
                }
                .into());
            }
            sort_spec(d)?;
            let fib = enumerate_fiber(d)?;
            let classes: Vec<Value> = fib
                .iso_classes
                .iter()
                .zip(fib.representatives())
                .map(|(c, g)| {
                    let edges: Vec<[usize; 2]> = g.edges().map(|e| [e.u(), e.v()]).collect();
                    json!({"labeled_count": c.labeled_count, "representative": edges})
                })
                .collect();
            let mut csv = String::from("class,labeled_count\n");
            for (i, c) in fib.iso_classes.iter().enumerate() {
                csv.push_str(&format!("{i},{}\n", c.labeled_count));
            }
            let report = json!({
                "distribution": d.to_string(),
                "labeled_count": fib.labeled_count,
                "isomorphism_classes": fib.class_count(),
                "classes": classes,
            });
            (report, csv)
        }
        _ => bail!(Error::InvalidArgument("pass exactly one of --n or --distribution".into())),
    };
    out.write("enumerate.json", &(serde_json::to_string_pretty(&report)? + "\n"))?;
    out.write("enumerate.csv", &csv)?;
    emit(format, &report, || csv.clone());
    out.finish()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::SelfLoop { .. } | Error::InvalidDyad { .. } | Error::DuplicateDyad { .. }) => 2,
        Some(Error::Unrealizable { .. } | Error::SizeMismatch { .. } | Error::InvalidArgument(_)) => 3,
        Some(Error::Estimator(_)) => 4,
        Some(Error::CapExceeded { .. }) => 5,
        None => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Cores { input } => cmd_cores(cli.out, cli.format, input),
        Command::SampleFiber {
            distribution,
            count,
            seed,
            labeled,
        } => cmd_sample_fiber(cli.out, cli.format, distribution, *count, *seed, *labeled),
        Command::Simulate {
            input,
            alpha,
            steps,
            k,
            burn_in,
            thin,
            seed,
            correction,
        } => {
            let cfg = ChainConfig {
                steps: *steps,
                k: *k,
                burn_in: *burn_in,
                thin: *thin,
                seed: resolve_seed(*seed),
                correction: (*correction).into(),
            };
            cmd_simulate(cli.out, cli.format, input, alpha, cfg)
        }
        Command::Enumerate { n, distribution } => {
            cmd_enumerate(cli.out, cli.format, *n, distribution.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
