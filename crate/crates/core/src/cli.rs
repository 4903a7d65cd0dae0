//! `closure` command-line interface.
//!
//! Every subcommand prints a JSON document (or CSV for `sweep`) that starts
//! with the fully resolved configuration. Floats are rounded to 12
//! significant digits so outputs are stable byte-for-byte.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiment::{
    alpha_sweep, exact_enumeration, run_monte_carlo, write_replicates_csv, write_sweep_csv,
    McConfig, Record, SweepMc,
};
use crate::format::round_json;
use crate::graphstats::{closure_coefficients, clustering_from_stats, node_motif_counts};
use crate::model::{
    sample_graph, EdgeProbMatrix, Graph, ModelSpec, WeightKind, WeightSource, WeightSpec,
};
use crate::theory::{er_closed_forms, theory_params};

#[derive(Debug, Parser)]
#[command(
    name = "closure",
    version,
    about = "Average closure coefficient of heterogeneous Erdős–Rényi graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one graph from the model.
    Sample(SampleArgs),
    /// Motif counts and closure / clustering coefficients of one graph.
    Stats(StatsArgs),
    /// Asymptotic variance components for the model.
    Theory(TheoryArgs),
    /// Seeded Monte Carlo of the average closure coefficient.
    Mc(McArgs),
    /// Exact moments by enumerating every graph (n <= 5).
    Enum(EnumArgs),
    /// Erdős–Rényi variance components over an (n, alpha) grid, as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeightKindArg {
    Constant,
    TwoBlock,
    Uniform,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Number of nodes.
    #[arg(short = 'n', long = "nodes")]
    n: Option<usize>,
    /// Density exponent, p = n^-alpha.
    #[arg(long, conflicts_with = "p")]
    alpha: Option<f64>,
    /// Explicit edge probability scale.
    #[arg(long)]
    p: Option<f64>,
    /// Plain Erdős–Rényi weights (all ones). This is the default.
    #[arg(long, conflicts_with_all = ["weights", "weights_file"])]
    er: bool,
    /// Generated weight matrix.
    #[arg(long, value_enum, conflicts_with = "weights_file")]
    weights: Option<WeightKindArg>,
    /// Lower bound on the weights.
    #[arg(long)]
    beta: Option<f64>,
    /// Value of every weight for `--weights constant`.
    #[arg(long, default_value_t = 1.0)]
    weight_value: f64,
    /// Size of the first block for `--weights two-block`.
    #[arg(long)]
    block_size: Option<usize>,
    /// Weight inside either block.
    #[arg(long, default_value_t = 1.0)]
    within: f64,
    /// Weight between the blocks (defaults to `--within`).
    #[arg(long)]
    cross: Option<f64>,
    /// Seed for `--weights uniform`.
    #[arg(long, default_value_t = 0)]
    weight_seed: u64,
    /// Load the weight matrix from a text file (`n`, then n rows of n reals).
    #[arg(long)]
    weights_file: Option<PathBuf>,
}

impl ModelArgs {
    fn given(&self) -> bool {
        self.n.is_some() || self.weights_file.is_some()
    }

    fn spec(&self) -> Result<ModelSpec> {
        let weights = match &self.weights_file {
            Some(path) => WeightSource::File(path.clone()),
            None => {
                let n = self.n.ok_or_else(|| Error::param("n", "the number of nodes is required"))?;
                let kind = match self.weights.unwrap_or(WeightKindArg::Constant) {
                    WeightKindArg::Constant => WeightKind::Constant {
                        value: self.weight_value,
                    },
                    WeightKindArg::TwoBlock => WeightKind::TwoBlock {
                        first_block: self.block_size.unwrap_or(n / 2),
                        within: self.within,
                        cross: self.cross.unwrap_or(self.within),
                    },
                    WeightKindArg::Uniform => WeightKind::UniformRandom {
                        seed: self.weight_seed,
                    },
                };
                let beta = match (self.beta, &kind) {
                    (Some(b), _) => b,
                    (None, WeightKind::Constant { value }) => *value,
                    (None, WeightKind::TwoBlock { within, cross, .. }) => within.min(*cross),
                    (None, WeightKind::UniformRandom { .. }) => {
                        return Err(Error::param("beta", "required for uniform weights"))
                    }
                };
                WeightSource::Generated(WeightSpec { n, beta, kind })
            }
        };
        Ok(ModelSpec {
            weights,
            alpha: self.alpha,
            p: self.p,
        })
    }

    fn resolve(&self) -> Result<(ModelSpec, EdgeProbMatrix)> {
        let spec = self.spec()?;
        let mu = spec.resolve()?;
        if let (Some(n), WeightSource::File(_)) = (self.n, &spec.weights) {
            if n != mu.n() {
                return Err(Error::param("n", format!("{n} does not match the weight file ({})", mu.n())));
            }
        }
        Ok((spec, mu))
    }
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the sampled graph as an edge list.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Write the weight matrix in the reloadable text format.
    #[arg(long)]
    emit_weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Edge-list file (`n`, then one `i j` per line). Otherwise a graph is sampled.
    #[arg(long, conflicts_with_all = ["n", "alpha", "p"])]
    graph: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TheoryArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Include the ν and a vectors.
    #[arg(long)]
    tables: bool,
}

#[derive(Debug, Args)]
struct McArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of sampled graphs.
    #[arg(short = 'm', long, default_value_t = 1000)]
    replicates: usize,
    /// Master seed; replicate seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores). Does not affect results.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Also record the average clustering coefficient.
    #[arg(long)]
    clustering: bool,
    /// Also record the cubic and linear leading terms.
    #[arg(long)]
    leading_terms: bool,
    /// Per-replicate CSV output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Omit per-replicate values and scores from the JSON summary.
    #[arg(long)]
    summary_only: bool,
}

#[derive(Debug, Args)]
struct EnumArgs {
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long = "alpha-list", value_delimiter = ',', required = true)]
    alpha_list: Vec<f64>,
    /// Add a Monte Carlo variance ratio column using this many replicates.
    #[arg(short = 'm', long)]
    replicates: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on parameter or I/O errors, 2 on usage errors.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            1
        }
    }
}

fn flag_for(name: &str) -> String {
    match name {
        "n" => "-n".to_string(),
        "replicates" => "-m/--replicates".to_string(),
        "nu" => "--weights".to_string(),
        other => format!("--{other}"),
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Parameter { name, reason } => format!("invalid value for `{}`: {reason}", flag_for(name)),
        other => other.to_string(),
    }
}

fn emit_json(out: &mut dyn Write, mut value: Value) -> Result<()> {
    round_json(&mut value);
    let text = serde_json::to_string_pretty(&value).map_err(|e| Error::Format(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Sample(args) => sample(args, out),
        Command::Stats(args) => stats(args, out),
        Command::Theory(args) => theory(args, out),
        Command::Mc(args) => mc(args, out),
        Command::Enum(args) => enumerate(args, out),
        Command::Sweep(args) => sweep(args, out),
    }
}

fn model_header(spec: &ModelSpec, mu: &EdgeProbMatrix) -> Value {
    json!({ "model": to_value(spec), "n": mu.n(), "p": mu.p(), "alpha": mu.alpha() })
}

fn sample(args: SampleArgs, out: &mut dyn Write) -> Result<()> {
    let (spec, mu) = args.model.resolve()?;
    let g = sample_graph(&mu, args.seed);
    if let Some(path) = &args.edges {
        std::fs::write(path, g.to_edge_list())?;
    }
    if let Some(path) = &args.emit_weights {
        spec.weight_matrix()?.write_to(path)?;
    }
    emit_json(
        out,
        json!({
            "command": "sample",
            "config": {
                "model": to_value(&spec),
                "seed": args.seed,
                "edges": args.edges,
                "emit_weights": args.emit_weights,
            },
            "n": mu.n(),
            "p": mu.p(),
            "edge_count": g.edge_count(),
        }),
    )
}

fn stats(args: StatsArgs, out: &mut dyn Write) -> Result<()> {
    let (config, g) = match &args.graph {
        Some(path) => {
            let g = Graph::parse_edge_list(&std::fs::read_to_string(path)?)?;
            (json!({ "graph": path }), g)
        }
        None => {
            if !args.model.given() {
                return Err(Error::param("n", "give either --graph or model flags"));
            }
            let (spec, mu) = args.model.resolve()?;
            let g = sample_graph(&mu, args.seed);
            (json!({ "model": to_value(&spec), "seed": args.seed }), g)
        }
    };
    let s = node_motif_counts(&g);
    let (h, hbar) = closure_coefficients(&s);
    let (c, cbar) = clustering_from_stats(&s);
    emit_json(
        out,
        json!({
            "command": "stats",
            "config": config,
            "n": g.n(),
            "edge_count": g.edge_count(),
            "triangles": s.triangle_count(),
            "hbar": hbar,
            "cbar": cbar,
            "degree": s.degree,
            "head_wedges": s.head_wedges,
            "closed_wedges": s.closed_wedges,
            "closure": h,
            "clustering": c,
        }),
    )
}

fn theory(args: TheoryArgs, out: &mut dyn Write) -> Result<()> {
    let (spec, mu) = args.model.resolve()?;
    let params = theory_params(&mu)?;
    let leading = match mu.alpha() {
        Some(alpha) => Some(er_closed_forms(mu.n(), alpha)?),
        None => None,
    };
    let mut report = json!({
        "command": "theory",
        "config": model_header(&spec, &mu),
        "sigma1_sq": params.sigma1_sq,
        "sigma2_sq": params.sigma2_sq,
        "sigma_sq": params.sigma_sq,
        "er_leading": leading.map(|l| to_value(&l)),
    });
    if args.tables {
        report["nu"] = to_value(&params.nu.to_vec());
        report["a"] = to_value(&params.tables.a.to_vec());
    }
    emit_json(out, report)
}

fn mc(args: McArgs, out: &mut dyn Write) -> Result<()> {
    let model = args.model.spec()?;
    let cfg = McConfig {
        model,
        replicates: args.replicates,
        master_seed: args.seed,
        threads: args.threads,
        record: Record {
            clustering: args.clustering,
            leading_terms: args.leading_terms,
        },
    };
    let summary = run_monte_carlo(&cfg)?;
    if let Some(path) = &args.csv {
        write_replicates_csv(&summary, BufWriter::new(File::create(path)?))?;
    }
    let mut report = to_value(&summary);
    if args.summary_only {
        if let Value::Object(map) = &mut report {
            map.remove("replicates");
            map.remove("z");
        }
    }
    let mut doc = json!({ "command": "mc", "csv": args.csv });
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, report) {
        dst.extend(src);
    }
    emit_json(out, doc)
}

fn enumerate(args: EnumArgs, out: &mut dyn Write) -> Result<()> {
    let (spec, mu) = args.model.resolve()?;
    let result = exact_enumeration(&mu)?;
    let mut doc = json!({ "command": "enum", "config": model_header(&spec, &mu) });
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, to_value(&result)) {
        dst.extend(src);
    }
    emit_json(out, doc)
}

fn sweep(args: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let mc = args.replicates.map(|replicates| SweepMc {
        replicates,
        master_seed: args.seed,
        threads: args.threads,
    });
    let rows = alpha_sweep(&args.n_list, &args.alpha_list, mc.as_ref())?;
    let mut config = json!({
        "command": "sweep",
        "n_list": args.n_list,
        "alpha_list": args.alpha_list,
        "replicates": args.replicates,
        "seed": args.seed,
    });
    round_json(&mut config);
    let header = format!("# {config}\n");
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(header.as_bytes())?;
            write_sweep_csv(&rows, &mut file)?;
            emit_json(out, json!({ "command": "sweep", "config": config, "out": path, "rows": rows.len() }))
        }
        None => {
            out.write_all(header.as_bytes())?;
            write_sweep_csv(&rows, out)
        }
    }
}
