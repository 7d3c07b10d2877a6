use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphconf::families;
use graphconf::report::{cmd_braidgroup, cmd_compare, cmd_model, cmd_reduced, ModelOptions};
use graphconf::{Error, Graph, GraphJson};
use serde::Serialize;

/// Combinatorial models of configuration spaces of graphs.
#[derive(Parser, Debug)]
#[command(name = "graphconf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a graph from one of the built-in families.
    Gen(GenArgs),
    /// Homology and fundamental group of the configuration space model.
    Model(RunConfig),
    /// Presentations of the pure and full braid groups.
    Braidgroup(RunConfig),
    /// Compare the model with the Abrams complex of a subdivision.
    Compare(RunConfig),
    /// The reduced two-point model of a leaf-free graph.
    Reduced(RunConfig),
}

#[derive(Args, Debug)]
struct RunConfig {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short = 'k', default_value_t = 2)]
    k: usize,
    #[arg(long)]
    quotient: bool,
    #[arg(long)]
    remove_leaves: bool,
    #[arg(long)]
    collapse: bool,
    /// Edge subdivision for the Abrams complex; defaults to k + 1.
    #[arg(long)]
    subdivide: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    S1Min,
    S1Sd,
    Y,
    W,
    Xb,
    Path,
    Theta,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(short = 'k', default_value_t = 0)]
    k: usize,
    #[arg(short = 'l', default_value_t = 0)]
    l: usize,
    #[arg(short = 'x', default_value_t = 1)]
    x: usize,
    #[arg(short = 'p', default_value_t = 0)]
    p: usize,
    #[arg(short = 'q', default_value_t = 0)]
    q: usize,
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    /// End branches at leaf vertices instead of open ends.
    #[arg(long)]
    closed: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Config(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Config(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Config(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAComplex(_) | Error::InvalidCategory(_) => Failure::Internal(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let json: GraphJson = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Graph::from_json(&json).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn generate(a: &GenArgs) -> Result<Graph, Failure> {
    let need_n = || if a.n == 0 { Err(Failure::Config("-n must be at least 1".into())) } else { Ok(a.n) };
    Ok(match a.family {
        Family::S1Min => families::s1_min(),
        Family::S1Sd => families::s1_sd(need_n()?),
        Family::Y => families::y(),
        Family::W => families::w(a.k, a.l, a.closed),
        Family::Xb => families::xb(a.x, a.k, a.l, a.p, a.q, a.closed),
        Family::Path => families::path(need_n()?),
        Family::Theta => families::theta(need_n()?),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (config, kind) = match cli.command {
        Command::Gen(a) => return emit(&generate(&a)?.to_json(), a.out.as_ref()),
        Command::Model(c) => (c, 0),
        Command::Braidgroup(c) => (c, 1),
        Command::Compare(c) => (c, 2),
        Command::Reduced(c) => (c, 3),
    };
    if config.k == 0 {
        return Err(Failure::Config("-k must be at least 1".into()));
    }
    let g = read_graph(&config.graph)?;
    let opts = ModelOptions {
        k: config.k,
        quotient: config.quotient,
        remove_leaves: config.remove_leaves,
        collapse: config.collapse,
    };
    let out = config.out.as_ref();
    match kind {
        0 => emit(&cmd_model(&g, &opts)?, out),
        1 => emit(&cmd_braidgroup(&g, &opts)?, out),
        2 => {
            let n = config.subdivide.unwrap_or(config.k + 1);
            if n == 0 {
                return Err(Failure::Config("--subdivide must be at least 1".into()));
            }
            emit(&cmd_compare(&g, &opts, n)?, out)
        }
        _ => emit(&cmd_reduced(&g, &opts)?, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("graphconf: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
