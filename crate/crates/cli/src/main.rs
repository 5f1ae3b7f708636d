//! `chordiv`: evaluate divergences, sweep chord parameters, cluster points
//! and run the property suites.

mod error;
mod format;
mod points;
mod svg;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chordiv_core::bregman::bregman;
use chordiv_core::clustering::{kmeans, ClusterConfig};
use chordiv_core::numerics::{sweep, SweepGrid};
use chordiv_core::verify::{run_all, run_suite, VerifyOptions, SUITES};
use chordiv_core::{make_builtin, ConvexGenerator, DivParams, DivergenceRegistry, ParamPoint};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use error::CliError;
use format::sig12;
use points::{parse_coords, read_points};

#[derive(Parser, Debug)]
#[command(name = "chordiv", version, about = "Bregman chord divergences and friends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print D(x : y) for one divergence.
    Eval(EvalArgs),
    /// Evaluate a divergence over an (alpha, beta) grid and write CSV.
    Sweep(SweepArgs),
    /// Hard-cluster a point CSV under a divergence.
    Cluster(ClusterArgs),
    /// Run the randomized property suites.
    Verify(VerifyArgs),
}

fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format!("{s} is not finite")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    epsilon: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> DivParams {
        DivParams {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            delta: self.delta,
            epsilon: self.epsilon,
        }
    }
}

#[derive(Clone, Debug)]
struct Coords(Vec<f64>);

fn coords(s: &str) -> Result<Coords, String> {
    parse_coords(s).map(Coords)
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Convex generator; ignored by the f-divergence family.
    #[arg(long, default_value = "quadratic")]
    generator: String,
    /// Divergence id, e.g. bregman_chord, biskew:bregman, fdiv:kl.
    #[arg(long)]
    div: String,
    /// First point, comma-separated coordinates.
    #[arg(long, value_parser = coords, allow_hyphen_values = true)]
    x: Coords,
    /// Second point, comma-separated coordinates.
    #[arg(long, value_parser = coords, allow_hyphen_values = true)]
    y: Coords,
    #[command(flatten)]
    params: ParamArgs,
}

impl PairArgs {
    fn resolve(&self) -> Result<(Box<dyn ConvexGenerator>, ParamPoint, ParamPoint), CliError> {
        let (x, y) = (&self.x.0, &self.y.0);
        if x.len() != y.len() {
            return Err(CliError::Usage(format!(
                "--x has {} coordinates but --y has {}",
                x.len(),
                y.len()
            )));
        }
        let f = make_builtin(&self.generator, x.len())?;
        Ok((f, x.clone().into(), y.clone().into()))
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    pair: PairArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Grid size N: alpha, beta range over i/(N+1), i = 1..N.
    #[arg(long)]
    grid: usize,
    /// Do not append the beta = 1 column.
    #[arg(long)]
    no_beta_one: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClusterArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "quadratic")]
    generator: String,
    #[arg(long, default_value = "bregman")]
    div: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    /// Directory receiving assignments.csv and summary.json.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// One suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let (f, x, y) = args.pair.resolve()?;
    let d = DivergenceRegistry::with_builtins().resolve(&args.pair.div, &args.pair.params.params())?;
    println!("{}", sig12(d.divergence(f.as_ref(), &x, &y)?));
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let (f, x, y) = args.pair.resolve()?;
    let grid = SweepGrid::uniform(args.grid, !args.no_beta_one)?;
    let rows = sweep(
        f.as_ref(),
        &x,
        &y,
        &grid,
        &DivergenceRegistry::with_builtins(),
        &args.pair.div,
        &args.pair.params.params(),
    )?;
    let mut csv = String::from("alpha,beta,value\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{}", sig12(r.alpha), sig12(r.beta), sig12(r.value));
    }
    if f.has_gradient() {
        let _ = writeln!(csv, "# bregman={}", sig12(bregman(f.as_ref(), &x, &y)?));
    }
    write_file(&args.out, &csv)?;
    if let Some(path) = &args.svg {
        let title = format!("{} on {}", args.pair.div, args.pair.generator);
        write_file(path, &svg::heatmap(&rows, grid.alpha_values(), grid.beta_values(), &title))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Summary {
    objective: f64,
    iterations: usize,
    centers: Vec<Vec<f64>>,
    seed: u64,
}

fn cmd_cluster(args: &ClusterArgs) -> Result<(), CliError> {
    let points = read_points(&args.input)?;
    let f = make_builtin(&args.generator, points[0].dim())?;
    let mut cfg = ClusterConfig::new(args.k, args.div.clone(), args.params.params());
    cfg.seed = args.seed;
    cfg.max_iters = args.max_iters;
    let result = kmeans(&points, f.as_ref(), &cfg)?;

    let mut csv = String::from("index,cluster\n");
    for (i, c) in result.assignments.iter().enumerate() {
        let _ = writeln!(csv, "{i},{c}");
    }
    write_file(&args.out_dir.join("assignments.csv"), &csv)?;
    let summary = Summary {
        objective: result.objective(),
        iterations: result.iterations,
        centers: result.centers.iter().map(|c| c.coords().to_vec()).collect(),
        seed: args.seed,
    };
    let json = serde_json::to_string_pretty(&summary).expect("finite summary serializes");
    write_file(&args.out_dir.join("summary.json"), &(json + "\n"))?;
    println!("objective={} iterations={}", sig12(summary.objective), summary.iterations);
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
    };
    let reports = if args.suite == "all" {
        run_all(opts)?
    } else {
        match run_suite(&args.suite, opts) {
            Some(r) => vec![r?],
            None => {
                return Err(CliError::Usage(format!(
                    "unknown suite {:?}; expected one of all, {}",
                    args.suite,
                    SUITES.join(", ")
                )))
            }
        }
    };
    for r in &reports {
        println!("{r}");
    }
    match reports.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        n => Err(CliError::SuitesFailed(n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Cluster(a) => cmd_cluster(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
