use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde_json::{json, Value};

use johnsections::functionals::{gaussian_measure_mc, mean_width_mc, wills_mc};
use johnsections::harness::{
    emit_reports, run_all, run_experiment, BodyClass, CheckId, CheckReport, ExperimentConfig, Format,
};
use johnsections::polytope::io::{read_body, read_subspace, BodyFile};
use johnsections::polytope::{section, volume_h, volume_v};
use johnsections::positions::{
    contact_points, default_contact_tol, fit_john_decomposition, min_surface_area_position, to_john_position,
    to_lowner_position,
};
use johnsections::Result;

#[derive(Parser)]
#[command(name = "johnsections", version, about = "Positions, sections and projections of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Move a body to John's position and print the contact decomposition.
    John { body: PathBuf },
    /// Move the convex hull of a body to Löwner's position.
    Lowner { body: PathBuf },
    /// Move a body to minimal surface area position.
    Minsurf { body: PathBuf },
    /// Section a body by a (possibly affine) subspace.
    Section {
        body: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Evaluate a functional of a body.
    Functional {
        kind: Functional,
        body: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dilation for the Gaussian measure.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Run inequality checkers and write a report.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Functional {
    Volume,
    Meanwidth,
    Wills,
    Gauss,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long, required_unless_present = "all")]
    theorem: Option<String>,
    /// Every checker over all (n, k) with k < n ≤ --n.
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,
    /// symmetric, general, cube, simplex or cross-polytope.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; `.csv` selects CSV, anything else JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn check(args: CheckArgs) -> Result<Vec<CheckReport>> {
    if args.all {
        return run_all(args.n, args.trials, args.samples, args.seed);
    }
    let theorem: CheckId = args.theorem.as_deref().unwrap_or_default().parse()?;
    let k = args.k.unwrap_or(args.n.saturating_sub(1).max(1));
    let mut config = ExperimentConfig::new(theorem, args.n, k);
    if let Some(c) = &args.class {
        config.class = BodyClass::parse(c)
            .ok_or_else(|| johnsections::GeomError::InvalidInput(format!("unknown body class {c:?}")))?;
    }
    config.trials = args.trials;
    config.mc_samples = args.samples;
    config.seed = args.seed;
    config.d = args.d;
    config.lambda_grid = args.lambda_grid;
    Ok(vec![run_experiment(&config)?])
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::John { body } => {
            let p = read_body(body)?.to_h()?;
            let (j, map) = to_john_position(&p)?;
            let dec = fit_john_decomposition(&contact_points(&j, default_contact_tol(&j))?, j.is_symmetric())?;
            print(&json!({
                "body": BodyFile::from(&j),
                "map": { "linear": matrix(&map.linear), "shift": map.shift.as_slice() },
                "decomposition": dec.to_file(),
                "residuals": {
                    "identity": dec.identity_residual(),
                    "balance": dec.balance_residual(),
                    "trace": dec.trace_residual(),
                },
            }));
        }
        Command::Lowner { body } => {
            let p = read_body(body)?.to_v()?;
            let (l, map) = to_lowner_position(&p)?;
            print(&json!({
                "body": BodyFile::from(&l),
                "map": { "linear": matrix(&map.linear), "shift": map.shift.as_slice() },
            }));
        }
        Command::Minsurf { body } => {
            let p = read_body(body)?.to_h()?;
            let r = min_surface_area_position(&p)?;
            print(&json!({
                "body": BodyFile::from(&r.body),
                "map": matrix(&r.map),
                "surface_area": r.surface,
                "residual": r.residual,
                "iterations": r.iterations,
            }));
        }
        Command::Section { body, subspace } => {
            let p = read_body(body)?.to_h()?;
            let s = section(&p, &read_subspace(subspace)?)?;
            print(&json!({ "body": BodyFile::from(&s), "volume": volume_h(&s)? }));
        }
        Command::Functional { kind, body, samples, seed, t } => {
            let b = read_body(body)?;
            let v = match kind {
                Functional::Volume => json!({ "value": volume_v(&b.to_v()?)?, "std_error": 0.0 }),
                Functional::Meanwidth => serde_json::to_value(mean_width_mc(&b.to_v()?, samples, seed))?,
                Functional::Wills => serde_json::to_value(wills_mc(&b.to_h()?, samples, seed)?)?,
                Functional::Gauss => serde_json::to_value(gaussian_measure_mc(&b.to_h()?, t, samples, seed)?)?,
            };
            print(&v);
        }
        Command::Check(args) => {
            let out = args.out.clone();
            let reports = check(args)?;
            for r in &reports {
                println!(
                    "{:<14} trials {:>4}  pass {:>4}  fail {:>3}  skipped {:>3}  info {:>4}  equalities {:>4}",
                    r.theorem.name(),
                    r.trials,
                    r.passed,
                    r.failed,
                    r.skipped,
                    r.informational,
                    r.equalities
                );
            }
            if let Some(path) = out {
                emit_reports(&reports, &path, Format::from_path(&path))?;
            }
            return Ok(reports.iter().all(CheckReport::ok));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("JOHNSECTIONS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // an already-initialized pool keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
