use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use neurofuzzy::{
    generate_mackey_glass, read_column, run_experiment, write_series, DataSource,
    ExperimentConfig, ForecastPoint, ForecastReport, MackeyGlassParams,
};

/// Online neuro-fuzzy forecasting experiments.
#[derive(Debug, Parser)]
#[command(name = "neurofuzzy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a Mackey-Glass series at unit time spacing.
    Generate(GenerateArgs),
    /// Train online on a series, evaluate and forecast.
    Run(RunArgs),
    /// Score predictions against actual values.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// JSON file with any of mg_beta, mg_gamma, mg_n, tau, dt, x0.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    mg_beta: Option<f64>,
    #[arg(long)]
    mg_gamma: Option<f64>,
    #[arg(long)]
    mg_n: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long, default_value_t = 1600)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment config (flat JSON); missing keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input series. Without it a Mackey-Glass series is generated from the config.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Column to read when the data file has several.
    #[arg(long)]
    column: Option<String>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Keep the initial membership grid instead of self-learning it.
    #[arg(long)]
    freeze_centers: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    actual: PathBuf,
    #[arg(long)]
    predicted: PathBuf,
    #[arg(long)]
    actual_column: Option<String>,
    #[arg(long)]
    predicted_column: Option<String>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let mut params: MackeyGlassParams = match &args.params {
        Some(path) => {
            let mut value: serde_json::Value = read_json(path)?;
            // allow partial files
            let defaults = serde_json::to_value(MackeyGlassParams::default())?;
            if let (Some(obj), Some(base)) = (value.as_object_mut(), defaults.as_object()) {
                for (k, v) in base {
                    obj.entry(k.clone()).or_insert_with(|| v.clone());
                }
            }
            serde_json::from_value(value).context("invalid Mackey-Glass parameters")?
        }
        None => MackeyGlassParams::default(),
    };
    let overrides = [
        (&mut params.mg_beta, args.mg_beta),
        (&mut params.mg_gamma, args.mg_gamma),
        (&mut params.mg_n, args.mg_n),
        (&mut params.tau, args.tau),
        (&mut params.dt, args.dt),
        (&mut params.x0, args.x0),
    ];
    for (field, value) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    let series = generate_mackey_glass(&params, args.count)?;
    write_series(&args.out, "value", &series)?;
    println!("wrote {} samples to {}", series.len(), args.out.display());
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::from_json(&text)
                .with_context(|| format!("loading config {}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    if args.freeze_centers {
        config.freeze_centers = true;
    }
    let source = match &args.data {
        Some(path) => DataSource::Series(read_column(path, args.column.as_deref())?),
        None => DataSource::MackeyGlass,
    };
    let outcome = run_experiment(&config, source)?;
    outcome.write(&args.out_dir)?;

    let fmt = |r: &ForecastReport| match r.metrics.mape {
        Some(m) => format!("MAPE {m:.4}%, RMSE {:.6}", r.metrics.rmse),
        None => format!("MAPE undefined, RMSE {:.6}", r.metrics.rmse),
    };
    let c = outcome.counts;
    println!("series {} values, train {} samples, test {} samples", c.series, c.train, c.test);
    println!("train (online, prior): {}", fmt(&outcome.train));
    println!("test (one step):       {}", fmt(&outcome.test_onestep));
    println!("forecast ({} steps):   {}", c.forecast, fmt(&outcome.forecast));
    println!("results in {}", args.out_dir.display());
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let actual = read_column(&args.actual, args.actual_column.as_deref())?;
    let predicted = read_column(&args.predicted, args.predicted_column.as_deref())?;
    anyhow::ensure!(
        actual.len() == predicted.len(),
        "{} actual values but {} predictions",
        actual.len(),
        predicted.len()
    );
    let points = actual
        .iter()
        .zip(&predicted)
        .enumerate()
        .map(|(time, (&actual, &predicted))| ForecastPoint {
            time,
            actual,
            predicted,
        })
        .collect();
    let report = ForecastReport::from_points(points)?;
    println!("{}", serde_json::to_string_pretty(&report.metrics)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Run(args) => run(args),
        Command::Eval(args) => eval(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
