mod commands;
mod error;
mod grid;
mod output;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::{AmplitudesArgs, Dataset, Fig2Args, Fig3Args, Fig4Args, Fig5Args, Fig6Args};
use error::CliError;
use output::{read_manifest, render, Manifest};
use plot::PlotStyle;

/// Transmission-rate datasets for spin-chain quantum channels.
#[derive(Debug, Parser)]
#[command(name = "chainrate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// End-to-end and return probabilities |γ_1N(t)|², |γ_NN(t)|².
    Amplitudes(AmplitudesArgs),
    /// Two-spin channel rates vs tau: plain scheme per swap count, two-spin encoding, assisted reference.
    Fig2(Fig2Args),
    /// Two-spin channel rates vs tau for multi-excitation encodings.
    Fig3(Fig3Args),
    /// Dual-rail rate vs tau.
    Fig4(Fig4Args),
    /// Monte Carlo instantaneous-rate traces.
    Fig5(Fig5Args),
    /// Dual-rail rate vs tau with randomly tilted measurement times.
    Fig6(Fig6Args),
    /// Write a matplotlib script plotting a dataset.
    Plot {
        /// CSV produced by one of the dataset commands.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        style: PlotStyle,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a dataset from the manifest embedded in its header.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn display_path(out: &Option<PathBuf>) -> String {
    out.as_ref().map_or_else(|| "-".to_string(), |p| p.display().to_string())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit<A: Serialize>(
    name: &str,
    args: &A,
    out: &Option<PathBuf>,
    recorded: Option<(&str, &str)>,
    run: impl FnOnce() -> Result<Dataset, CliError>,
) -> Result<(), CliError> {
    let dataset = run()?;
    let params = serde_json::to_value(args).map_err(|e| CliError::Parse(e.to_string()))?;
    let (timestamp, output) = match recorded {
        Some((ts, output)) => (ts.to_string(), output.to_string()),
        None => (chrono::Utc::now().to_rfc3339(), display_path(out)),
    };
    for w in &dataset.warnings {
        eprintln!("warning: {w}");
    }
    let manifest =
        Manifest { command: name.into(), params, seed: dataset.seed, timestamp, output, warnings: dataset.warnings };
    write_output(out, &render(&manifest, &dataset.table))
}

fn dispatch(command: Command, recorded: Option<(&str, &str)>) -> Result<(), CliError> {
    match command {
        Command::Amplitudes(a) => emit("amplitudes", &a, &a.out, recorded, || commands::amplitudes(&a)),
        Command::Fig2(a) => emit("fig2", &a, &a.out, recorded, || commands::fig2(&a)),
        Command::Fig3(a) => emit("fig3", &a, &a.out, recorded, || commands::fig3(&a)),
        Command::Fig4(a) => emit("fig4", &a, &a.out, recorded, || commands::fig4(&a)),
        Command::Fig5(a) => emit("fig5", &a, &a.out, recorded, || commands::fig5(&a)),
        Command::Fig6(a) => emit("fig6", &a, &a.out, recorded, || commands::fig6(&a)),
        Command::Plot { data, style, out } => {
            let text = std::fs::read_to_string(&data)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", data.display())))?;
            let csv = plot::parse_csv(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", data.display())))?;
            write_output(&out, &plot::plot_script(&data, &csv, style))
        }
        Command::Rerun { manifest, out } => rerun(&manifest, out),
    }
}

fn rerun(path: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)?;
    let run = read_manifest(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    fn decode<T: serde::de::DeserializeOwned>(v: &serde_json::Value) -> Result<T, CliError> {
        serde_json::from_value(v.clone()).map_err(|e| CliError::Parse(format!("manifest params: {e}")))
    }
    let command = match run.command.as_str() {
        "amplitudes" => Command::Amplitudes(AmplitudesArgs { out, ..decode(&run.params)? }),
        "fig2" => Command::Fig2(Fig2Args { out, ..decode(&run.params)? }),
        "fig3" => Command::Fig3(Fig3Args { out, ..decode(&run.params)? }),
        "fig4" => Command::Fig4(Fig4Args { out, ..decode(&run.params)? }),
        "fig5" => Command::Fig5(Fig5Args { out, ..decode(&run.params)? }),
        "fig6" => Command::Fig6(Fig6Args { out, ..decode(&run.params)? }),
        other => return Err(CliError::Parse(format!("unknown command `{other}` in manifest"))),
    };
    dispatch(command, Some((&run.timestamp, &run.output)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command, None) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
