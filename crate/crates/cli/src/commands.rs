//! Dataset commands. Each one resolves its flags, computes a [`Table`] and
//! reports warnings for the manifest.

use std::path::PathBuf;

use chainrate::protocols::{
    dual_rail_rate, dual_rail_success_distribution, dual_rail_tilted_rate, entanglement_assisted_rate,
    multi_excitation_rate, plain_rate, MASS_GATE,
};
use chainrate::simulator::{simulate_dual_rail, simulate_multi_excitation};
use chainrate::{diagonalize, AmplitudeTable, ChainSpec, Feedback};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::grid::{parse_encodings, parse_grid, parse_list};
use crate::output::{Cell, Table};

pub struct Dataset {
    pub table: Table,
    pub warnings: Vec<String>,
    pub seed: Option<u64>,
}

impl Dataset {
    fn plain(table: Table) -> Self {
        Dataset { table, warnings: Vec::new(), seed: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    XyPair,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeedbackKind {
    Classical,
    Quantum,
}

impl From<FeedbackKind> for Feedback {
    fn from(f: FeedbackKind) -> Self {
        match f {
            FeedbackKind::Classical => Feedback::Classical,
            FeedbackKind::Quantum => Feedback::Quantum,
        }
    }
}

fn feedback_name(f: FeedbackKind) -> &'static str {
    match f {
        FeedbackKind::Classical => "classical",
        FeedbackKind::Quantum => "quantum",
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ChainArgs {
    /// Chain model.
    #[arg(long, value_enum, default_value = "heisenberg")]
    pub chain: ChainKind,
    /// Number of spins (ignored for xy-pair).
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Coupling J.
    #[arg(long, default_value_t = 0.25)]
    pub j: f64,
    /// Anisotropy Δ (xy-pair only).
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
}

impl ChainArgs {
    fn spec(&self) -> Result<ChainSpec, CliError> {
        Ok(match self.chain {
            ChainKind::XyPair => ChainSpec::xyz_pair(self.j, self.delta)?,
            ChainKind::Heisenberg => ChainSpec::heisenberg(self.n, self.j)?,
        })
    }

    fn table(&self) -> Result<AmplitudeTable, CliError> {
        Ok(diagonalize(&self.spec()?)?)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PairArgs {
    /// Coupling J of the two-spin channel.
    #[arg(long, default_value_t = 0.25)]
    pub j: f64,
    /// Anisotropy Δ of the two-spin channel.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
}

impl PairArgs {
    fn table(&self) -> Result<AmplitudeTable, CliError> {
        Ok(diagonalize(&ChainSpec::xyz_pair(self.j, self.delta)?)?)
    }
}

fn positive_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let grid = parse_grid(text)?;
    if grid.iter().any(|&t| t <= 0.0) {
        return Err(CliError::Usage(format!("tau grid `{text}` must be strictly positive")));
    }
    Ok(grid)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AmplitudesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    /// Time grid start:stop:step.
    #[arg(long, default_value = "0:20:0.01")]
    pub t: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn amplitudes(args: &AmplitudesArgs) -> Result<Dataset, CliError> {
    let table = args.chain.table()?;
    let grid = parse_grid(&args.t)?;
    if grid.iter().any(|t| *t < 0.0) {
        return Err(CliError::Usage("time grid must be nonnegative".into()));
    }
    let mut out = Table::new(["t", "g1N_abs2", "gNN_abs2"]);
    for t in grid {
        out.push(vec![t.into(), table.end_to_end(t).norm_sqr().into(), table.receiver_return(t).norm_sqr().into()]);
    }
    Ok(Dataset::plain(out))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Fig2Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub pair: PairArgs,
    /// Swap interval grid start:stop:step.
    #[arg(long, default_value = "0.01:6:0.01")]
    pub tau: String,
    /// Numbers of extra receiver swaps, one plain-scheme curve each.
    #[arg(long = "n-swaps", default_value = "0,1,2,3")]
    pub n_swaps: String,
    /// Omit the two-spin (one qubit in two spins) encoding curve.
    #[arg(long)]
    pub no_two_spin: bool,
    /// Omit the entanglement-assisted reference curve.
    #[arg(long)]
    pub no_assisted: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn fig2(args: &Fig2Args) -> Result<Dataset, CliError> {
    let table = args.pair.table()?;
    let grid = positive_grid(&args.tau)?;
    let swaps: Vec<u32> = parse_list(&args.n_swaps, "swap count")?;
    let mut columns = vec!["tau".to_string()];
    columns.extend(swaps.iter().map(|n| format!("plain_n{n}")));
    if !args.no_two_spin {
        columns.push("two_spin".into());
    }
    if !args.no_assisted {
        columns.push("assisted".into());
    }
    let rows = grid
        .par_iter()
        .map(|&tau| -> Result<Vec<Cell>, CliError> {
            let mut row = vec![Cell::Num(tau)];
            for &n in &swaps {
                row.push(plain_rate(&table, tau, n)?.into());
            }
            if !args.no_two_spin {
                row.push(multi_excitation_rate(&table, tau, 1, 2)?.rate.into());
            }
            if !args.no_assisted {
                row.push(entanglement_assisted_rate(&table, tau)?.into());
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset::plain(Table { columns, rows }))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Fig3Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "0.01:6:0.01")]
    pub tau: String,
    /// Encodings E:M (E excitations in M spins).
    #[arg(long, default_value = "1:2,2:3,3:4")]
    pub encoding: String,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn fig3(args: &Fig3Args) -> Result<Dataset, CliError> {
    let table = args.pair.table()?;
    let grid = positive_grid(&args.tau)?;
    let encodings = parse_encodings(&args.encoding)?;
    let mut columns = vec!["tau".to_string(), "standard".to_string()];
    columns.extend(encodings.iter().map(|(e, m)| format!("enc_{e}_{m}")));
    let rows = grid
        .par_iter()
        .map(|&tau| -> Result<Vec<Cell>, CliError> {
            let mut row = vec![Cell::Num(tau), plain_rate(&table, tau, 0)?.into()];
            for &(e, m) in &encodings {
                row.push(multi_excitation_rate(&table, tau, e, m)?.rate.into());
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset::plain(Table { columns, rows }))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Fig4Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value = "1:20:0.05")]
    pub tau: String,
    /// Series truncation.
    #[arg(long, default_value_t = 100_000)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value = "classical")]
    pub feedback: FeedbackKind,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn fig4(args: &Fig4Args) -> Result<Dataset, CliError> {
    let table = args.chain.table()?;
    let grid = positive_grid(&args.tau)?;
    if args.kmax == 0 {
        return Err(CliError::Usage("--kmax must be positive".into()));
    }
    let feedback = Feedback::from(args.feedback);
    let rows = grid
        .par_iter()
        .map(|&tau| -> Result<(Vec<Cell>, bool), CliError> {
            let dist = dual_rail_success_distribution(&table, tau, args.kmax)?;
            let mass = dist.captured_mass();
            let rate = match dual_rail_rate(&table, tau, args.kmax, feedback) {
                Ok(r) => Some(r.rate),
                Err(chainrate::Error::Unconverged { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            Ok((vec![Cell::Num(tau), rate.into(), Cell::Num(mass)], rate.is_none()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unconverged = rows.iter().filter(|r| r.1).count();
    let mut warnings = Vec::new();
    if unconverged > 0 {
        warnings.push(format!("unconverged points: {unconverged} (captured mass < {MASS_GATE})"));
    }
    Ok(Dataset {
        table: Table {
            columns: vec!["tau".into(), "rate".into(), "captured_mass".into()],
            rows: rows.into_iter().map(|r| r.0).collect(),
        },
        warnings,
        seed: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceProtocol {
    DualRail,
    MultiExcitation,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Fig5Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    #[arg(long, value_enum, default_value = "dual-rail")]
    pub protocol: TraceProtocol,
    /// Measurement / swap interval.
    #[arg(long, default_value_t = 8.5)]
    pub tau: f64,
    /// Feedback modes for the dual-rail protocol.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "classical,quantum")]
    pub feedback: Vec<FeedbackKind>,
    /// Encodings E:M for the multi-excitation protocol (two-spin channel).
    #[arg(long, default_value = "1:2,2:3,3:4")]
    pub encoding: String,
    #[arg(long, default_value_t = 100_000)]
    pub kmax: usize,
    /// Simulated time in units of tau.
    #[arg(long, default_value_t = 10_000.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn fig5(args: &Fig5Args) -> Result<Dataset, CliError> {
    if !(args.duration > 0.0) {
        return Err(CliError::Usage("--duration must be positive".into()));
    }
    let duration = args.duration * args.tau;
    let mut out = Table::new(["series", "t_over_tau", "rate_instantaneous", "rate_analytic"]);
    let mut push_trace = |name: String, trace: chainrate::simulator::McTrace, analytic: f64| {
        for (t, r) in trace.instantaneous_rates() {
            out.push(vec![Cell::Text(name.clone()), Cell::Num(t / args.tau), Cell::Num(r), Cell::Num(analytic)]);
        }
    };
    match args.protocol {
        TraceProtocol::DualRail => {
            let table = args.chain.table()?;
            for &mode in &args.feedback {
                let analytic = dual_rail_rate(&table, args.tau, args.kmax, mode.into())?.rate;
                let trace = simulate_dual_rail(&table, args.tau, args.kmax, mode.into(), duration, args.seed)?;
                push_trace(feedback_name(mode).to_string(), trace, analytic);
            }
        }
        TraceProtocol::MultiExcitation => {
            let table = ChainArgs { chain: ChainKind::XyPair, ..args.chain.clone() }.table()?;
            for (e, m) in parse_encodings(&args.encoding)? {
                let analytic = multi_excitation_rate(&table, args.tau, e, m)?.rate;
                let trace = simulate_multi_excitation(&table, args.tau, e, m, duration, args.seed)?;
                push_trace(format!("enc_{e}_{m}"), trace, analytic);
            }
        }
    }
    Ok(Dataset { table: out, warnings: Vec::new(), seed: Some(args.seed) })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Fig6Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value = "1:40:0.1")]
    pub tau: String,
    /// Tilt half-widths.
    #[arg(long, default_value = "0,0.01,0.02,0.04")]
    pub epsilon: String,
    #[arg(long, default_value_t = 5000)]
    pub kmax: usize,
    /// Random schedules averaged per point.
    #[arg(long, default_value_t = 16)]
    pub realizations: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn fig6(args: &Fig6Args) -> Result<Dataset, CliError> {
    let table = args.chain.table()?;
    let grid = positive_grid(&args.tau)?;
    let epsilons: Vec<f64> = parse_list(&args.epsilon, "epsilon")?;
    if epsilons.iter().any(|&e| !(e >= 0.0)) {
        return Err(CliError::Usage("tilt half-widths must be nonnegative".into()));
    }
    if args.realizations == 0 || args.kmax == 0 {
        return Err(CliError::Usage("--realizations and --kmax must be positive".into()));
    }
    let mut columns = vec!["tau".to_string()];
    for e in &epsilons {
        columns.extend([format!("rate_eps{e}"), format!("stderr_eps{e}"), format!("failed_eps{e}")]);
    }
    let rows = grid
        .par_iter()
        .map(|&tau| -> Result<(Vec<Cell>, usize), CliError> {
            let mut row = vec![Cell::Num(tau)];
            let mut missing = 0;
            for &eps in &epsilons {
                if eps >= tau {
                    row.extend([Cell::Missing, Cell::Missing, Cell::Missing]);
                    missing += 1;
                    continue;
                }
                match dual_rail_tilted_rate(&table, tau, eps, args.kmax, args.realizations, args.seed) {
                    Ok(r) => row.extend([
                        Cell::Num(r.mean),
                        Cell::Num(r.std_error),
                        Cell::Num(r.failures.len() as f64),
                    ]),
                    Err(chainrate::Error::Unconverged { .. }) => {
                        let failed = if eps == 0.0 { 1 } else { args.realizations };
                        row.extend([Cell::Missing, Cell::Missing, Cell::Num(failed as f64)]);
                        missing += 1;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok((row, missing))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unconverged: usize = rows.iter().map(|r| r.1).sum();
    let mut warnings = Vec::new();
    if unconverged > 0 {
        warnings.push(format!("unconverged points: {unconverged} (captured mass < {MASS_GATE})"));
    }
    Ok(Dataset { table: Table { columns, rows: rows.into_iter().map(|r| r.0).collect() }, warnings, seed: Some(args.seed) })
}
