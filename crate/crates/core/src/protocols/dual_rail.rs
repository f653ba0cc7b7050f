//! Conclusive dual-rail transfer: the receiver measures the magnetization of
//! the last spin pair at a sequence of times until the excitation is found.
//!
//! With measurement times `t_1 < t_2 < …` the unnormalized arrival amplitudes
//! obey `c_k = γ_1N(t_k) - Σ_{j<k} γ_NN(t_k - t_j) c_j` and `P(k) = |c_k|²`.
//! Writing `γ_NN(t) = Σ_m V_Nm² exp(-iλ_m t)` turns the convolution into one
//! running sum per mode, `S_m(k+1) = exp(-iλ_m (t_{k+1} - t_k)) (S_m(k) + c_k)`,
//! so a series of length `k` costs `O(k N)` instead of `O(k²)`.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::AmplitudeTable;
use crate::error::{Error, Result};
use crate::rng::stream_rng;

use super::{check_tau, Feedback};

/// Minimum captured probability mass for a truncated series to be used.
pub const MASS_GATE: f64 = 0.999;

/// Largest tolerated excess of `Σ P(k)` over one before the table is
/// considered corrupt.
const INSTABILITY_SLACK: f64 = 1e-6;

/// Arrival statistics for a fixed measurement schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessDistribution {
    /// Measurement times `t_k`.
    pub times: Vec<f64>,
    /// Unnormalized arrival amplitudes `c_k`.
    pub amplitudes: Vec<Complex64>,
    /// `P(k) = |c_k|²`, probability of first success at measurement `k`.
    pub probabilities: Vec<f64>,
}

impl SuccessDistribution {
    pub fn captured_mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn partial_sums(&self) -> Vec<f64> {
        self.probabilities
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Conditional success probabilities `π_k = |c_k|² / Π_{j<k} (1 - π_j)`.
    pub fn conditional_probabilities(&self) -> Vec<f64> {
        let mut survival = 1.0;
        self.probabilities
            .iter()
            .map(|&p| {
                let pi = if survival > 0.0 { p / survival } else { 0.0 };
                survival *= 1.0 - pi;
                pi
            })
            .collect()
    }

    /// Mean arrival time of the truncated series, renormalized by its mass.
    pub fn mean_time(&self) -> f64 {
        let weighted: f64 = self.times.iter().zip(&self.probabilities).map(|(t, p)| t * p).sum();
        weighted / self.captured_mass()
    }
}

/// `P(k) = π_k Π_{j<k} (1 - π_j)`.
pub fn probabilities_from_conditionals(conditionals: &[f64]) -> Vec<f64> {
    let mut survival = 1.0;
    conditionals
        .iter()
        .map(|&pi| {
            let p = pi * survival;
            survival *= 1.0 - pi;
            p
        })
        .collect()
}

/// Runs the arrival recursion along the schedule built from `increments`
/// (`t_k = t_{k-1} + increments[k-1]`, `t_0 = 0`).
fn run_schedule(table: &AmplitudeTable, increments: impl IntoIterator<Item = f64>) -> Result<SuccessDistribution> {
    let n = table.n_sites();
    let last = n - 1;
    let v = table.eigenvectors();
    let lambdas = table.eigenvalues();
    let return_weights: Vec<f64> = (0..n).map(|m| v[(last, m)] * v[(last, m)]).collect();
    let transfer_weights: Vec<f64> = (0..n).map(|m| v[(0, m)] * v[(last, m)]).collect();

    let mut running = vec![Complex64::new(0.0, 0.0); n];
    let mut times = Vec::new();
    let mut amplitudes = Vec::new();
    let mut probabilities = Vec::new();
    let mut t = 0.0;
    let mut mass = 0.0;

    for (k, dt) in increments.into_iter().enumerate() {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Argument(format!("measurement times must be strictly increasing (step {k} has dt = {dt})")));
        }
        t += dt;
        let mut direct = Complex64::new(0.0, 0.0);
        let mut echo = Complex64::new(0.0, 0.0);
        for m in 0..n {
            let (s, c) = (lambdas[m] * dt).sin_cos();
            let step = Complex64::new(c, -s);
            if let Some(&prev) = amplitudes.last() {
                running[m] = step * (running[m] + prev);
            }
            echo += running[m] * return_weights[m];
            let (s, c) = (lambdas[m] * t).sin_cos();
            direct += Complex64::new(c, -s) * transfer_weights[m];
        }
        let ck = direct - echo;
        let pk = ck.norm_sqr();
        mass += pk;
        if mass > 1.0 + INSTABILITY_SLACK {
            return Err(Error::Instability { mass });
        }
        times.push(t);
        amplitudes.push(ck);
        probabilities.push(pk);
    }

    Ok(SuccessDistribution { times, amplitudes, probabilities })
}

/// Arrival distribution for measurements every `tau`, truncated at `k_max`.
pub fn dual_rail_success_distribution(table: &AmplitudeTable, tau: f64, k_max: usize) -> Result<SuccessDistribution> {
    check_tau(tau)?;
    if k_max == 0 {
        return Err(Error::Argument("k_max must be positive".into()));
    }
    run_schedule(table, std::iter::repeat_n(tau, k_max))
}

/// Arrival distribution for an arbitrary increasing schedule of measurement
/// times (all `> 0`).
pub fn success_distribution_at_times(table: &AmplitudeTable, times: &[f64]) -> Result<SuccessDistribution> {
    let increments = times.iter().scan(0.0, |prev, &t| {
        let dt = t - *prev;
        *prev = t;
        Some(dt)
    });
    run_schedule(table, increments.collect::<Vec<_>>())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualRailRate {
    /// Qubits per unit time.
    pub rate: f64,
    /// Mean forward transfer time `T`.
    pub mean_time: f64,
    pub captured_mass: f64,
    pub feedback: Feedback,
}

fn gated_mean_time(dist: &SuccessDistribution) -> Result<f64> {
    let mass = dist.captured_mass();
    if mass < MASS_GATE {
        return Err(Error::Unconverged { mass, k_max: dist.probabilities.len(), required: MASS_GATE });
    }
    Ok(dist.mean_time())
}

/// Asymptotic dual-rail rate `1/T` (classical feedback) or `1/(2T)` (quantum
/// feedback through a third chain).
pub fn dual_rail_rate(table: &AmplitudeTable, tau: f64, k_max: usize, feedback: Feedback) -> Result<DualRailRate> {
    let dist = dual_rail_success_distribution(table, tau, k_max)?;
    let mean_time = gated_mean_time(&dist)?;
    let rate = match feedback {
        Feedback::Classical => 1.0 / mean_time,
        Feedback::Quantum => 1.0 / (2.0 * mean_time),
    };
    Ok(DualRailRate { rate, mean_time, captured_mass: dist.captured_mass(), feedback })
}

/// Rate averaged over randomly jittered measurement intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TiltedRate {
    pub mean: f64,
    /// Standard error of `mean` over converged realizations (0 when fewer
    /// than two contribute).
    pub std_error: f64,
    pub converged: usize,
    /// `(realization index, captured mass)` for every realization that
    /// failed the mass gate.
    pub failures: Vec<(usize, f64)>,
}

/// Measurement increments `τ + δτ_i`, `δτ_i` uniform on `(-ε, ε)`, for one
/// realization.
pub fn tilted_increments(tau: f64, epsilon: f64, k_max: usize, seed: u64, realization: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, realization as u64);
    (0..k_max)
        .map(|_| if epsilon > 0.0 { tau + rng.random_range(-epsilon..epsilon) } else { tau })
        .collect()
}

/// Classical-feedback dual-rail rate with measurement intervals `τ + δτ`,
/// averaged over `realizations` independent schedules.
///
/// `ε = 0` returns exactly [`dual_rail_rate`]'s value.
pub fn dual_rail_tilted_rate(
    table: &AmplitudeTable,
    tau: f64,
    epsilon: f64,
    k_max: usize,
    realizations: usize,
    seed: u64,
) -> Result<TiltedRate> {
    check_tau(tau)?;
    if !(epsilon >= 0.0 && epsilon < tau) {
        return Err(Error::Argument(format!("tilt half-width must satisfy 0 <= epsilon < tau, got {epsilon}")));
    }
    if realizations == 0 {
        return Err(Error::Argument("realizations must be positive".into()));
    }
    if k_max == 0 {
        return Err(Error::Argument("k_max must be positive".into()));
    }
    if epsilon == 0.0 {
        let r = dual_rail_rate(table, tau, k_max, Feedback::Classical)?;
        return Ok(TiltedRate { mean: r.rate, std_error: 0.0, converged: 1, failures: Vec::new() });
    }

    let outcomes: Vec<Result<f64>> = (0..realizations)
        .into_par_iter()
        .map(|i| {
            let dist = run_schedule(table, tilted_increments(tau, epsilon, k_max, seed, i))?;
            Ok(1.0 / gated_mean_time(&dist)?)
        })
        .collect();

    let mut rates = Vec::with_capacity(realizations);
    let mut failures = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(r) => rates.push(r),
            Err(Error::Unconverged { mass, .. }) => failures.push((i, mass)),
            Err(e) => return Err(e),
        }
    }
    if rates.is_empty() {
        let mass = failures.iter().map(|f| f.1).fold(0.0, f64::max);
        return Err(Error::Unconverged { mass, k_max, required: MASS_GATE });
    }

    let n = rates.len() as f64;
    let mean = rates.iter().sum::<f64>() / n;
    let std_error = if rates.len() > 1 {
        let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(TiltedRate { mean, std_error, converged: rates.len(), failures })
}
