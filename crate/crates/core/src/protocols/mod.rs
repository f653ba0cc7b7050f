//! Asymptotic transmission rates of the communication protocols.

mod dual_rail;
mod multi;
mod plain;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{AmplitudeTable, ChainSpec};
use crate::error::{Error, Result};

pub use dual_rail::{
    dual_rail_rate, dual_rail_success_distribution, dual_rail_tilted_rate, probabilities_from_conditionals,
    success_distribution_at_times, tilted_increments, DualRailRate, SuccessDistribution, TiltedRate, MASS_GATE,
};
pub use multi::{expected_block_times, log2_binomial, multi_excitation_rate, BlockRate};
pub use plain::{entanglement_assisted_rate, plain_rate, plain_rate_with_rounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Protocol {
    Plain,
    MultiExcitation,
    DualRail,
}

/// How the receiver's "got it" signal reaches the sender in the dual-rail
/// protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feedback {
    /// Ideal instantaneous classical side line.
    Classical,
    /// A third spin chain identical to the forward pair.
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub protocol: Protocol,
    pub tau: f64,
    pub n_extra_swaps: u32,
    pub excitations: usize,
    pub code_spins: usize,
    pub k_max: usize,
    pub feedback: Feedback,
    pub epsilon: f64,
    pub realizations: usize,
}

impl ProtocolConfig {
    pub fn plain(tau: f64, n_extra_swaps: u32) -> Self {
        ProtocolConfig { protocol: Protocol::Plain, n_extra_swaps, ..Self::base(tau) }
    }

    pub fn multi_excitation(tau: f64, excitations: usize, code_spins: usize) -> Self {
        ProtocolConfig { protocol: Protocol::MultiExcitation, excitations, code_spins, ..Self::base(tau) }
    }

    pub fn dual_rail(tau: f64, k_max: usize, feedback: Feedback) -> Self {
        ProtocolConfig { protocol: Protocol::DualRail, k_max, feedback, ..Self::base(tau) }
    }

    pub fn with_tilt(mut self, epsilon: f64, realizations: usize) -> Self {
        self.epsilon = epsilon;
        self.realizations = realizations;
        self
    }

    fn base(tau: f64) -> Self {
        ProtocolConfig {
            protocol: Protocol::Plain,
            tau,
            n_extra_swaps: 0,
            excitations: 1,
            code_spins: 2,
            k_max: 100_000,
            feedback: Feedback::Classical,
            epsilon: 0.0,
            realizations: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_tau(self.tau)?;
        match self.protocol {
            Protocol::Plain => {}
            Protocol::MultiExcitation => check_encoding(self.excitations, self.code_spins)?,
            Protocol::DualRail => {
                if self.k_max == 0 {
                    return Err(Error::Config("k_max must be positive".into()));
                }
                if !(self.epsilon >= 0.0 && self.epsilon < self.tau) {
                    return Err(Error::Config(format!(
                        "tilt half-width must satisfy 0 <= epsilon < tau, got epsilon = {}, tau = {}",
                        self.epsilon, self.tau
                    )));
                }
                if self.realizations == 0 {
                    return Err(Error::Config("realizations must be positive".into()));
                }
            }
        }
        Ok(())
    }

    /// Asymptotic rate of this configuration on `table`.
    pub fn rate(&self, table: &AmplitudeTable) -> Result<f64> {
        self.validate()?;
        match self.protocol {
            Protocol::Plain => plain_rate(table, self.tau, self.n_extra_swaps),
            Protocol::MultiExcitation => {
                Ok(multi_excitation_rate(table, self.tau, self.excitations, self.code_spins)?.rate)
            }
            Protocol::DualRail if self.epsilon > 0.0 => {
                let tilted = dual_rail_tilted_rate(table, self.tau, self.epsilon, self.k_max, self.realizations, 0)?;
                let rate = tilted.mean;
                Ok(match self.feedback {
                    Feedback::Classical => rate,
                    Feedback::Quantum => rate / 2.0,
                })
            }
            Protocol::DualRail => Ok(dual_rail_rate(table, self.tau, self.k_max, self.feedback)?.rate),
        }
    }
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Argument(format!("tau must be positive and finite, got {tau}")));
    }
    Ok(())
}

pub(crate) fn check_encoding(excitations: usize, code_spins: usize) -> Result<()> {
    if excitations == 0 || excitations + 1 > code_spins {
        return Err(Error::Config(format!(
            "encoding needs 1 <= E <= M - 1, got E = {excitations}, M = {code_spins}"
        )));
    }
    Ok(())
}

/// Rates sampled over a grid of swap/measurement intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateCurve {
    pub tau_grid: Vec<f64>,
    /// `None` where the dual-rail series did not converge.
    pub rates: Vec<Option<f64>>,
    pub config: ProtocolConfig,
    pub chain: ChainSpec,
}

impl RateCurve {
    /// Evaluates `config` at every `τ` in `tau_grid`; `config.tau` is ignored.
    ///
    /// Points whose dual-rail series fails the mass gate become `None`; any
    /// other error aborts the sweep.
    pub fn sweep(table: &AmplitudeTable, config: ProtocolConfig, tau_grid: &[f64]) -> Result<Self> {
        let rates = tau_grid
            .par_iter()
            .map(|&tau| match (ProtocolConfig { tau, ..config }).rate(table) {
                Ok(r) => Ok(Some(r)),
                Err(Error::Unconverged { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RateCurve { tau_grid: tau_grid.to_vec(), rates, config, chain: *table.spec() })
    }

    pub fn unconverged(&self) -> usize {
        self.rates.iter().filter(|r| r.is_none()).count()
    }
}
