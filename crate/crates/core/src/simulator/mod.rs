//! Monte Carlo protocol traces and independent reference simulations.

mod hilbert;
mod monte_carlo;
mod statevector;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocols::ProtocolConfig;

pub use hilbert::{
    amplitude_full_space_oracle, damping_product, full_hilbert_plain_oracle, full_space_hamiltonian, FullSpaceOracle,
    PlainOracleOutcome, MAX_FULL_SPACE_SPINS, MAX_PLAIN_ROUNDS,
};
pub use monte_carlo::{simulate_dual_rail, simulate_multi_excitation};
pub use statevector::dual_rail_statevector_oracle;

/// Record of a stochastic protocol run: completion times of delivered blocks
/// and the cumulative number of qubits delivered by then.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McTrace {
    pub event_times: Vec<f64>,
    pub qubits_delivered: Vec<f64>,
    pub seed: u64,
    pub config: ProtocolConfig,
    pub duration: f64,
    /// Probability mass discarded by truncating the arrival series (0 for
    /// protocols without truncation).
    pub tail_mass: f64,
}

impl McTrace {
    /// Qubits delivered up to and including time `t`.
    pub fn delivered_by(&self, t: f64) -> f64 {
        let idx = self.event_times.partition_point(|&e| e <= t);
        if idx == 0 {
            0.0
        } else {
            self.qubits_delivered[idx - 1]
        }
    }

    /// Instantaneous rate `M(t) / t`.
    pub fn rate_at(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.delivered_by(t) / t
    }

    /// `M(duration) / duration`.
    pub fn final_rate(&self) -> f64 {
        self.rate_at(self.duration)
    }

    /// `(t, M(t)/t)` at every delivery event.
    pub fn instantaneous_rates(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.event_times.iter().zip(&self.qubits_delivered).map(|(&t, &m)| (t, m / t))
    }
}

/// Message qubit `α|0⟩ + β|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MessageQubit {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl MessageQubit {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Argument(format!("message qubit is not normalized: |α|² + |β|² = {norm}")));
        }
        Ok(MessageQubit { alpha, beta })
    }

    pub fn zero() -> Self {
        MessageQubit { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    pub fn one() -> Self {
        MessageQubit { alpha: Complex64::new(0.0, 0.0), beta: Complex64::new(1.0, 0.0) }
    }

    /// Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        use rand_distr::{Distribution, StandardNormal};
        let mut draw = || -> f64 { StandardNormal.sample(rng) };
        let v = [draw(), draw(), draw(), draw()];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        MessageQubit {
            alpha: Complex64::new(v[0] / norm, v[1] / norm),
            beta: Complex64::new(v[2] / norm, v[3] / norm),
        }
    }

    pub fn density(&self) -> [[Complex64; 2]; 2] {
        let (a, b) = (self.alpha, self.beta);
        [[a * a.conj(), a * b.conj()], [b * a.conj(), b * b.conj()]]
    }
}
