use serde::{Deserialize, Serialize};

use crate::chain::AmplitudeTable;
use crate::error::Result;

use super::plain::{pair_efficiency, require_pair};
use super::{check_encoding, check_tau};

/// Rate of a block code placing `E` excitations in `M` memory spins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockRate {
    pub rate: f64,
    /// Expected time to deliver one block; `None` when the channel never
    /// transfers an excitation.
    pub block_time: Option<f64>,
    pub qubits_per_block: f64,
}

impl BlockRate {
    pub fn non_transferring(&self) -> bool {
        self.block_time.is_none()
    }
}

/// `log₂ C(M, E)`, the number of qubits carried by one block.
pub fn log2_binomial(code_spins: usize, excitations: usize) -> f64 {
    let mut c = 1.0f64;
    for i in 0..excitations {
        c = c * (code_spins - i) as f64 / (i + 1) as f64;
    }
    c.log2()
}

fn binomial(a: usize, b: usize) -> f64 {
    (0..b).fold(1.0, |c, i| c * (a - i) as f64 / (i + 1) as f64)
}

/// Expected completion times `T(0..=E)` when each round lasts `round_time` and
/// every outstanding excitation crosses independently with probability `p`.
///
/// `T(a) = round + Σ_b C(a,b) q^b p^(a-b) T(b)` with `b` the excitations
/// bounced back; the `b = a` term is solved for on the left.
pub fn expected_block_times(p: f64, round_time: f64, excitations: usize) -> Vec<f64> {
    let q = 1.0 - p;
    let mut times = vec![0.0; excitations + 1];
    for a in 1..=excitations {
        let retries: f64 = (1..a)
            .map(|b| binomial(a, b) * q.powi(b as i32) * p.powi((a - b) as i32) * times[b])
            .sum();
        times[a] = (round_time + retries) / (1.0 - q.powi(a as i32));
    }
    times
}

/// Multi-excitation encoding over the two-spin channel; a round is `M τ`.
pub fn multi_excitation_rate(
    table: &AmplitudeTable,
    tau: f64,
    excitations: usize,
    code_spins: usize,
) -> Result<BlockRate> {
    require_pair(table)?;
    check_tau(tau)?;
    check_encoding(excitations, code_spins)?;
    let p = pair_efficiency(table, tau)?.value();
    Ok(block_rate(p, tau, excitations, code_spins))
}

pub(crate) fn block_rate(p: f64, tau: f64, excitations: usize, code_spins: usize) -> BlockRate {
    let qubits_per_block = log2_binomial(code_spins, excitations);
    if p == 0.0 {
        return BlockRate { rate: 0.0, block_time: None, qubits_per_block };
    }
    let block_time = expected_block_times(p, code_spins as f64 * tau, excitations)[excitations];
    BlockRate { rate: qubits_per_block / block_time, block_time: Some(block_time), qubits_per_block }
}
