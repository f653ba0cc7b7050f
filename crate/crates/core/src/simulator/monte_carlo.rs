use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::chain::AmplitudeTable;
use crate::error::{Error, Result};
use crate::protocols::{
    check_encoding, check_tau, dual_rail_success_distribution, log2_binomial, Feedback, ProtocolConfig, MASS_GATE,
};
use crate::rng::stream_rng;

use super::McTrace;

fn check_duration(duration: f64) -> Result<()> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::Argument(format!("duration must be positive and finite, got {duration}")));
    }
    Ok(())
}

/// Multi-excitation block code over the two-spin channel. Every round lasts
/// `M τ`; each outstanding excitation crosses with probability `|γ₁₂(τ)|²`
/// and a block of `log₂ C(M, E)` qubits is credited once all `E` have crossed.
pub fn simulate_multi_excitation(
    table: &AmplitudeTable,
    tau: f64,
    excitations: usize,
    code_spins: usize,
    duration: f64,
    seed: u64,
) -> Result<McTrace> {
    if table.n_sites() != 2 {
        return Err(Error::Config("multi-excitation encoding runs on a two-spin channel".into()));
    }
    check_tau(tau)?;
    check_encoding(excitations, code_spins)?;
    check_duration(duration)?;
    let p = table.end_to_end(tau).norm_sqr().clamp(0.0, 1.0);
    if p == 0.0 {
        return Err(Error::Config(format!("channel does not transfer at tau = {tau}")));
    }
    let q = 1.0 - p;
    let round = code_spins as f64 * tau;
    let per_block = log2_binomial(code_spins, excitations);
    let mut rng = stream_rng(seed, 0);

    let mut trace = McTrace {
        event_times: Vec::new(),
        qubits_delivered: Vec::new(),
        seed,
        config: ProtocolConfig::multi_excitation(tau, excitations, code_spins),
        duration,
        tail_mass: 0.0,
    };
    let mut rounds: u64 = 0;
    let mut delivered = 0.0;
    'blocks: loop {
        let mut outstanding = excitations as u64;
        while outstanding > 0 {
            rounds += 1;
            if rounds as f64 * round > duration {
                break 'blocks;
            }
            outstanding = Binomial::new(outstanding, q)
                .map_err(|e| Error::Argument(e.to_string()))?
                .sample(&mut rng);
        }
        delivered += per_block;
        trace.event_times.push(rounds as f64 * round);
        trace.qubits_delivered.push(delivered);
    }
    Ok(trace)
}

/// Dual-rail protocol: each qubit's arrival index `k` is drawn from the
/// renormalized truncated distribution `P(1..k_max)`. Quantum feedback adds
/// an independent draw for the backward leg on the third chain.
pub fn simulate_dual_rail(
    table: &AmplitudeTable,
    tau: f64,
    k_max: usize,
    feedback: Feedback,
    duration: f64,
    seed: u64,
) -> Result<McTrace> {
    check_duration(duration)?;
    let dist = dual_rail_success_distribution(table, tau, k_max)?;
    let mass = dist.captured_mass();
    if mass < MASS_GATE {
        return Err(Error::Unconverged { mass, k_max, required: MASS_GATE });
    }
    let cdf = dist.partial_sums();
    let total = *cdf.last().expect("k_max > 0");
    let mut rng = stream_rng(seed, 0);
    let draw_time = |rng: &mut rand_chacha::ChaCha8Rng| {
        let target = rng.random::<f64>() * total;
        let k = cdf.partition_point(|&c| c <= target).min(cdf.len() - 1);
        dist.times[k]
    };

    let mut trace = McTrace {
        event_times: Vec::new(),
        qubits_delivered: Vec::new(),
        seed,
        config: ProtocolConfig::dual_rail(tau, k_max, feedback),
        duration,
        tail_mass: (1.0 - mass).max(0.0),
    };
    let mut t = 0.0;
    let mut delivered = 0.0;
    loop {
        let mut leg = draw_time(&mut rng);
        if feedback == Feedback::Quantum {
            leg += draw_time(&mut rng);
        }
        t += leg;
        if t > duration {
            break;
        }
        delivered += 1.0;
        trace.event_times.push(t);
        trace.qubits_delivered.push(delivered);
    }
    Ok(trace)
}
