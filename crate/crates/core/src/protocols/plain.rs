use crate::capacity::{damping_capacity, entanglement_assisted_capacity, eta_after_n_extra_swaps, ChannelEfficiency};
use crate::chain::AmplitudeTable;
use crate::error::{Error, Result};

use super::check_tau;

pub(super) fn require_pair(table: &AmplitudeTable) -> Result<()> {
    if table.n_sites() != 2 {
        return Err(Error::Config(format!(
            "protocol is defined on a two-spin channel, got {} spins",
            table.n_sites()
        )));
    }
    Ok(())
}

pub(super) fn pair_efficiency(table: &AmplitudeTable, tau: f64) -> Result<ChannelEfficiency> {
    ChannelEfficiency::saturating(table.end_to_end(tau).norm_sqr())
}

/// Plain swap scheme with `n` extra receiver swaps per qubit. One channel use
/// costs `(n + 1) τ`.
pub fn plain_rate(table: &AmplitudeTable, tau: f64, n: u32) -> Result<f64> {
    plain_rate_with_rounds(table, tau, n, f64::from(n) + 1.0)
}

/// Plain scheme with an explicit number of `τ` intervals charged per use.
pub fn plain_rate_with_rounds(table: &AmplitudeTable, tau: f64, n: u32, rounds_per_use: f64) -> Result<f64> {
    require_pair(table)?;
    check_tau(tau)?;
    if !(rounds_per_use > 0.0) {
        return Err(Error::Argument(format!("rounds per use must be positive, got {rounds_per_use}")));
    }
    let eta = eta_after_n_extra_swaps(pair_efficiency(table, tau)?, n);
    Ok(damping_capacity(eta) / (rounds_per_use * tau))
}

/// Entanglement-assisted reference rate `Q_E(η) / τ`.
pub fn entanglement_assisted_rate(table: &AmplitudeTable, tau: f64) -> Result<f64> {
    require_pair(table)?;
    check_tau(tau)?;
    Ok(entanglement_assisted_capacity(pair_efficiency(table, tau)?) / tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{diagonalize, ChainSpec};
    use std::f64::consts::PI;

    fn pair() -> AmplitudeTable {
        diagonalize(&ChainSpec::xyz_pair(0.25, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn perfect_transfer_rate() {
        assert!((plain_rate(&pair(), PI, 0).unwrap() - 1.0 / PI).abs() < 1e-10);
        assert!((entanglement_assisted_rate(&pair(), PI).unwrap() - 1.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn zero_below_tau_zero() {
        let table = pair();
        for i in 1..=1000 {
            let tau = PI / 2.0 * i as f64 / 1000.0;
            assert_eq!(plain_rate(&table, tau, 0).unwrap(), 0.0);
        }
    }

    #[test]
    fn assisted_positive_where_plain_vanishes() {
        let table = pair();
        assert_eq!(plain_rate(&table, PI / 2.0, 0).unwrap(), 0.0);
        assert!(entanglement_assisted_rate(&table, PI / 2.0).unwrap() > 0.0);
        assert!(entanglement_assisted_rate(&table, 1e-6).unwrap() < 1e-3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(plain_rate(&pair(), 0.0, 0), Err(Error::Argument(_))));
        assert!(matches!(plain_rate(&pair(), -1.0, 0), Err(Error::Argument(_))));
        let long = diagonalize(&ChainSpec::heisenberg(4, 0.25).unwrap()).unwrap();
        assert!(matches!(plain_rate(&long, 1.0, 0), Err(Error::Config(_))));
    }

    #[test]
    fn rounds_knob() {
        let table = pair();
        let a = plain_rate(&table, 2.5, 2).unwrap();
        let b = plain_rate_with_rounds(&table, 2.5, 2, 2.0).unwrap();
        assert!((a * 3.0 - b * 2.0).abs() < 1e-15);
    }
}
