//! Binary entropy and the capacities of the qubit amplitude-damping channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transfer probability `η` of a single excitation, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ChannelEfficiency(f64);

impl ChannelEfficiency {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::Argument(format!("channel efficiency must lie in [0, 1], got {eta}")));
        }
        Ok(ChannelEfficiency(eta))
    }

    /// Clamps round-off excursions (e.g. `|γ|²` = 1 + 1e-16) into `[0, 1]`.
    pub fn saturating(eta: f64) -> Result<Self> {
        if eta.is_nan() {
            return Err(Error::Argument("channel efficiency is NaN".into()));
        }
        Ok(ChannelEfficiency(eta.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Argument(format!("binary entropy argument must lie in [0, 1], got {x}")));
    }
    Ok(h2(x))
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

#[inline]
fn h2(x: f64) -> f64 {
    -xlog2x(x) - xlog2x(1.0 - x)
}

const SCAN_POINTS: usize = 1024;
const GOLDEN_TOLERANCE: f64 = 1e-13;

/// Maximum of `f` over `[0, 1]`: coarse scan, then golden-section refinement
/// inside the bracket around the best scan point.
fn maximize_unit_interval(f: impl Fn(f64) -> f64) -> f64 {
    let step = 1.0 / (SCAN_POINTS - 1) as f64;
    let (best_idx, best_val) = (0..SCAN_POINTS)
        .map(|i| (i, f(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });

    let mut lo = best_idx.saturating_sub(1) as f64 * step;
    let mut hi = ((best_idx + 1).min(SCAN_POINTS - 1) as f64 * step).min(1.0);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOLERANCE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    best_val.max(f1).max(f2).max(f(0.5 * (lo + hi)))
}

/// Quantum capacity `Q(η)` of the amplitude-damping channel, qubits per use.
pub fn damping_capacity(eta: ChannelEfficiency) -> f64 {
    let eta = eta.value();
    if eta <= 0.5 {
        return 0.0;
    }
    let q = maximize_unit_interval(|p| h2(eta * p) - h2((1.0 - eta) * p));
    q.max(0.0)
}

/// Entanglement-assisted quantum capacity `Q_E(η)`.
pub fn entanglement_assisted_capacity(eta: ChannelEfficiency) -> f64 {
    let eta = eta.value();
    let q = 0.5 * maximize_unit_interval(|p| h2(p) + h2(eta * p) - h2((1.0 - eta) * p));
    q.max(0.0)
}

/// Effective efficiency when the receiver performs `n` extra swap rounds:
/// `1 - (1 - η)^(n+1)`.
pub fn eta_after_n_extra_swaps(eta: ChannelEfficiency, n: u32) -> ChannelEfficiency {
    let loss = (1.0 - eta.value()).powi(n as i32 + 1);
    ChannelEfficiency((1.0 - loss).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta(x: f64) -> ChannelEfficiency {
        ChannelEfficiency::new(x).unwrap()
    }

    #[test]
    fn entropy_endpoints_and_peak() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
    }

    #[test]
    fn entropy_quarter() {
        // 2 - (3/4) log2 3
        let expected = 0.811_278_124_459_132_9;
        assert!((binary_entropy(0.25).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn entropy_rejects_out_of_range() {
        assert!(binary_entropy(-1e-12).is_err());
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
        assert!(ChannelEfficiency::new(1.01).is_err());
    }

    #[test]
    fn capacity_anchors() {
        assert!((damping_capacity(eta(1.0)) - 1.0).abs() < 1e-10);
        assert_eq!(damping_capacity(eta(0.5)), 0.0);
        assert_eq!(damping_capacity(eta(0.3)), 0.0);
        assert!((entanglement_assisted_capacity(eta(1.0)) - 1.0).abs() < 1e-10);
        assert_eq!(entanglement_assisted_capacity(eta(0.0)), 0.0);
    }

    #[test]
    fn extra_swaps() {
        assert_eq!(eta_after_n_extra_swaps(eta(0.5), 1).value(), 0.75);
        assert_eq!(eta_after_n_extra_swaps(eta(0.37), 0).value(), 0.37);
        // η Σ_{k=0}^{3} (1-η)^k with η = 0.2
        let series: f64 = (0..4).map(|k| 0.8f64.powi(k) * 0.2).sum();
        assert!((eta_after_n_extra_swaps(eta(0.2), 3).value() - series).abs() < 1e-15);
        assert!((series - 0.5904).abs() < 1e-15);
    }
}
