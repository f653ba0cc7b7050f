//! Transfer amplitudes, channel capacities and asymptotic transmission rates
//! for quantum communication through unmodulated spin chains.
//!
//! * [`chain`] diagonalizes the single-excitation Hamiltonian and evaluates
//!   transfer amplitudes at arbitrary times.
//! * [`capacity`] holds the amplitude-damping channel capacities.
//! * [`protocols`] turns amplitudes into rates for the plain swap scheme,
//!   multi-excitation block codes and the conclusive dual-rail protocol.
//! * [`simulator`] provides seeded Monte Carlo traces and brute-force
//!   reference simulations used to cross-check the rest of the crate.

pub mod capacity;
pub mod chain;
pub mod error;
pub mod protocols;
pub mod rng;
pub mod simulator;
mod tridiag;

pub use capacity::{
    binary_entropy, damping_capacity, entanglement_assisted_capacity, eta_after_n_extra_swaps, ChannelEfficiency,
};
pub use chain::{build_single_excitation_hamiltonian, diagonalize, AmplitudeTable, ChainModel, ChainSpec};
pub use error::{Error, Result};
pub use protocols::{Feedback, Protocol, ProtocolConfig, RateCurve};
pub use tridiag::{eigh_tridiagonal, TridiagonalEigen};
