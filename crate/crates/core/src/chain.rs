//! Spin-chain Hamiltonians in the single-excitation sector and the transfer
//! amplitudes `γ_mn(t) = ⟨m| exp(-iHt) |n⟩` they generate (ħ = 1).
//!
//! Site indices are zero-based: site `0` is the sender's end of the chain and
//! site `n_spins - 1` the receiver's end.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag::eigh_tridiagonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainModel {
    /// Two spins, `J (XX + YY) + Δ ZZ`.
    XyzPair,
    /// Open ferromagnetic Heisenberg chain, `-J Σ σ_j · σ_{j+1}`.
    HeisenbergOpen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_spins: usize,
    pub model: ChainModel,
    pub j_coupling: f64,
    /// Anisotropy `Δ`; only read by [`ChainModel::XyzPair`].
    pub delta: f64,
}

impl ChainSpec {
    pub fn xyz_pair(j_coupling: f64, delta: f64) -> Result<Self> {
        let spec = ChainSpec { n_spins: 2, model: ChainModel::XyzPair, j_coupling, delta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn heisenberg(n_spins: usize, j_coupling: f64) -> Result<Self> {
        let spec = ChainSpec { n_spins, model: ChainModel::HeisenbergOpen, j_coupling, delta: 0.0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_spins < 2 {
            return Err(Error::Config(format!("chain needs at least 2 spins, got {}", self.n_spins)));
        }
        if self.model == ChainModel::XyzPair && self.n_spins != 2 {
            return Err(Error::Config(format!(
                "XYZ-pair model is defined for exactly 2 spins, got {}",
                self.n_spins
            )));
        }
        if self.j_coupling == 0.0 || !self.j_coupling.is_finite() {
            return Err(Error::Config(format!("coupling must be finite and nonzero, got {}", self.j_coupling)));
        }
        if !self.delta.is_finite() {
            return Err(Error::Config("anisotropy must be finite".into()));
        }
        Ok(())
    }

    pub fn last_site(&self) -> usize {
        self.n_spins - 1
    }
}

/// Nearest-neighbour Hamiltonian restricted to span{|0⟩ … |N-1⟩}.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalHamiltonian {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalHamiltonian {
    pub fn for_chain(spec: &ChainSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.n_spins;
        let j = spec.j_coupling;
        Ok(match spec.model {
            // XX + YY hops a flipped spin with amplitude 2; ZZ = -1 on |10⟩, |01⟩.
            ChainModel::XyzPair => TridiagonalHamiltonian {
                diag: vec![-spec.delta; 2],
                offdiag: vec![2.0 * j],
            },
            // Each of the N-1 bonds contributes -J (+1 aligned, -1 anti-aligned);
            // an excitation at an end breaks one bond, in the bulk two.
            ChainModel::HeisenbergOpen => {
                let bonds = (n - 1) as f64;
                let diag = (0..n)
                    .map(|site| {
                        let broken = if site == 0 || site == n - 1 { 1.0 } else { 2.0 };
                        -j * (bonds - 2.0 * broken)
                    })
                    .collect();
                TridiagonalHamiltonian { diag, offdiag: vec![-2.0 * j; n - 1] }
            }
        })
    }

    pub fn shifted(mut self, shift: f64) -> Self {
        self.diag.iter_mut().for_each(|d| *d += shift);
        self
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, k| {
            if i == k {
                self.diag[i]
            } else if k == i + 1 {
                self.offdiag[i]
            } else if i == k + 1 {
                self.offdiag[k]
            } else {
                0.0
            }
        })
    }
}

/// Single-excitation matrix `⟨m|H|n⟩` of the chain.
pub fn build_single_excitation_hamiltonian(spec: &ChainSpec) -> Result<DMatrix<f64>> {
    Ok(TridiagonalHamiltonian::for_chain(spec)?.to_dense())
}

/// Spectral decomposition of the single-excitation Hamiltonian.
///
/// Immutable once built; amplitudes can be evaluated at arbitrary real times
/// from any number of threads.
#[derive(Debug, Clone)]
pub struct AmplitudeTable {
    spec: ChainSpec,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

/// Diagonalizes the chain's single-excitation Hamiltonian.
pub fn diagonalize(spec: &ChainSpec) -> Result<AmplitudeTable> {
    AmplitudeTable::from_hamiltonian(spec, &TridiagonalHamiltonian::for_chain(spec)?)
}

impl AmplitudeTable {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        diagonalize(spec)
    }

    /// Table for the chain Hamiltonian plus `shift` times the identity.
    pub fn with_energy_shift(spec: &ChainSpec, shift: f64) -> Result<Self> {
        let h = TridiagonalHamiltonian::for_chain(spec)?.shifted(shift);
        Self::from_hamiltonian(spec, &h)
    }

    fn from_hamiltonian(spec: &ChainSpec, h: &TridiagonalHamiltonian) -> Result<Self> {
        let eig = eigh_tridiagonal(&h.diag, &h.offdiag)?;
        Ok(AmplitudeTable { spec: *spec, eigenvalues: eig.eigenvalues, eigenvectors: eig.eigenvectors })
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn n_sites(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn last_site(&self) -> usize {
        self.n_sites() - 1
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let lambda = DMatrix::from_diagonal(&DVector::from_column_slice(&self.eigenvalues));
        &self.eigenvectors * lambda * self.eigenvectors.transpose()
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n_sites() {
            return Err(Error::Argument(format!(
                "site index {site} out of range for a chain of {} spins",
                self.n_sites()
            )));
        }
        Ok(())
    }

    /// `γ_mn(t)`, the amplitude for an excitation at site `n` to be found at
    /// site `m` after time `t`.
    pub fn amplitude(&self, m: usize, n: usize, t: f64) -> Result<Complex64> {
        self.check_site(m)?;
        self.check_site(n)?;
        if !t.is_finite() {
            return Err(Error::Argument(format!("time must be finite, got {t}")));
        }
        Ok(self.amplitude_unchecked(m, n, t))
    }

    pub(crate) fn amplitude_unchecked(&self, m: usize, n: usize, t: f64) -> Complex64 {
        let v = &self.eigenvectors;
        self.eigenvalues
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &lambda)| {
                let (s, c) = (lambda * t).sin_cos();
                acc + Complex64::new(c, -s) * (v[(m, k)] * v[(n, k)])
            })
    }

    /// Amplitude from the sender's site to the receiver's site, `γ_1N(t)`.
    pub fn end_to_end(&self, t: f64) -> Complex64 {
        self.amplitude_unchecked(0, self.last_site(), t)
    }

    /// Return amplitude at the receiver's site, `γ_NN(t)`.
    pub fn receiver_return(&self, t: f64) -> Complex64 {
        let last = self.last_site();
        self.amplitude_unchecked(last, last, t)
    }

    /// Full single-excitation propagator `exp(-iHt)`.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.n_sites();
        let v = &self.eigenvectors;
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&lambda| {
                let (s, c) = (lambda * t).sin_cos();
                Complex64::new(c, -s)
            })
            .collect();
        DMatrix::from_fn(n, n, |m, k| {
            (0..n).fold(Complex64::new(0.0, 0.0), |acc, mode| acc + phases[mode] * (v[(m, mode)] * v[(k, mode)]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pair() -> AmplitudeTable {
        diagonalize(&ChainSpec::xyz_pair(0.25, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!(ChainSpec::heisenberg(1, 0.25), Err(Error::Config(_))));
        assert!(ChainSpec::heisenberg(4, 0.0).is_err());
        let bad = ChainSpec { n_spins: 3, model: ChainModel::XyzPair, j_coupling: 1.0, delta: 0.0 };
        assert!(matches!(build_single_excitation_hamiltonian(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn pair_hamiltonian_hopping_is_two_j() {
        let h = build_single_excitation_hamiltonian(&ChainSpec::xyz_pair(0.25, 0.0).unwrap()).unwrap();
        assert_eq!(h[(0, 1)].abs(), 0.5);
        assert_eq!(h[(0, 1)], h[(1, 0)]);
    }

    #[test]
    fn pair_eigenvalues_are_plus_minus_two_j() {
        let t = pair();
        assert!((t.eigenvalues()[0] + 0.5).abs() < 1e-15);
        assert!((t.eigenvalues()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn heisenberg_is_tridiagonal_and_symmetric() {
        let h = build_single_excitation_hamiltonian(&ChainSpec::heisenberg(6, 0.25).unwrap()).unwrap();
        for i in 0..6 {
            for k in 0..6 {
                assert_eq!(h[(i, k)], h[(k, i)]);
                if i.abs_diff(k) > 1 {
                    assert_eq!(h[(i, k)], 0.0);
                }
            }
        }
    }

    #[test]
    fn identity_at_time_zero() {
        let table = diagonalize(&ChainSpec::heisenberg(7, 0.25).unwrap()).unwrap();
        let u = table.propagator(0.0);
        for m in 0..7 {
            for n in 0..7 {
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((u[(m, n)] - Complex64::new(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn perfect_swap_at_pi() {
        let t = pair();
        assert!((t.end_to_end(PI).norm_sqr() - 1.0).abs() < 1e-15);
        let g11 = t.amplitude(0, 0, 1.3).unwrap().norm_sqr();
        let g12 = t.amplitude(0, 1, 1.3).unwrap().norm_sqr();
        assert!((g11 + g12 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_site_is_argument_error() {
        let t = pair();
        assert!(matches!(t.amplitude(2, 0, 1.0), Err(Error::Argument(_))));
        assert!(matches!(t.amplitude(0, 0, f64::NAN), Err(Error::Argument(_))));
    }

    #[test]
    fn heisenberg_n8_eigenvectors_orthogonal() {
        let table = diagonalize(&ChainSpec::heisenberg(8, 0.25).unwrap()).unwrap();
        let v = table.eigenvectors();
        assert!((v.transpose() * v - DMatrix::identity(8, 8)).amax() < 1e-12);
        let h = build_single_excitation_hamiltonian(table.spec()).unwrap();
        assert!((table.reconstruct() - h).amax() < 1e-12);
    }
}
