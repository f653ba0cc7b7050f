//! Brute-force simulations on the full `2^N`-dimensional Hilbert space.
//!
//! Qubit `q` of an `n`-qubit register is tensor factor `q`, i.e. bit
//! `n - 1 - q` of the basis index; bit value 1 is spin up.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::chain::{ChainModel, ChainSpec};
use crate::error::{Error, Result};

use super::MessageQubit;

pub const MAX_FULL_SPACE_SPINS: usize = 10;
pub const MAX_PLAIN_ROUNDS: usize = 5;
const MAX_REGISTER_QUBITS: usize = 16;

fn pauli_x() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

/// `iY`, real; `Y ⊗ Y = -(iY ⊗ iY)`.
fn pauli_iy() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

fn pauli_z() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// `op_a` on spin `a`, `op_b` on spin `a + 1`, identity elsewhere.
fn bond_operator(n_spins: usize, a: usize, op_a: &DMatrix<f64>, op_b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut acc = DMatrix::<f64>::identity(1, 1);
    for site in 0..n_spins {
        let factor = if site == a {
            op_a.clone()
        } else if site == a + 1 {
            op_b.clone()
        } else {
            DMatrix::identity(2, 2)
        };
        acc = acc.kronecker(&factor);
    }
    acc
}

/// Chain Hamiltonian on the full `2^N` space, assembled from Pauli products.
pub fn full_space_hamiltonian(spec: &ChainSpec) -> Result<DMatrix<f64>> {
    spec.validate()?;
    let n = spec.n_spins;
    if n > MAX_FULL_SPACE_SPINS {
        return Err(Error::Resource(format!(
            "full-space simulation limited to {MAX_FULL_SPACE_SPINS} spins, got {n}"
        )));
    }
    let (x, iy, z) = (pauli_x(), pauli_iy(), pauli_z());
    let dim = 1usize << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for a in 0..n - 1 {
        let xx = bond_operator(n, a, &x, &x);
        let yy = -bond_operator(n, a, &iy, &iy);
        let zz = bond_operator(n, a, &z, &z);
        match spec.model {
            ChainModel::XyzPair => h += (xx + yy) * spec.j_coupling + zz * spec.delta,
            ChainModel::HeisenbergOpen => h -= (xx + yy + zz) * spec.j_coupling,
        }
    }
    Ok(h)
}

/// Dense eigendecomposition of the full chain Hamiltonian.
#[derive(Debug, Clone)]
pub struct FullSpaceOracle {
    n_spins: usize,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl FullSpaceOracle {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        let h = full_space_hamiltonian(spec)?;
        Ok(FullSpaceOracle { n_spins: spec.n_spins, eigen: SymmetricEigen::new(h) })
    }

    /// `exp(-iHt)` on the full space.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let v = &self.eigen.eigenvectors;
        let dim = v.nrows();
        let phases: Vec<Complex64> = self
            .eigen
            .eigenvalues
            .iter()
            .map(|&lambda| Complex64::new(0.0, -lambda * t).exp())
            .collect();
        let vc = v.map(|x| Complex64::new(x, 0.0));
        let scaled = DMatrix::from_fn(dim, dim, |r, c| vc[(r, c)] * phases[c]);
        scaled * vc.transpose()
    }

    fn site_state(&self, site: usize) -> usize {
        1 << (self.n_spins - 1 - site)
    }

    /// `γ_mn(t)` read off the full propagator between one-spin-up states.
    pub fn amplitudes(&self, t: f64) -> DMatrix<Complex64> {
        let u = self.propagator(t);
        let n = self.n_spins;
        DMatrix::from_fn(n, n, |m, k| u[(self.site_state(m), self.site_state(k))])
    }
}

/// `γ_mn(t)` for all site pairs from the exponentiated full Hamiltonian.
pub fn amplitude_full_space_oracle(spec: &ChainSpec, t: f64) -> Result<DMatrix<Complex64>> {
    Ok(FullSpaceOracle::new(spec)?.amplitudes(t))
}

struct Register {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Register {
    fn product(states: &[[Complex64; 2]]) -> Self {
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for s in states {
            amps = amps.iter().flat_map(|&a| [a * s[0], a * s[1]]).collect();
        }
        Register { n_qubits: states.len(), amps }
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    fn swap(&mut self, a: usize, b: usize) {
        let (ma, mb) = (self.bit(a), self.bit(b));
        for idx in 0..self.amps.len() {
            if idx & ma != 0 && idx & mb == 0 {
                self.amps.swap(idx, idx ^ ma ^ mb);
            }
        }
    }

    /// Applies a 4×4 gate with `a` as the more significant qubit.
    fn apply_two(&mut self, a: usize, b: usize, gate: &DMatrix<Complex64>) {
        let (ma, mb) = (self.bit(a), self.bit(b));
        for idx in 0..self.amps.len() {
            if idx & (ma | mb) != 0 {
                continue;
            }
            let slots = [idx, idx | mb, idx | ma, idx | ma | mb];
            let old: Vec<Complex64> = slots.iter().map(|&s| self.amps[s]).collect();
            for (r, &slot) in slots.iter().enumerate() {
                self.amps[slot] = (0..4).fold(Complex64::new(0.0, 0.0), |acc, c| acc + gate[(r, c)] * old[c]);
            }
        }
    }

    /// Reduced density matrix of `keep` (in the given order).
    fn reduced(&self, keep: &[usize]) -> DMatrix<Complex64> {
        let env: Vec<usize> = (0..self.n_qubits).filter(|q| !keep.contains(q)).collect();
        let mut block = DMatrix::<Complex64>::zeros(1 << keep.len(), 1 << env.len());
        for (idx, &amp) in self.amps.iter().enumerate() {
            let gather = |qs: &[usize]| {
                qs.iter().fold(0usize, |acc, &q| (acc << 1) | usize::from(idx & self.bit(q) != 0))
            };
            block[(gather(keep), gather(&env))] = amp;
        }
        &block * block.adjoint()
    }
}

/// Result of the full-register simulation of the plain swap scheme.
#[derive(Debug, Clone)]
pub struct PlainOracleOutcome {
    /// Bob's state, one logical qubit per message, after undoing the local
    /// phase (and, with extra swaps, folding each message's memories into a
    /// single qubit).
    pub rho_bob: DMatrix<Complex64>,
    /// Phase of the one-round transfer amplitude `γ₁₂(τ)`, undone on each qubit.
    pub local_phase: f64,
    /// Efficiency `|γ₁₂(τ)|²` seen by the simulation.
    pub eta: f64,
    /// Purity of the chain register right after each double swap.
    pub chain_purities: Vec<f64>,
    /// Weight of Bob's raw state outside the span used for the folding.
    pub leakage: f64,
}

/// Simulates the plain scheme on the full register `A ⊗ C ⊗ B` for a
/// two-spin chain, with `n_extra` additional receiver swaps per message.
///
/// Each message `k` runs: swap `A_k ↔ C₁`, then `n_extra + 1` times
/// (evolve for `τ`, swap `C₂ ↔ B_{k,r}`).
pub fn full_hilbert_plain_oracle(
    spec: &ChainSpec,
    messages: &[MessageQubit],
    tau: f64,
    n_extra: usize,
) -> Result<PlainOracleOutcome> {
    if spec.n_spins != 2 {
        return Err(Error::Config("plain-scheme oracle needs a two-spin chain".into()));
    }
    let m = messages.len();
    if m == 0 {
        return Err(Error::Argument("need at least one message qubit".into()));
    }
    let per_message = n_extra + 1;
    let n_qubits = m + 2 + m * per_message;
    if m > MAX_PLAIN_ROUNDS || n_qubits > MAX_REGISTER_QUBITS {
        return Err(Error::Resource(format!(
            "{m} messages with {n_extra} extra swaps need {n_qubits} qubits (limit {MAX_REGISTER_QUBITS}, at most {MAX_PLAIN_ROUNDS} messages)"
        )));
    }

    let oracle = FullSpaceOracle::new(spec)?;
    let u = oracle.propagator(tau);
    // single-excitation block of the 4×4 propagator: |10⟩ = 2, |01⟩ = 1
    let stay = u[(2, 2)];
    let cross = u[(1, 2)];

    let alice = |k: usize| k;
    let (c1, c2) = (m, m + 1);
    let bob = |k: usize, r: usize| m + 2 + k * per_message + r;

    let mut init = Vec::with_capacity(n_qubits);
    init.extend(messages.iter().map(|q| [q.alpha, q.beta]));
    init.extend(std::iter::repeat_n([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], n_qubits - m));
    let mut reg = Register::product(&init);

    let chain_purity = |reg: &Register| {
        let rho = reg.reduced(&[c1, c2]);
        (&rho * &rho).trace().re
    };

    let mut chain_purities = Vec::with_capacity(m);
    for k in 0..m {
        reg.swap(alice(k), c1);
        chain_purities.push(chain_purity(&reg));
        for r in 0..per_message {
            reg.apply_two(c1, c2, &u);
            reg.swap(c2, bob(k, r));
        }
    }

    let bob_qubits: Vec<usize> = (0..m).flat_map(|k| (0..per_message).map(move |r| bob(k, r))).collect();
    let raw = reg.reduced(&bob_qubits);

    // Fold each message's memories onto one qubit: |0…0⟩ → |0⟩ and the
    // normalized arrival pattern Σ_r stay^r cross |e_r⟩ → |1⟩.
    let pattern: Vec<Complex64> = (0..per_message).map(|r| stay.powu(r as u32) * cross).collect();
    let pattern_norm = pattern.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let group_dim = 1usize << per_message;
    let mut fold = DMatrix::<Complex64>::zeros(group_dim, 2);
    fold[(0, 0)] = Complex64::new(1.0, 0.0);
    for (r, a) in pattern.iter().enumerate() {
        fold[(1 << (per_message - 1 - r), 1)] = *a / pattern_norm;
    }
    let mut isometry = DMatrix::<Complex64>::identity(1, 1);
    for _ in 0..m {
        isometry = isometry.kronecker(&fold);
    }
    let rho_bob = isometry.adjoint() * &raw * &isometry;
    let leakage = (raw.trace() - rho_bob.trace()).re.abs();

    Ok(PlainOracleOutcome {
        rho_bob,
        local_phase: cross.arg(),
        eta: cross.norm_sqr(),
        chain_purities,
        leakage,
    })
}

/// `⊗_k D_η(|ψ_k⟩⟨ψ_k|)` for the amplitude-damping map with efficiency `η`.
pub fn damping_product(messages: &[MessageQubit], eta: f64) -> DMatrix<Complex64> {
    let keep = eta.sqrt();
    messages.iter().fold(DMatrix::<Complex64>::identity(1, 1), |acc, q| {
        let rho = q.density();
        let damped = DMatrix::from_row_slice(
            2,
            2,
            &[rho[0][0] + rho[1][1] * (1.0 - eta), rho[0][1] * keep, rho[1][0] * keep, rho[1][1] * eta],
        );
        acc.kronecker(&damped)
    })
}
