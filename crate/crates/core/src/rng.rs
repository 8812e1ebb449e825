//! Seeded randomness for searches and property checks.
//!
//! Every random draw in the crate comes from ChaCha8 seeded with a `u64`,
//! so results are reproducible across platforms. Independent streams (one
//! per search restart) are selected with [`stream`].

use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{Direction, Operator, C64};
use crate::states::DensityMatrix;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for stream `index` under `seed`; streams never overlap.
pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller.
pub fn normal(rng: &mut Rng) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(TAU * u2)
}

/// Uniform on the unit sphere (Archimedes: `z` uniform in `[-1, 1]`).
pub fn random_direction(rng: &mut Rng) -> Direction {
    let z = 2.0 * uniform(rng) - 1.0;
    let phi = TAU * uniform(rng);
    let r = libm::sqrt((1.0 - z * z).max(0.0));
    Direction::normalized(r * libm::cos(phi), r * libm::sin(phi), z).expect("nonzero")
}

/// Operator with independent standard-normal real and imaginary parts.
pub fn random_operator(rng: &mut Rng, n_qubits: usize) -> Operator {
    let dim = 1usize << n_qubits;
    let data: Vec<C64> = (0..dim * dim).map(|_| C64::new(normal(rng), normal(rng))).collect();
    Operator::from_entries(dim, data).expect("power-of-two dimension")
}

/// Full-rank random mixed state `G G† / Tr(G G†)` (Ginibre ensemble).
pub fn random_density_matrix(rng: &mut Rng, n_qubits: usize) -> DensityMatrix {
    let g = random_operator(rng, n_qubits);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let mut rho = gg.scale(1.0 / tr);
    // exact Hermiticity: average with the adjoint
    rho = (&rho + &rho.adjoint()).scale(0.5);
    DensityMatrix::new(rho).expect("Ginibre state is a valid density matrix")
}

/// Random pure state on `n_qubits` as a density matrix.
pub fn random_pure_state(rng: &mut Rng, n_qubits: usize) -> DensityMatrix {
    let dim = 1usize << n_qubits;
    let mut psi: Vec<C64> = (0..dim).map(|_| C64::new(normal(rng), normal(rng))).collect();
    let norm = libm::sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
    psi.iter_mut().for_each(|z| *z /= norm);
    let rho = Operator::outer(&psi).expect("power-of-two dimension");
    DensityMatrix::new(rho).expect("pure state")
}

/// Random probability vector of length `k` (normalized exponentials).
pub fn random_distribution(rng: &mut Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| -libm::log(1.0 - uniform(rng))).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
