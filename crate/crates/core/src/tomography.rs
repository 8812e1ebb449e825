//! Spin tomograms: joint probabilities of spin-projection outcomes.
//!
//! For directions `n_1..n_k` and outcomes `m_1..m_k ∈ {+1/2, -1/2}` the
//! tomogram is `Tr(ρ · Π(m_1, n_1) ⊗ … ⊗ Π(m_k, n_k))` with
//! `Π(m, n) = (I + 2m n·σ) / 2`. Equivalently it is the diagonal of
//! `U† ρ U` for `U = u_1 ⊗ … ⊗ u_k`, `u_j σ_z u_j† = n_j·σ`. Both routes are
//! implemented: [`tomogram`] uses projectors, [`tomogram_vector`] rotations.

use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{rotation_from_direction, tensor_all, Direction, Operator, C64};
use crate::states::DensityMatrix;
use crate::{Error, Result, NORM_TOL};

/// Spin projection of one qubit along its measurement axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// `+1/2` or `-1/2`.
    pub fn m(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> f64 {
        2.0 * self.m()
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Up => '+',
            Spin::Down => '-',
        }
    }
}

/// One joint outcome; entry `k` belongs to qubit `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome(pub Vec<Spin>);

impl Outcome {
    /// Outcome at position `index` of the canonical ordering (`+` before `-`,
    /// qubit 0 slowest): bit `n-1-k` of `index` set means qubit `k` is down.
    pub fn from_index(index: usize, n_qubits: usize) -> Self {
        Outcome(
            (0..n_qubits)
                .map(|k| if index >> (n_qubits - 1 - k) & 1 == 1 { Spin::Down } else { Spin::Up })
                .collect(),
        )
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, s| (acc << 1) | usize::from(*s == Spin::Down))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a string of `+`/`-` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Some(Spin::Up),
                '-' => Some(Spin::Down),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .map(Outcome)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// Rank-1 projector `(I + 2m n·σ) / 2` onto spin `m` along `n`.
pub fn projector(m: Spin, n: &Direction) -> Operator {
    let half = C64::new(0.5, 0.0);
    let h = 0.5 * m.sign();
    let data = alloc::vec![
        half + h * n.z(),
        C64::new(h * n.x(), -h * n.y()),
        C64::new(h * n.x(), h * n.y()),
        half - h * n.z(),
    ];
    Operator::from_entries(2, data).expect("2x2 projector")
}

fn check_arity(rho: &DensityMatrix, count: usize) -> Result<()> {
    if rho.n_qubits() != count {
        return Err(Error::DimensionMismatch { expected: rho.n_qubits(), found: count });
    }
    Ok(())
}

/// `Tr(ρ ⊗_k Π(m_k, n_k))` without clamping.
pub fn tomogram_raw(rho: &DensityMatrix, dirs: &[Direction], m: &Outcome) -> Result<f64> {
    check_arity(rho, dirs.len())?;
    check_arity(rho, m.len())?;
    let projectors: Vec<Operator> = m.0.iter().zip(dirs).map(|(s, n)| projector(*s, n)).collect();
    Ok(rho.op().trace_product(&tensor_all(&projectors)).re)
}

/// Probability of outcome `m` along `dirs`, clamped into `[0, 1]`.
pub fn tomogram(rho: &DensityMatrix, dirs: &[Direction], m: &Outcome) -> Result<f64> {
    Ok(tomogram_raw(rho, dirs, m)?.clamp(0.0, 1.0))
}

/// Tomogram over every joint outcome for a fixed tuple of directions.
#[derive(Clone, Debug, PartialEq)]
pub struct TomogramVector {
    directions: Vec<Direction>,
    probs: Vec<f64>,
}

impl TomogramVector {
    /// Label describing the entry order of [`TomogramVector::probs`].
    pub const OUTCOME_ORDER: &'static str = "lexicographic, + before -, qubit A slowest";

    /// Wraps externally produced probabilities after checking normalization.
    pub fn new(directions: Vec<Direction>, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << directions.len() {
            return Err(Error::DimensionMismatch { expected: 1 << directions.len(), found: probs.len() });
        }
        check_distribution(&probs)?;
        Ok(Self { directions, probs })
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    /// Probabilities in canonical outcome order (unclamped).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn n_qubits(&self) -> usize {
        self.directions.len()
    }

    pub fn get(&self, m: &Outcome) -> f64 {
        self.probs[m.index()]
    }

    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> + '_ {
        (0..self.probs.len()).map(|i| Outcome::from_index(i, self.n_qubits()))
    }

    /// Sums out every qubit not in `keep` (kept qubits stay in ascending order).
    pub fn marginal(&self, keep: &[usize]) -> Result<TomogramVector> {
        let n = self.n_qubits();
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&index) = kept.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange { index, n_qubits: n });
        }
        let mut probs = alloc::vec![0.0; 1 << kept.len()];
        for (i, p) in self.probs.iter().enumerate() {
            let j = kept.iter().fold(0, |acc, &q| (acc << 1) | (i >> (n - 1 - q) & 1));
            probs[j] += p;
        }
        Ok(TomogramVector { directions: kept.iter().map(|&q| self.directions[q]).collect(), probs })
    }
}

/// Diagonal of `U† ρ U` with `U = ⊗_k u(n_k)`.
pub fn tomogram_vector(rho: &DensityMatrix, dirs: &[Direction]) -> Result<TomogramVector> {
    check_arity(rho, dirs.len())?;
    let rotations: Vec<Operator> = dirs.iter().map(rotation_from_direction).collect();
    let u = tensor_all(&rotations);
    let rotated = &(&u.adjoint() * rho.op()) * &u;
    let probs = (0..rotated.dim()).map(|i| rotated.get(i, i).re).collect();
    Ok(TomogramVector { directions: dirs.to_vec(), probs })
}

/// `Σ_{i∈{x,y,z}} Π_k n_i^(k)` over the listed directions.
pub fn axis_product_sum(dirs: &[Direction]) -> f64 {
    let prod = |f: fn(&Direction) -> f64| dirs.iter().map(f).product::<f64>();
    prod(Direction::x) + prod(Direction::y) + prod(Direction::z)
}

/// Closed-form Smolin tomogram `1/16 + m_A m_B m_C m_D Σ_i n_i^A n_i^B n_i^C n_i^D`.
pub fn smolin_tomogram_closed(m: &[Spin; 4], dirs: &[Direction; 4]) -> f64 {
    let mprod: f64 = m.iter().map(|s| s.m()).product();
    1.0 / 16.0 + mprod * axis_product_sum(dirs)
}

/// Result of comparing marginalized tomograms with tomograms of reduced states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginalReport {
    pub max_deviation: f64,
    pub consistent: bool,
}

/// Sums the full tomogram over the discarded qubits and compares it with the
/// tomogram of `partial_trace(ρ, keep)` along the kept directions.
pub fn marginal_check(rho: &DensityMatrix, dirs: &[Direction], keep: &[usize]) -> Result<MarginalReport> {
    let full = tomogram_vector(rho, dirs)?;
    let summed = full.marginal(keep)?;
    let reduced = rho.reduced(keep)?;
    let direct = tomogram_vector(&reduced, summed.directions())?;
    let max_deviation = summed.probs.iter().zip(&direct.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(MarginalReport { max_deviation, consistent: max_deviation <= NORM_TOL })
}

/// Entries ≥ -1e-12 and sum within 1e-12 of one.
pub fn check_distribution(p: &[f64]) -> Result<()> {
    let sum: f64 = p.iter().sum();
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    if !(sum.is_finite() && (sum - 1.0).abs() <= NORM_TOL && min >= -NORM_TOL) {
        return Err(Error::InvalidDistribution { sum, min });
    }
    Ok(())
}
