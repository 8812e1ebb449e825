//! Qubit portraits: column-stochastic 2×k compressions of outcome
//! distributions onto two bins.
//!
//! Bins are numbered 1 and 2. Bin 1 plays the role of "portrait spin up";
//! wherever a bin is passed as a [`Spin`], `Spin::Up` is bin 1.

use alloc::vec;
use alloc::vec::Vec;

use crate::tomography::{axis_product_sum, check_distribution, Spin, TomogramVector};
use crate::{Direction, Error, Result, NORM_TOL};

/// Nonnegative 2×k matrix whose columns each sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct PortraitMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl PortraitMatrix {
    /// Row-major `2 × k` entries. Matrices that are only approximately
    /// stochastic (beyond 1e-12) are rejected, not renormalized.
    pub fn new(k: usize, entries: Vec<f64>) -> Result<Self> {
        if k == 0 || entries.len() != 2 * k {
            return Err(Error::DimensionMismatch { expected: 2 * k, found: entries.len() });
        }
        for col in 0..k {
            let (a, b) = (entries[col], entries[k + col]);
            let sum = a + b;
            let min = a.min(b);
            if !(min >= 0.0 && (sum - 1.0).abs() <= NORM_TOL) {
                return Err(Error::InvalidPortrait { column: col, sum, min });
            }
        }
        Ok(Self { k, entries })
    }

    pub fn identity() -> Self {
        Self { k: 2, entries: vec![1.0, 0.0, 0.0, 1.0] }
    }

    /// Every entry 1/2: forgets the input entirely.
    pub fn uniform(k: usize) -> Self {
        Self { k, entries: vec![0.5; 2 * k] }
    }

    /// Parity portrait on `n_qubits` outcomes: bin 1 collects the outcomes
    /// whose spin product is positive (an even number of `-1/2`), bin 2 the rest.
    pub fn parity(n_qubits: usize) -> Self {
        let k = 1usize << n_qubits;
        let mut entries = vec![0.0; 2 * k];
        for col in 0..k {
            let row = (col.count_ones() % 2) as usize;
            entries[row * k + col] = 1.0;
        }
        Self { k, entries }
    }

    /// Number of source outcomes.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `π_{row, col}` with `row ∈ {0, 1}` for bins 1 and 2.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.k + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// `q_i = Σ_j π_ij p_j`.
pub fn apply_portrait(p: &[f64], pi: &PortraitMatrix) -> Result<[f64; 2]> {
    if p.len() != pi.k {
        return Err(Error::DimensionMismatch { expected: pi.k, found: p.len() });
    }
    check_distribution(p)?;
    let row = |r: usize| p.iter().enumerate().map(|(j, pj)| pi.get(r, j) * pj).sum();
    Ok([row(0), row(1)])
}

/// Joint two-bin distribution `w(i, j)` ordered `(1,1), (1,2), (2,1), (2,2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PortraitDistribution {
    probs: [f64; 4],
}

impl PortraitDistribution {
    pub fn new(probs: [f64; 4]) -> Result<Self> {
        check_distribution(&probs)?;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64; 4] {
        &self.probs
    }

    /// `w(i, j)` with bins given as spins (`Up` = bin 1).
    pub fn get(&self, i: Spin, j: Spin) -> f64 {
        let idx = 2 * usize::from(i == Spin::Down) + usize::from(j == Spin::Down);
        self.probs[idx]
    }

    /// `Σ s t w(s, t)` with bins mapped to `±1`.
    pub fn correlation(&self) -> f64 {
        self.probs[0] - self.probs[1] - self.probs[2] + self.probs[3]
    }
}

/// Applies `π_A ⊗ π_B` to a joint distribution indexed `(m_A, m_B)` with `m_A` slowest.
pub fn product_portrait(joint: &[f64], pi_a: &PortraitMatrix, pi_b: &PortraitMatrix) -> Result<PortraitDistribution> {
    let (ka, kb) = (pi_a.k, pi_b.k);
    if joint.len() != ka * kb {
        return Err(Error::DimensionMismatch { expected: ka * kb, found: joint.len() });
    }
    check_distribution(joint)?;
    let mut probs = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for ma in 0..ka {
                let wa = pi_a.get(i, ma);
                if wa == 0.0 {
                    continue;
                }
                let inner: f64 = (0..kb).map(|mb| pi_b.get(j, mb) * joint[ma * kb + mb]).sum();
                acc += wa * inner;
            }
            probs[2 * i + j] = acc;
        }
    }
    Ok(PortraitDistribution { probs })
}

/// Keeps qubit A's outcome and compresses B, C, D by the sign of
/// `m_B m_C m_D`: bin `p = +1` for `+++, +--, -+-, --+`, `p = -1` otherwise.
///
/// Output order: `(m_A=+, p=+), (m_A=+, p=-), (m_A=-, p=+), (m_A=-, p=-)`.
pub fn smolin_parity_portrait(t: &TomogramVector) -> Result<PortraitDistribution> {
    if t.probs().len() != 16 {
        return Err(Error::DimensionMismatch { expected: 16, found: t.probs().len() });
    }
    product_portrait(t.probs(), &PortraitMatrix::identity(), &PortraitMatrix::parity(3))
}

/// Closed form of the parity portrait of the Smolin tomogram:
/// `1/4 + m_A p (1/2) Σ_i n_i^A n_i^B n_i^C n_i^D`, with `p = ±1` given as `Up`/`Down`.
pub fn smolin_portrait_closed(m_a: Spin, p: Spin, dirs: &[Direction; 4]) -> f64 {
    0.25 + m_a.m() * p.sign() * 0.5 * axis_product_sum(dirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_direction, random_distribution, seeded, uniform};
    use crate::states::smolin_pauli;
    use crate::tomography::tomogram_vector;

    #[test]
    fn identity_portrait_is_a_no_op() {
        let q = apply_portrait(&[0.3, 0.7], &PortraitMatrix::identity()).unwrap();
        assert_eq!(q, [0.3, 0.7]);
    }

    #[test]
    fn uniform_portrait_forgets() {
        let mut rng = seeded(50);
        let p = random_distribution(&mut rng, 5);
        let q = apply_portrait(&p, &PortraitMatrix::uniform(5)).unwrap();
        assert!((q[0] - 0.5).abs() < 1e-15 && (q[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parity_portrait_on_uniform() {
        let pi = PortraitMatrix::parity(3);
        assert_eq!(pi.k(), 8);
        assert!(PortraitMatrix::new(8, pi.entries().to_vec()).is_ok());
        // bin 1 columns are +++, +--, -+-, --+
        let bin1: Vec<usize> = (0..8).filter(|&c| pi.get(0, c) == 1.0).collect();
        assert_eq!(bin1, [0, 3, 5, 6]);
        let q = apply_portrait(&[0.125; 8], &pi).unwrap();
        assert_eq!(q, [0.5, 0.5]);
    }

    #[test]
    fn validation_rejects_near_stochastic() {
        assert!(matches!(
            PortraitMatrix::new(2, vec![0.5, 0.5, 0.5, 0.5 + 1e-9]),
            Err(Error::InvalidPortrait { column: 1, .. })
        ));
        assert!(PortraitMatrix::new(2, vec![1.1, 0.0, -0.1, 1.0]).is_err());
        assert!(PortraitMatrix::new(2, vec![1.0, 0.0, 0.0]).is_err());
        assert!(apply_portrait(&[0.5, 0.5, 0.0], &PortraitMatrix::identity()).is_err());
        assert!(apply_portrait(&[0.6, 0.5], &PortraitMatrix::identity()).is_err());
    }

    #[test]
    fn product_portrait_factorizes() {
        let mut rng = seeded(51);
        for _ in 0..20 {
            let pa = random_distribution(&mut rng, 2);
            let pb = random_distribution(&mut rng, 8);
            let joint: Vec<f64> = pa.iter().flat_map(|a| pb.iter().map(move |b| a * b)).collect();
            let pi_a = random_portrait(&mut rng, 2);
            let pi_b = random_portrait(&mut rng, 8);
            let w = product_portrait(&joint, &pi_a, &pi_b).unwrap();
            let qa = apply_portrait(&pa, &pi_a).unwrap();
            let qb = apply_portrait(&pb, &pi_b).unwrap();
            for (i, x) in qa.iter().enumerate() {
                for (j, y) in qb.iter().enumerate() {
                    assert!((w.probs()[2 * i + j] - x * y).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn identity_product_portrait_is_a_no_op() {
        let joint = [0.1, 0.2, 0.3, 0.4];
        let w = product_portrait(&joint, &PortraitMatrix::identity(), &PortraitMatrix::identity()).unwrap();
        assert_eq!(w.probs(), &joint);
    }

    #[test]
    fn product_portrait_is_linear_on_mixtures() {
        let mut rng = seeded(52);
        let pi_a = random_portrait(&mut rng, 2);
        let pi_b = random_portrait(&mut rng, 4);
        let weights = random_distribution(&mut rng, 3);
        let mut joint = vec![0.0; 8];
        let mut expected = [0.0; 4];
        for w in &weights {
            let pa = random_distribution(&mut rng, 2);
            let pb = random_distribution(&mut rng, 4);
            let qa = apply_portrait(&pa, &pi_a).unwrap();
            let qb = apply_portrait(&pb, &pi_b).unwrap();
            for (idx, slot) in joint.iter_mut().enumerate() {
                *slot += w * pa[idx / 4] * pb[idx % 4];
            }
            for i in 0..2 {
                for j in 0..2 {
                    expected[2 * i + j] += w * qa[i] * qb[j];
                }
            }
        }
        let got = product_portrait(&joint, &pi_a, &pi_b).unwrap();
        for (g, e) in got.probs().iter().zip(expected) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn parity_portrait_of_smolin_tomograms() {
        let rho = smolin_pauli();
        let uniform_t = TomogramVector::new(vec![Direction::Z; 4], vec![1.0 / 16.0; 16]).unwrap();
        assert_eq!(smolin_parity_portrait(&uniform_t).unwrap().probs(), &[0.25; 4]);

        let t = tomogram_vector(&rho, &[Direction::X; 4]).unwrap();
        let w = smolin_parity_portrait(&t).unwrap();
        // explicit summation over the (m_B, m_C, m_D) parity classes
        let mut manual = [0.0; 4];
        for (i, p) in t.probs().iter().enumerate() {
            let a_down = i >> 3;
            let odd = (i & 7).count_ones() as usize % 2;
            manual[2 * a_down + odd] += p;
        }
        for (x, y) in w.probs().iter().zip(manual) {
            assert!((x - y).abs() < 1e-15);
        }
        for (x, y) in w.probs().iter().zip([0.5, 0.0, 0.0, 0.5]) {
            assert!((x - y).abs() < 1e-14);
        }

        let orth = [Direction::X, Direction::Y, Direction::Z, Direction::Z];
        let w = smolin_parity_portrait(&tomogram_vector(&rho, &orth).unwrap()).unwrap();
        assert!(w.probs().iter().all(|p| (p - 0.25).abs() < 1e-14));
    }

    #[test]
    fn closed_portrait_cases() {
        let x4 = [Direction::X; 4];
        assert_eq!(smolin_portrait_closed(Spin::Up, Spin::Up, &x4), 0.5);
        assert_eq!(smolin_portrait_closed(Spin::Up, Spin::Down, &x4), 0.0);
        let orth = [Direction::X, Direction::Y, Direction::Z, Direction::Z];
        for a in [Spin::Up, Spin::Down] {
            for p in [Spin::Up, Spin::Down] {
                assert_eq!(smolin_portrait_closed(a, p, &orth), 0.25);
            }
        }
    }

    #[test]
    fn closed_portrait_matches_pipeline() {
        let rho = smolin_pauli();
        let mut rng = seeded(53);
        for _ in 0..100 {
            let dirs: [Direction; 4] = core::array::from_fn(|_| random_direction(&mut rng));
            let w = smolin_parity_portrait(&tomogram_vector(&rho, &dirs).unwrap()).unwrap();
            for a in [Spin::Up, Spin::Down] {
                for p in [Spin::Up, Spin::Down] {
                    assert!((w.get(a, p) - smolin_portrait_closed(a, p, &dirs)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn wrong_length_for_parity_portrait() {
        let t = TomogramVector::new(vec![Direction::Z; 3], vec![0.125; 8]).unwrap();
        assert!(smolin_parity_portrait(&t).is_err());
    }

    fn random_portrait(rng: &mut crate::rng::Rng, k: usize) -> PortraitMatrix {
        let top: Vec<f64> = (0..k).map(|_| uniform(rng)).collect();
        let mut entries = top.clone();
        entries.extend(top.iter().map(|t| 1.0 - t));
        PortraitMatrix::new(k, entries).unwrap()
    }
}
