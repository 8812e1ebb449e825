//! CHSH machinery on binary correlation families.
//!
//! A [`CorrelationFamily`] maps a pair of measurement settings to a joint
//! distribution over two binary outcomes. [`chsh_matrix`] collects four such
//! distributions into a column-stochastic 4×4 matrix and [`bell_number`]
//! evaluates the CHSH expression on it. Separable states never exceed 2.

mod search;

pub use search::{maximize_bell, BellSearchResult, SearchOptions, GOLDEN_TOL, MAX_SWEEPS, MIN_SWEEP_GAIN, SCAN_POINTS};

use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;

use crate::portrait::{smolin_parity_portrait, smolin_portrait_closed};
use crate::states::DensityMatrix;
use crate::tomography::{axis_product_sum, tomogram_vector, Spin};
use crate::{Direction, Error, Result, NORM_TOL};

/// Values above `2 + VIOLATION_MARGIN` certify entanglement.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Binary-outcome joint distributions indexed by a pair of settings.
pub trait CorrelationFamily {
    type SettingA;
    type SettingB;

    /// Probabilities of `(+,+), (+,-), (-,+), (-,-)` for settings `(x, y)`.
    fn distribution(&self, x: &Self::SettingA, y: &Self::SettingB) -> Result<[f64; 4]>;
}

/// Two-qubit state measured along one direction per qubit.
#[derive(Clone, Debug)]
pub struct QubitPairFamily {
    rho: DensityMatrix,
}

impl QubitPairFamily {
    pub fn new(rho: DensityMatrix) -> Result<Self> {
        if rho.n_qubits() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: rho.n_qubits() });
        }
        Ok(Self { rho })
    }
}

impl CorrelationFamily for QubitPairFamily {
    type SettingA = Direction;
    type SettingB = Direction;

    fn distribution(&self, x: &Direction, y: &Direction) -> Result<[f64; 4]> {
        let t = tomogram_vector(&self.rho, &[*x, *y])?;
        Ok(t.probs().try_into().expect("two-qubit tomogram"))
    }
}

/// Four-qubit state seen through the A:BCD parity portrait, evaluated with
/// the dense tomogram. Side A takes one direction, side BCD three.
#[derive(Clone, Debug)]
pub struct ParityPortraitFamily {
    rho: DensityMatrix,
}

impl ParityPortraitFamily {
    pub fn new(rho: DensityMatrix) -> Result<Self> {
        if rho.n_qubits() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: rho.n_qubits() });
        }
        Ok(Self { rho })
    }
}

impl CorrelationFamily for ParityPortraitFamily {
    type SettingA = Direction;
    type SettingB = [Direction; 3];

    fn distribution(&self, x: &Direction, y: &[Direction; 3]) -> Result<[f64; 4]> {
        let t = tomogram_vector(&self.rho, &[*x, y[0], y[1], y[2]])?;
        Ok(*smolin_parity_portrait(&t)?.probs())
    }
}

/// The Smolin parity portrait in closed form; `s = 2 m_A`, `t = p`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmolinClosedFamily;

pub fn smolin_portrait_family() -> SmolinClosedFamily {
    SmolinClosedFamily
}

impl CorrelationFamily for SmolinClosedFamily {
    type SettingA = Direction;
    type SettingB = [Direction; 3];

    fn distribution(&self, x: &Direction, y: &[Direction; 3]) -> Result<[f64; 4]> {
        let dirs = [*x, y[0], y[1], y[2]];
        let w = |s, t| smolin_portrait_closed(s, t, &dirs);
        Ok([w(Spin::Up, Spin::Up), w(Spin::Up, Spin::Down), w(Spin::Down, Spin::Up), w(Spin::Down, Spin::Down)])
    }
}

/// 4×4 column-stochastic matrix of a CHSH experiment.
///
/// Columns: `(x1,y1), (x1,y2), (x2,y1), (x2,y2)`. Rows: `(+,+), (+,-), (-,+), (-,-)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChshMatrix<A, B> {
    pub entries: [[f64; 4]; 4],
    pub settings: (A, B, A, B),
}

impl<A, B> ChshMatrix<A, B> {
    /// `M[row][col]`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// `M_1k - M_2k - M_3k + M_4k`: the correlation of column `k`.
    pub fn correlation(&self, col: usize) -> f64 {
        let e = &self.entries;
        e[0][col] - e[1][col] - e[2][col] + e[3][col]
    }
}

pub fn chsh_matrix<F>(fam: &F, x1: F::SettingA, y1: F::SettingB, x2: F::SettingA, y2: F::SettingB) -> Result<ChshMatrix<F::SettingA, F::SettingB>>
where
    F: CorrelationFamily,
{
    let columns = [
        fam.distribution(&x1, &y1)?,
        fam.distribution(&x1, &y2)?,
        fam.distribution(&x2, &y1)?,
        fam.distribution(&x2, &y2)?,
    ];
    let mut entries = [[0.0; 4]; 4];
    for (col, dist) in columns.iter().enumerate() {
        let sum: f64 = dist.iter().sum();
        let min = dist.iter().copied().fold(f64::INFINITY, f64::min);
        if !((sum - 1.0).abs() <= NORM_TOL && min >= -NORM_TOL) {
            return Err(Error::FamilyNotNormalized { column: col, sum, min });
        }
        for (row, p) in dist.iter().enumerate() {
            entries[row][col] = *p;
        }
    }
    Ok(ChshMatrix { entries, settings: (x1, y1, x2, y2) })
}

/// `|C_1 + C_2 + C_3 - C_4|` with the minus sign on the `(x2, y2)` column.
pub fn bell_number<A, B>(m: &ChshMatrix<A, B>) -> f64 {
    (m.correlation(0) + m.correlation(1) + m.correlation(2) - m.correlation(3)).abs()
}

/// The eight directions of a CHSH test across the A:BCD cut: `a`, `d` on
/// qubit A; `b` and `c` are triples for qubits B, C, D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PortraitSettings {
    pub a: Direction,
    pub d: Direction,
    pub b: [Direction; 3],
    pub c: [Direction; 3],
}

impl PortraitSettings {
    /// Names in the order used by [`PortraitSettings::to_array`].
    pub const NAMES: [&'static str; 8] = ["a", "d", "bB", "bC", "bD", "cB", "cC", "cD"];

    /// `a = (x+y)/√2`, `d = (x-y)/√2`, `b = x`, `c = y` on every BCD qubit.
    /// Reaches `2√2` on the Smolin state.
    pub fn violating() -> Self {
        let h = FRAC_1_SQRT_2;
        Self {
            a: Direction::normalized(h, h, 0.0).expect("unit"),
            d: Direction::normalized(h, -h, 0.0).expect("unit"),
            b: [Direction::X; 3],
            c: [Direction::Y; 3],
        }
    }

    /// [`PortraitSettings::violating`] with `a` and `d` exchanged, which gives 0.
    pub fn side_a_swapped() -> Self {
        let v = Self::violating();
        Self { a: v.d, d: v.a, ..v }
    }

    pub fn uniform(n: Direction) -> Self {
        Self { a: n, d: n, b: [n; 3], c: [n; 3] }
    }

    pub fn to_array(&self) -> [Direction; 8] {
        [self.a, self.d, self.b[0], self.b[1], self.b[2], self.c[0], self.c[1], self.c[2]]
    }

    pub fn from_array(v: [Direction; 8]) -> Self {
        Self { a: v[0], d: v[1], b: [v[2], v[3], v[4]], c: [v[5], v[6], v[7]] }
    }
}

/// Closed-form Smolin Bell number
/// `|Σ_i (a_i + d_i) Π_k b_i^(k) + (a_i - d_i) Π_k c_i^(k)|`.
pub fn smolin_bell_closed(s: &PortraitSettings) -> f64 {
    let corr = |x: &Direction, y: &[Direction; 3]| axis_product_sum(&[*x, y[0], y[1], y[2]]);
    (corr(&s.a, &s.b) + corr(&s.a, &s.c) + corr(&s.d, &s.b) - corr(&s.d, &s.c)).abs()
}

/// Bell number of a four-qubit state through the dense chain
/// `ρ → tomogram → parity portrait → M → B`, with `x1 = a, y1 = b, x2 = d, y2 = c`.
pub fn portrait_bell_number(fam: &ParityPortraitFamily, s: &PortraitSettings) -> Result<f64> {
    Ok(bell_number(&chsh_matrix(fam, s.a, s.b, s.d, s.c)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The Bell bound is violated: the state is not separable across the cut.
    Entangled,
    /// No violation found; the test is only a necessary condition for separability.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Entangled => "ENTANGLED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn separability_verdict(best_value: f64) -> Verdict {
    if best_value > 2.0 + VIOLATION_MARGIN {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    }
}
