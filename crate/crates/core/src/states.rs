//! Density matrices and the named states: Bell pairs, the Smolin state in
//! both of its presentations, and explicit separable mixtures.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;

use crate::linalg::{hermitian_eigenvalues, pauli, tensor, tensor_all, Operator, Pauli, C64};
use crate::{Error, Result, HERMITIAN_TOL, NORM_TOL, PSD_TOL};

/// One failed density-matrix condition.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NotHermitian { deviation: f64 },
    TraceNotOne { re: f64, im: f64 },
    NegativeEigenvalue { min: f64 },
    EigenFailure,
}

/// Every violated condition found by [`validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match v {
                Violation::NotHermitian { deviation } => write!(f, "not Hermitian (deviation {deviation:e})")?,
                Violation::TraceNotOne { re, im } => write!(f, "trace {re}{im:+}i is not 1")?,
                Violation::NegativeEigenvalue { min } => write!(f, "negative eigenvalue {min:e}")?,
                Violation::EigenFailure => f.write_str("eigensolver failed")?,
            }
        }
        Ok(())
    }
}

/// Checks Hermiticity (1e-10 entrywise), unit trace (1e-12) and positivity
/// (eigenvalues ≥ -1e-10), collecting every failure.
pub fn validate(op: &Operator) -> ValidationReport {
    let mut violations = Vec::new();
    let deviation = op.hermiticity_deviation();
    let hermitian = deviation <= HERMITIAN_TOL;
    if !hermitian {
        violations.push(Violation::NotHermitian { deviation });
    }
    let tr = op.trace();
    if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
        violations.push(Violation::TraceNotOne { re: tr.re, im: tr.im });
    }
    if hermitian {
        match hermitian_eigenvalues(op) {
            Ok(vals) => {
                let min = vals[0];
                if min < -PSD_TOL {
                    violations.push(Violation::NegativeEigenvalue { min });
                }
            }
            Err(_) => violations.push(Violation::EigenFailure),
        }
    }
    ValidationReport { violations }
}

/// Validated density operator on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    pub fn new(op: Operator) -> Result<Self> {
        let report = validate(&op);
        if report.is_valid() {
            Ok(Self { op })
        } else {
            Err(Error::InvalidState(report))
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = (1usize << n_qubits) as f64;
        Self { op: Operator::identity(n_qubits).scale(1.0 / dim) }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self { op: Operator::outer(&psi.amplitudes).expect("validated length") }
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn n_qubits(&self) -> usize {
        self.op.n_qubits()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.op)
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.op.trace_product(&self.op).re
    }

    /// Relabels qubits: qubit `k` of `self` becomes qubit `perm[k]` of the result.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self { op: self.op.permute_qubits(perm)? })
    }

    /// Reduced state on `keep` (ascending qubit order).
    pub fn reduced(&self, keep: &[usize]) -> Result<Self> {
        Ok(Self { op: self.op.partial_trace(keep)? })
    }
}

/// Normalized state vector on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadDimension { dim: len, len });
        }
        let sum: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDistribution { sum, min: 0.0 });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];
}

/// Two-qubit Bell state with real amplitudes `±1/√2` over `(++, +-, -+, --)`.
pub fn bell_state(kind: BellKind) -> PureState {
    let h = FRAC_1_SQRT_2;
    let amps: [f64; 4] = match kind {
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureState { amplitudes: amps.iter().map(|&a| C64::new(a, 0.0)).collect() }
}

/// `¼ Σ_X |X⟩⟨X|_AB ⊗ |X⟩⟨X|_CD` over the four Bell kinds.
pub fn smolin_mixture() -> DensityMatrix {
    let terms = BellKind::ALL
        .iter()
        .map(|&k| {
            let pair = bell_state(k).density();
            (0.25, pair.clone(), pair)
        })
        .collect();
    let dec = SeparableDecomposition::new(terms).expect("uniform weights");
    assemble_separable(&dec).expect("mixture of projectors")
}

/// `(1/16)(I + σx⊗σx⊗σx⊗σx + σy⊗σy⊗σy⊗σy + σz⊗σz⊗σz⊗σz)`.
pub fn smolin_pauli() -> DensityMatrix {
    let mut acc = Operator::identity(4);
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        let s = pauli(p);
        acc = &acc + &tensor_all(&[s.clone(), s.clone(), s.clone(), s]);
    }
    DensityMatrix { op: acc.scale(1.0 / 16.0) }
}

/// Convex combination `Σ_i p_i ρ_left^(i) ⊗ ρ_right^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableDecomposition {
    terms: Vec<(f64, DensityMatrix, DensityMatrix)>,
}

impl SeparableDecomposition {
    pub fn new(terms: Vec<(f64, DensityMatrix, DensityMatrix)>) -> Result<Self> {
        let (first_l, first_r) = match terms.first() {
            Some((_, l, r)) => (l.dim(), r.dim()),
            None => return Err(Error::InvalidWeights { sum: 0.0 }),
        };
        let mut sum = 0.0;
        for (w, l, r) in &terms {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::InvalidWeights { sum: *w });
            }
            if l.dim() != first_l {
                return Err(Error::DimensionMismatch { expected: first_l, found: l.dim() });
            }
            if r.dim() != first_r {
                return Err(Error::DimensionMismatch { expected: first_r, found: r.dim() });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidWeights { sum });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, DensityMatrix, DensityMatrix)] {
        &self.terms
    }

    /// Qubit count of the left factor; the cut sits after this many qubits.
    pub fn left_qubits(&self) -> usize {
        self.terms[0].1.n_qubits()
    }
}

pub fn assemble_separable(dec: &SeparableDecomposition) -> Result<DensityMatrix> {
    let n = dec.terms[0].1.n_qubits() + dec.terms[0].2.n_qubits();
    let acc = dec
        .terms
        .iter()
        .fold(Operator::zeros(n), |acc, (w, l, r)| &acc + &tensor(l.op(), r.op()).scale(*w));
    DensityMatrix::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modulus;
    use crate::rng::{random_density_matrix, seeded, uniform};
    use alloc::vec;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn bell_amplitudes() {
        let h = FRAC_1_SQRT_2;
        let re = |k| bell_state(k).amplitudes().iter().map(|z| z.re).collect::<Vec<_>>();
        assert_eq!(re(BellKind::PhiPlus), vec![h, 0.0, 0.0, h]);
        assert_eq!(re(BellKind::PsiMinus), vec![0.0, h, -h, 0.0]);
    }

    #[test]
    fn bell_basis_is_orthonormal() {
        for (i, a) in BellKind::ALL.iter().enumerate() {
            for (j, b) in BellKind::ALL.iter().enumerate() {
                let g = bell_state(*a).inner(&bell_state(*b));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(modulus(g - C64::new(want, 0.0)) < 1e-15);
            }
        }
    }

    #[test]
    fn smolin_presentations_agree() {
        let a = smolin_mixture();
        let b = smolin_pauli();
        assert!(a.op().max_abs_diff(b.op()) <= 1e-15);
        assert!((a.op().trace().re - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::new(b.op().clone()).is_ok());
    }

    #[test]
    fn smolin_diagonal_follows_parity() {
        let rho = smolin_pauli();
        for i in 0..16usize {
            let want = if i.count_ones() % 2 == 0 { 0.125 } else { 0.0 };
            assert!((rho.op().get(i, i).re - want).abs() < 1e-16);
        }
    }

    #[test]
    fn smolin_purity_and_spectrum() {
        let rho = smolin_pauli();
        assert!((rho.purity() - 0.25).abs() < 1e-15);
        let vals = rho.eigenvalues().unwrap();
        assert!(vals[..12].iter().all(|v| v.abs() < 1e-10));
        assert!(vals[12..].iter().all(|v| (v - 0.25).abs() < 1e-10));
    }

    #[test]
    fn smolin_is_permutation_symmetric() {
        let rho = smolin_pauli();
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for p in perms {
            let q = rho.permute_qubits(&p).unwrap();
            assert!(q.op().max_abs_diff(rho.op()) <= 1e-15, "perm {p:?}");
        }
    }

    #[test]
    fn permutation_identity_and_involution() {
        let mut rng = seeded(31);
        let rho = random_density_matrix(&mut rng, 3);
        assert_eq!(rho.permute_qubits(&[0, 1, 2]).unwrap(), rho);
        let once = rho.permute_qubits(&[1, 0, 2]).unwrap();
        assert_eq!(once.permute_qubits(&[1, 0, 2]).unwrap(), rho);
        assert!(rho.permute_qubits(&[0, 1]).is_err());
        assert!(rho.permute_qubits(&[0, 1, 3]).is_err());
    }

    #[test]
    fn permutation_preserves_spectrum() {
        let mut rng = seeded(32);
        for _ in 0..10 {
            let rho = random_density_matrix(&mut rng, 3);
            let a = rho.eigenvalues().unwrap();
            let b = rho.permute_qubits(&[2, 0, 1]).unwrap().eigenvalues().unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn separable_assembly_cases() {
        let r0 = DensityMatrix::new(Operator::diagonal(&[1.0, 0.0]).unwrap()).unwrap();
        let r1 = DensityMatrix::new(Operator::diagonal(&[0.0, 1.0]).unwrap()).unwrap();
        let single = SeparableDecomposition::new(vec![(1.0, r0.clone(), r1.clone())]).unwrap();
        assert_eq!(assemble_separable(&single).unwrap().op(), &tensor(r0.op(), r1.op()));

        let classical =
            SeparableDecomposition::new(vec![(0.5, r0.clone(), r0.clone()), (0.5, r1.clone(), r1.clone())]).unwrap();
        let want = Operator::diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(assemble_separable(&classical).unwrap().op(), &want);

        let bad = SeparableDecomposition::new(vec![(0.6, r0.clone(), r0.clone()), (0.5, r1.clone(), r1.clone())]);
        assert!(matches!(bad, Err(Error::InvalidWeights { .. })));
        let neg = SeparableDecomposition::new(vec![(1.5, r0.clone(), r0.clone()), (-0.5, r1.clone(), r1.clone())]);
        assert!(matches!(neg, Err(Error::InvalidWeights { .. })));
        let mixed_dims =
            SeparableDecomposition::new(vec![(0.5, r0.clone(), r0.clone()), (0.5, smolin_pauli(), r1.clone())]);
        assert!(matches!(mixed_dims, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn random_separable_mixtures_are_valid() {
        let mut rng = seeded(33);
        for _ in 0..100 {
            let k = 1 + (uniform(&mut rng) * 4.0) as usize;
            let raw: Vec<f64> = (0..k).map(|_| uniform(&mut rng) + 0.01).collect();
            let total: f64 = raw.iter().sum();
            let terms = raw
                .iter()
                .map(|w| (w / total, random_density_matrix(&mut rng, 1), random_density_matrix(&mut rng, 2)))
                .collect();
            let dec = SeparableDecomposition::new(terms).unwrap();
            assert!(assemble_separable(&dec).is_ok());
        }
    }

    #[test]
    fn validation_reports_every_violation() {
        // non-Hermitian and wrong trace at once
        let op = Operator::from_real(2, &[0.7, 0.5, 0.0, 0.7]).unwrap();
        let report = validate(&op);
        assert_eq!(report.violations.len(), 2);
        // Hermitian, unit trace, but indefinite
        let op = Operator::from_real(2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        let report = validate(&op);
        assert!(matches!(report.violations[..], [Violation::NegativeEigenvalue { .. }]));
        assert!(matches!(DensityMatrix::new(op), Err(Error::InvalidState(_))));
    }
}
