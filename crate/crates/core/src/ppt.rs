//! Partial-transpose (PPT) entanglement witness.
//!
//! Separable states have a positive semidefinite partial transpose across
//! every cut, so a negative eigenvalue certifies entanglement. The converse
//! fails in general: a PPT verdict does not establish separability.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::states::DensityMatrix;
use crate::{Error, Result, PSD_TOL};

const LABELS: &[u8] = b"ABCDEF";

/// Bipartition of the qubits into two nonempty sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSpec {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl CutSpec {
    /// Cut with `left` on one side and every other qubit of `n_qubits` on the other.
    pub fn new(left: &[usize], n_qubits: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        let len = l.len();
        l.dedup();
        if l.len() != len {
            return Err(Error::InvalidCut("repeated qubit".to_string()));
        }
        if let Some(&index) = l.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::QubitOutOfRange { index, n_qubits });
        }
        let right: Vec<usize> = (0..n_qubits).filter(|q| !l.contains(q)).collect();
        if l.is_empty() || right.is_empty() {
            return Err(Error::InvalidCut("both sides must be nonempty".to_string()));
        }
        Ok(Self { left: l, right })
    }

    /// Parses `"A:BCD"`-style text: letters A–F name qubits 0–5 and both
    /// sides together must cover `A..` up to the highest letter used, once each.
    pub fn parse(text: &str) -> Result<Self> {
        let (l, r) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidCut(alloc::format!("{text:?} has no ':'")))?;
        let side = |s: &str| -> Result<Vec<usize>> {
            s.trim()
                .bytes()
                .map(|b| {
                    LABELS
                        .iter()
                        .position(|&c| c == b.to_ascii_uppercase())
                        .ok_or_else(|| Error::InvalidCut(alloc::format!("unknown qubit label {:?}", b as char)))
                })
                .collect()
        };
        let (left, right) = (side(l)?, side(r)?);
        let n = left.len() + right.len();
        let mut all: Vec<usize> = left.iter().chain(&right).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidCut(alloc::format!("{text:?} is not a bipartition of {n} qubits")));
        }
        Self::new(&left, n)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n_qubits(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Every cut of `n_qubits` with `left_size` qubits on the left.
    pub fn all_with_left_size(n_qubits: usize, left_size: usize) -> Vec<CutSpec> {
        (0..1usize << n_qubits)
            .filter(|m| m.count_ones() as usize == left_size)
            .filter_map(|m| {
                let left: Vec<usize> = (0..n_qubits).filter(|q| m >> q & 1 == 1).collect();
                CutSpec::new(&left, n_qubits).ok()
            })
            .collect()
    }
}

impl fmt::Display for CutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = |qs: &[usize]| qs.iter().map(|&q| LABELS[q] as char).collect::<String>();
        write!(f, "{}:{}", letters(&self.left), letters(&self.right))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PptVerdict {
    /// Partial transpose has an eigenvalue below -1e-10: entangled across the cut.
    NptEntangled,
    /// Partial transpose is positive semidefinite: consistent with separability, not proof of it.
    Ppt,
}

impl PptVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PptVerdict::NptEntangled => "NPT_ENTANGLED",
            PptVerdict::Ppt => "PPT",
        }
    }

    pub fn note(self) -> &'static str {
        match self {
            PptVerdict::NptEntangled => "negative partial transpose certifies entanglement across the cut",
            PptVerdict::Ppt => "PPT is necessary for separability but does not certify it at this dimension",
        }
    }
}

impl fmt::Display for PptVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PptReport {
    pub cut: CutSpec,
    pub min_eigenvalue: f64,
    pub verdict: PptVerdict,
}

/// Smallest eigenvalue of `ρ^{T_left}` and the resulting verdict.
pub fn ppt_check(rho: &DensityMatrix, cut: &CutSpec) -> Result<PptReport> {
    if cut.n_qubits() != rho.n_qubits() {
        return Err(Error::DimensionMismatch { expected: rho.n_qubits(), found: cut.n_qubits() });
    }
    let pt = rho.op().partial_transpose(&cut.left)?;
    let vals = crate::linalg::hermitian_eigenvalues(&pt)?;
    let min_eigenvalue = vals[0];
    let verdict = if min_eigenvalue < -PSD_TOL { PptVerdict::NptEntangled } else { PptVerdict::Ppt };
    Ok(PptReport { cut: cut.clone(), min_eigenvalue, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rotation_from_direction, tensor, tensor_all};
    use crate::rng::{random_density_matrix, random_direction, seeded};
    use crate::states::{bell_state, smolin_pauli, BellKind};

    #[test]
    fn cut_parsing() {
        let c = CutSpec::parse("A:BCD").unwrap();
        assert_eq!(c.left(), &[0]);
        assert_eq!(c.right(), &[1, 2, 3]);
        assert_eq!(c.to_string(), "A:BCD");
        assert_eq!(CutSpec::parse("cb:ad").unwrap().to_string(), "BC:AD");
        for bad in ["ABCD", "A:", ":AB", "A:C", "A:AB", "A:BG", "AB-CD"] {
            assert!(CutSpec::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(CutSpec::all_with_left_size(4, 1).len(), 4);
        assert_eq!(CutSpec::all_with_left_size(4, 2).len(), 6);
    }

    #[test]
    fn product_states_are_ppt() {
        let mut rng = seeded(70);
        for _ in 0..10 {
            let a = random_density_matrix(&mut rng, 1);
            let b = random_density_matrix(&mut rng, 2);
            let rho = DensityMatrix::new(tensor(a.op(), b.op())).unwrap();
            // only cuts that respect the product structure A:BC
            for left in [&[0usize][..], &[1, 2]] {
                let r = ppt_check(&rho, &CutSpec::new(left, 3).unwrap()).unwrap();
                assert_eq!(r.verdict, PptVerdict::Ppt);
                assert!(r.min_eigenvalue >= -1e-10);
            }
        }
    }

    #[test]
    fn smolin_cuts() {
        let rho = smolin_pauli();
        for cut in CutSpec::all_with_left_size(4, 1) {
            let r = ppt_check(&rho, &cut).unwrap();
            assert!((r.min_eigenvalue + 0.125).abs() < 1e-10, "{cut}");
            assert_eq!(r.verdict, PptVerdict::NptEntangled);
        }
        for cut in CutSpec::all_with_left_size(4, 2) {
            let r = ppt_check(&rho, &cut).unwrap();
            assert!(r.min_eigenvalue.abs() < 1e-10, "{cut}");
            assert_eq!(r.verdict, PptVerdict::Ppt);
        }
        let pt = rho.op().partial_transpose(&[0, 1]).unwrap();
        assert!(pt.max_abs_diff(rho.op()) < 1e-15);
    }

    #[test]
    fn phi_plus_is_npt() {
        let rho = bell_state(BellKind::PhiPlus).density();
        let r = ppt_check(&rho, &CutSpec::parse("A:B").unwrap()).unwrap();
        assert!((r.min_eigenvalue + 0.5).abs() < 1e-10);
        assert_eq!(r.verdict, PptVerdict::NptEntangled);
    }

    #[test]
    fn min_eigenvalue_is_locally_invariant() {
        let rho = smolin_pauli();
        let cut = CutSpec::parse("A:BCD").unwrap();
        let base = ppt_check(&rho, &cut).unwrap().min_eigenvalue;
        let mut rng = seeded(71);
        for _ in 0..20 {
            let u = tensor_all(&core::array::from_fn::<_, 4, _>(|_| rotation_from_direction(&random_direction(&mut rng))));
            let rotated = DensityMatrix::new(&(&u * rho.op()) * &u.adjoint()).unwrap();
            let r = ppt_check(&rotated, &cut).unwrap();
            assert!((r.min_eigenvalue - base).abs() < 1e-10);
        }
    }

    #[test]
    fn cut_must_match_state() {
        let rho = smolin_pauli();
        assert!(ppt_check(&rho, &CutSpec::parse("A:B").unwrap()).is_err());
    }
}
