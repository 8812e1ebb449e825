use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::{modulus, qubit_bit, C64};
use crate::{Error, Result};

/// Dense `dim × dim` complex matrix acting on `n` qubits, `dim = 2^n`.
///
/// Entries are stored row-major. Qubit 0 is the most significant bit of the
/// row/column index.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    n_qubits: usize,
    data: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// 2×2 Pauli matrix.
pub fn pauli(p: Pauli) -> Operator {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let data = match p {
        Pauli::I => vec![l, o, o, l],
        Pauli::X => vec![o, l, l, o],
        Pauli::Y => vec![o, -i, i, o],
        Pauli::Z => vec![l, o, o, -l],
    };
    Operator { dim: 2, n_qubits: 1, data }
}

fn log2_exact(dim: usize) -> Option<usize> {
    (dim >= 2 && dim.is_power_of_two()).then(|| dim.trailing_zeros() as usize)
}

impl Operator {
    /// Builds an operator from row-major entries.
    pub fn from_entries(dim: usize, data: Vec<C64>) -> Result<Self> {
        let n_qubits = log2_exact(dim).ok_or(Error::BadDimension { dim, len: data.len() })?;
        if data.len() != dim * dim {
            return Err(Error::BadDimension { dim, len: data.len() });
        }
        Ok(Self { dim, n_qubits, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_entries(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_fn_qubits(n_qubits: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let dim = 1usize << n_qubits;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, n_qubits, data }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        Self::from_fn_qubits(n_qubits, |_, _| C64::zero())
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::from_fn_qubits(n_qubits, |r, c| if r == c { C64::new(1.0, 0.0) } else { C64::zero() })
    }

    /// Real diagonal operator; `diag.len()` must be a power of two.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let n = log2_exact(dim).ok_or(Error::BadDimension { dim, len: dim * dim })?;
        Ok(Self::from_fn_qubits(n, |r, c| if r == c { C64::new(diag[r], 0.0) } else { C64::zero() }))
    }

    /// `|ψ⟩⟨ψ|` for an amplitude vector of length `2^n`.
    pub fn outer(psi: &[C64]) -> Result<Self> {
        let dim = psi.len();
        let n = log2_exact(dim).ok_or(Error::BadDimension { dim, len: dim * dim })?;
        Ok(Self::from_fn_qubits(n, |r, c| psi[r] * psi[c].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.dim)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Operator) -> C64 {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let mut acc = C64::zero();
        for r in 0..self.dim {
            for k in 0..self.dim {
                acc += self.get(r, k) * other.get(k, r);
            }
        }
        acc
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn_qubits(self.n_qubits, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn_qubits(self.n_qubits, |r, c| self.get(c, r))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect(), ..self.clone() }
    }

    pub fn scale_complex(&self, s: C64) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect(), ..self.clone() }
    }

    /// Largest `|a_ij - b_ij|`; panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| modulus(a - b)).fold(0.0, f64::max)
    }

    /// Largest `|h_ij - conj(h_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max(modulus(self.get(r, c) - self.get(c, r).conj()));
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<()> {
        match qubits.iter().find(|&&q| q >= self.n_qubits) {
            Some(&index) => Err(Error::QubitOutOfRange { index, n_qubits: self.n_qubits }),
            None => Ok(()),
        }
    }

    /// Traces out every qubit not listed in `keep`.
    ///
    /// The kept qubits appear in the result in ascending index order, whatever
    /// order `keep` lists them in. Duplicates are ignored.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        self.check_qubits(keep)?;
        let n = self.n_qubits;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty() {
            return Err(Error::QubitOutOfRange { index: usize::MAX, n_qubits: n });
        }
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();

        let spread = |bits: usize, qubits: &[usize]| -> usize {
            let k = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|&(pos, _)| bits & (1 << (k - 1 - pos)) != 0)
                .map(|(_, &q)| qubit_bit(q, n))
                .sum()
        };

        let n_keep = kept.len();
        let n_tr = traced.len();
        let traced_offsets: Vec<usize> = (0..1usize << n_tr).map(|t| spread(t, &traced)).collect();
        Ok(Self::from_fn_qubits(n_keep, |r, c| {
            let rr = spread(r, &kept);
            let cc = spread(c, &kept);
            traced_offsets.iter().map(|&t| self.get(rr | t, cc | t)).sum()
        }))
    }

    /// Transposes the row/column indices of the qubits in `subset`.
    pub fn partial_transpose(&self, subset: &[usize]) -> Result<Self> {
        self.check_qubits(subset)?;
        let mask: usize = {
            let mut qs = subset.to_vec();
            qs.sort_unstable();
            qs.dedup();
            qs.iter().map(|&q| qubit_bit(q, self.n_qubits)).sum()
        };
        Ok(Self::from_fn_qubits(self.n_qubits, |r, c| {
            let r_src = (r & !mask) | (c & mask);
            let c_src = (c & !mask) | (r & mask);
            self.get(r_src, c_src)
        }))
    }

    /// Relabels qubits: input qubit `k` becomes output qubit `perm[k]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        if perm.len() != n {
            return Err(Error::InvalidPermutation);
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation);
            }
            seen[p] = true;
        }
        // output index -> input index
        let map = |out: usize| -> usize {
            (0..n)
                .filter(|&k| out & qubit_bit(perm[k], n) != 0)
                .map(|k| qubit_bit(k, n))
                .sum()
        };
        let src: Vec<usize> = (0..self.dim).map(map).collect();
        Ok(Self::from_fn_qubits(n, |r, c| self.get(src[r], src[c])))
    }

    #[cfg(test)]
    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }
}

/// Kronecker product with `a`'s qubits in the most significant positions.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    let db = b.dim;
    Operator::from_fn_qubits(a.n_qubits + b.n_qubits, |r, c| a.get(r / db, c / db) * b.get(r % db, c % db))
}

/// Left-to-right Kronecker product of a nonempty slice.
pub fn tensor_all(ops: &[Operator]) -> Operator {
    let (first, rest) = ops.split_first().expect("tensor_all needs at least one operator");
    rest.iter().fold(first.clone(), |acc, op| tensor(&acc, op))
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator product dimension mismatch");
        let d = self.dim;
        let mut out = Operator::zeros(self.n_qubits);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * d..(k + 1) * d];
                for (o, b) in out.data[r * d..(r + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator sum dimension mismatch");
        Operator { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator difference dimension mismatch");
        Operator { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}
