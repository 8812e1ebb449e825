//! Dense complex linear algebra on qubit operators.

mod direction;
mod eigen;
mod operator;

pub use direction::{rotation_from_direction, Direction, EulerAngles};
pub use eigen::{hermitian_eigenvalues, symmetric_eigenvalues};
pub use operator::{pauli, tensor, tensor_all, Operator, Pauli};


pub type C64 = num_complex::Complex<f64>;

/// Bit of a basis index holding qubit `q` when there are `n` qubits (qubit 0 is the MSB).
#[inline]
pub(crate) fn qubit_bit(q: usize, n: usize) -> usize {
    1 << (n - 1 - q)
}

/// `|z|`.
#[inline]
pub fn modulus(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}
