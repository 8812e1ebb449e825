//! Cyclic Jacobi eigenvalues for small Hermitian matrices.
//!
//! A Hermitian `H = A + iB` is diagonalized through its real symmetric
//! embedding `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled.

use alloc::vec;
use alloc::vec::Vec;



use super::Operator;
use crate::{Error, Result, HERMITIAN_TOL};

const MAX_SWEEPS: usize = 64;
const OFF_TOL: f64 = 1e-12;

/// All eigenvalues of a Hermitian operator, ascending.
///
/// Converges when the off-diagonal Frobenius norm of the embedding falls to
/// `1e-12 · dim · max(1, ‖H‖_F)`.
pub fn hermitian_eigenvalues(h: &Operator) -> Result<Vec<f64>> {
    let deviation = h.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let d = h.dim();
    let n = 2 * d;
    let mut a = vec![0.0; n * n];
    for r in 0..d {
        for c in 0..d {
            // symmetrize so round-off in the input cannot break the embedding
            let z = (h.get(r, c) + h.get(c, r).conj()) * 0.5;
            a[r * n + c] = z.re;
            a[(r + d) * n + c + d] = z.re;
            a[(r + d) * n + c] = z.im;
            a[r * n + c + d] = -z.im;
        }
    }
    let scale = h.frobenius_norm().max(1.0);
    let mut doubled = jacobi_in_place(&mut a, n, OFF_TOL * d as f64 * scale)?;
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Eigenvalues of a real symmetric row-major `n × n` matrix, ascending.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(matrix.len(), n * n, "symmetric_eigenvalues: length is not n*n");
    let mut a = matrix.to_vec();
    let mut deviation = 0.0f64;
    for r in 0..n {
        for c in r + 1..n {
            deviation = deviation.max((a[r * n + c] - a[c * n + r]).abs());
            let m = 0.5 * (a[r * n + c] + a[c * n + r]);
            a[r * n + c] = m;
            a[c * n + r] = m;
        }
    }
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let scale = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>()).max(1.0);
    let mut vals = jacobi_in_place(&mut a, n, OFF_TOL * n as f64 * scale)?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c] * a[r * n + c];
            }
        }
    }
    libm::sqrt(s)
}

fn jacobi_in_place(a: &mut [f64], n: usize, tol: f64) -> Result<Vec<f64>> {
    let mut off = off_norm(a, n);
    let mut sweeps = 0;
    while off > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for r in 0..n {
                    let (arp, arq) = (a[r * n + p], a[r * n + q]);
                    a[r * n + p] = c * arp - s * arq;
                    a[r * n + q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[p * n + r], a[q * n + r]);
                    a[p * n + r] = c * apr - s * aqr;
                    a[q * n + r] = s * apr + c * aqr;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        off = off_norm(a, n);
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, rotation_from_direction, tensor_all, Pauli};
    use crate::linalg::modulus;
    use crate::rng::{random_direction, random_operator, seeded};
    use crate::states::smolin_pauli;

    fn assert_spectrum(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "eigenvalue {g} vs {w}");
        }
    }

    #[test]
    fn diagonal_matrix() {
        let h = Operator::diagonal(&[3.0, 1.0, 2.0, -4.0]).unwrap();
        assert_spectrum(&hermitian_eigenvalues(&h).unwrap(), &[-4.0, 1.0, 2.0, 3.0], 1e-15);
        assert_spectrum(&symmetric_eigenvalues(&[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0], 3).unwrap(), &[1.0, 2.0, 3.0], 1e-15);
    }

    #[test]
    fn pauli_spectra() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            assert_spectrum(&hermitian_eigenvalues(&pauli(p)).unwrap(), &[-1.0, 1.0], 1e-14);
        }
    }

    #[test]
    fn smolin_spectrum() {
        let vals = hermitian_eigenvalues(smolin_pauli().op()).unwrap();
        let mut want = vec![0.0; 12];
        want.extend([0.25; 4]);
        assert_spectrum(&vals, &want, 1e-10);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b - ic], [b + ic, d]] has eigenvalues (a+d)/2 ± sqrt(((a-d)/2)² + b² + c²)
        let mut rng = seeded(2);
        for _ in 0..50 {
            let h = random_operator(&mut rng, 1);
            let h = &h + &h.adjoint();
            let (a, d) = (h.get(0, 0).re, h.get(1, 1).re);
            let off = modulus(h.get(0, 1));
            let mid = 0.5 * (a + d);
            let rad = libm::sqrt(0.25 * (a - d) * (a - d) + off * off);
            assert_spectrum(&hermitian_eigenvalues(&h).unwrap(), &[mid - rad, mid + rad], 1e-12);
        }
    }

    #[test]
    fn trace_and_unitary_invariance() {
        let mut rng = seeded(17);
        for _ in 0..20 {
            let g = random_operator(&mut rng, 3);
            let h = &g + &g.adjoint();
            let vals = hermitian_eigenvalues(&h).unwrap();
            let sum: f64 = vals.iter().sum();
            assert!((sum - h.trace().re).abs() < 1e-10);

            let u = tensor_all(&[
                rotation_from_direction(&random_direction(&mut rng)),
                rotation_from_direction(&random_direction(&mut rng)),
                rotation_from_direction(&random_direction(&mut rng)),
            ]);
            let rotated = &(&u * &h) * &u.adjoint();
            assert_spectrum(&hermitian_eigenvalues(&rotated).unwrap(), &vals, 1e-10);
        }
    }

    #[test]
    fn six_qubit_operator_converges() {
        let mut rng = seeded(99);
        let g = random_operator(&mut rng, 6);
        let h = (&g + &g.adjoint()).scale(0.5);
        let vals = hermitian_eigenvalues(&h).unwrap();
        assert_eq!(vals.len(), 64);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!((vals.iter().sum::<f64>() - h.trace().re).abs() < 1e-9);
        let sq: f64 = vals.iter().map(|v| v * v).sum();
        assert!((sq - h.trace_product(&h).re).abs() < 1e-8);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Operator::from_real(2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
    }
}
