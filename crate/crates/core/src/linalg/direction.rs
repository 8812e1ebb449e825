use core::f64::consts::{PI, TAU};
use core::ops::Neg;



use super::{pauli, Operator, Pauli, C64};
use crate::{Error, Result, UNIT_TOL};

/// Unit vector in R³ selecting a spin-projection axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub const X: Direction = Direction { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Direction = Direction { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Direction = Direction { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts `(x, y, z)` when `|x² + y² + z² - 1| <= 1e-12`, then rescales to unit length
    /// (vectors already unit to rounding are kept bit for bit).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::with_tolerance(x, y, z, UNIT_TOL)
    }

    /// Like [`Direction::new`] with a caller-chosen tolerance on `|n|²`.
    pub fn with_tolerance(x: f64, y: f64, z: f64, tol: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol {
            return Err(Error::NonUnitDirection { norm_sq });
        }
        if (norm_sq - 1.0).abs() <= 8.0 * f64::EPSILON {
            return Ok(Self { x, y, z });
        }
        let norm = libm::sqrt(norm_sq);
        Ok(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// Normalizes any nonzero finite vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !(norm_sq.is_finite() && norm_sq > 0.0) {
            return Err(Error::NonUnitDirection { norm_sq });
        }
        let norm = libm::sqrt(norm_sq);
        Ok(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`; any real angles are accepted.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = libm::sincos(theta);
        let (sp, cp) = libm::sincos(phi);
        Self { x: st * cp, y: st * sp, z: ct }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// `n·σ = n_x σ_x + n_y σ_y + n_z σ_z`.
    pub fn sigma(&self) -> Operator {
        let x = pauli(Pauli::X).scale(self.x);
        let y = pauli(Pauli::Y).scale(self.y);
        let z = pauli(Pauli::Z).scale(self.z);
        &(&x + &y) + &z
    }
}

impl Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction { x: -self.x, y: -self.y, z: -self.z }
    }
}

/// Euler angles of an SU(2) rotation: `θ ∈ [0, π]`, `φ, ψ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    theta: f64,
    phi: f64,
    psi: f64,
}

impl EulerAngles {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange { name: "theta", value: theta });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::AngleOutOfRange { name: "phi", value: phi });
        }
        if !(0.0..TAU).contains(&psi) {
            return Err(Error::AngleOutOfRange { name: "psi", value: psi });
        }
        Ok(Self { theta, phi, psi })
    }

    /// Polar and azimuthal angles of `n` with `ψ = 0`.
    pub fn from_direction(n: &Direction) -> Self {
        let rho = libm::hypot(n.x, n.y);
        let theta = libm::atan2(rho, n.z);
        let mut phi = if rho == 0.0 { 0.0 } else { libm::atan2(n.y, n.x) };
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi, psi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn direction(&self) -> Direction {
        Direction::from_angles(self.theta, self.phi)
    }

    /// `u = exp(-iφσ_z/2) · exp(-iθσ_y/2) · exp(-iψσ_z/2)`.
    ///
    /// Satisfies `u σ_z u† = n·σ` for `n = self.direction()`; `ψ` only
    /// multiplies the columns of `u` by phases.
    pub fn rotation(&self) -> Operator {
        let (s, c) = libm::sincos(self.theta / 2.0);
        let sum = (self.phi + self.psi) / 2.0;
        let diff = (self.phi - self.psi) / 2.0;
        let e = |a: f64| {
            let (s, c) = libm::sincos(a);
            C64::new(c, s)
        };
        let data = alloc::vec![e(-sum) * c, -e(-diff) * s, e(diff) * s, e(sum) * c];
        Operator::from_entries(2, data).expect("2x2 rotation")
    }
}

/// Single-qubit unitary taking the z quantization axis onto `n`.
pub fn rotation_from_direction(n: &Direction) -> Operator {
    EulerAngles::from_direction(n).rotation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modulus;
    use crate::rng::{random_direction, seeded};

    fn conjugated_z(u: &Operator) -> Operator {
        &(u * &pauli(Pauli::Z)) * &u.adjoint()
    }

    #[test]
    fn z_axis_gives_identity() {
        let u = rotation_from_direction(&Direction::Z);
        assert!(u.max_abs_diff(&Operator::identity(1)) < 1e-15);
    }

    #[test]
    fn x_and_y_axes_map_sigma_z() {
        let u = rotation_from_direction(&Direction::X);
        assert!(conjugated_z(&u).max_abs_diff(&pauli(Pauli::X)) < 1e-15);
        let u = rotation_from_direction(&Direction::Y);
        assert!(conjugated_z(&u).max_abs_diff(&pauli(Pauli::Y)) < 1e-15);
        let u = rotation_from_direction(&-Direction::Z);
        assert!(conjugated_z(&u).max_abs_diff(&pauli(Pauli::Z).scale(-1.0)) < 1e-15);
    }

    #[test]
    fn random_directions_are_reproduced_exactly() {
        let mut rng = seeded(21);
        for _ in 0..500 {
            let n = random_direction(&mut rng);
            let u = rotation_from_direction(&n);
            assert!((&u * &u.adjoint()).max_abs_diff(&Operator::identity(1)) < 1e-14);
            assert!(conjugated_z(&u).max_abs_diff(&n.sigma()) < 1e-14);
        }
    }

    #[test]
    fn near_pole_directions_keep_precision() {
        for eps in [1e-4, 1e-7, 1e-10] {
            let n = Direction::normalized(eps, -eps, 1.0).unwrap();
            let u = rotation_from_direction(&n);
            assert!(conjugated_z(&u).max_abs_diff(&n.sigma()) < 1e-14);
        }
    }

    #[test]
    fn psi_is_a_column_phase() {
        let a = EulerAngles::new(1.1, 0.4, 0.0).unwrap();
        let b = EulerAngles::new(1.1, 0.4, 2.3).unwrap();
        let (ua, ub) = (a.rotation(), b.rotation());
        assert!(conjugated_z(&ua).max_abs_diff(&conjugated_z(&ub)) < 1e-14);
        for col in 0..2 {
            let ratio = ub.get(0, col) / ua.get(0, col);
            assert!((modulus(ratio) - 1.0).abs() < 1e-14);
            assert!(modulus(ub.get(1, col) - ua.get(1, col) * ratio) < 1e-14);
        }
    }

    #[test]
    fn angles_round_trip_through_direction() {
        let mut rng = seeded(8);
        for _ in 0..100 {
            let n = random_direction(&mut rng);
            let e = EulerAngles::from_direction(&n);
            assert!(EulerAngles::new(e.theta(), e.phi(), e.psi()).is_ok());
            let m = e.direction();
            assert!((m.x() - n.x()).abs() < 1e-14);
            assert!((m.y() - n.y()).abs() < 1e-14);
            assert!((m.z() - n.z()).abs() < 1e-14);
        }
    }

    #[test]
    fn validation() {
        assert!(Direction::new(1.0, 1e-7, 0.0).is_ok());
        assert!(matches!(Direction::new(1.0, 1e-5, 0.0), Err(Error::NonUnitDirection { .. })));
        assert!(Direction::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(Direction::normalized(0.0, 0.0, 0.0).is_err());
        assert!(EulerAngles::new(-0.1, 0.0, 0.0).is_err());
        assert!(EulerAngles::new(0.1, TAU, 0.0).is_err());
    }
}
