use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qops::{Complex, ALGEBRAIC_TOL};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex; 2]; 2]);

/// The three Pauli matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::X => Mat2([[ZERO, ONE], [ONE, ZERO]]),
            Pauli::Y => Mat2([[ZERO, -I], [I, ZERO]]),
            Pauli::Z => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
        }
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Mat2([[a, b], [c, d]])
    }

    /// `x·σx + y·σy + z·σz`.
    pub fn from_bloch(v: [f64; 3]) -> Self {
        let [x, y, z] = v;
        Mat2([[Complex::new(z, 0.0), Complex::new(x, -y)], [Complex::new(x, y), Complex::new(-z, 0.0)]])
    }

    /// `exp(i·θ·σ) = cos θ·𝟙 + i sin θ·σ` for a Pauli matrix σ.
    pub fn exp_i_pauli(theta: f64, pauli: Pauli) -> Self {
        Mat2::IDENTITY.scale(Complex::new(theta.cos(), 0.0)) + pauli.matrix().scale(I * theta.sin())
    }

    /// `exp(i σz δ/2)`, the z rotation used throughout the symmetry families.
    pub fn rz(delta: f64) -> Self {
        Mat2::exp_i_pauli(delta / 2.0, Pauli::Z)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.0[row][col]
    }

    pub fn scale(&self, s: Complex) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn conj(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Bloch vector `(Tr(Mσx), Tr(Mσy), Tr(Mσz)) / 2`, real parts only.
    pub fn bloch(&self) -> [f64; 3] {
        let comp = |p: Pauli| (*self * p.matrix()).trace().re / 2.0;
        [comp(Pauli::X), comp(Pauli::Y), comp(Pauli::Z)]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

/// A 2×2 unitary matrix, `U†U = 𝟙` within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2(Mat2::IDENTITY);

    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerance(m, ALGEBRAIC_TOL)
    }

    pub fn with_tolerance(m: Mat2, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("unitary"));
        }
        let dev = (m.adjoint() * m).max_deviation(&Mat2::IDENTITY);
        if dev > tol {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Unitary2(m))
    }

    pub fn pauli(p: Pauli) -> Self {
        Unitary2(p.matrix())
    }

    /// `exp(i·θ·σ)` for a Pauli matrix σ.
    pub fn exp_i_pauli(theta: f64, pauli: Pauli) -> Self {
        Unitary2(Mat2::exp_i_pauli(theta, pauli))
    }

    pub fn rz(delta: f64) -> Self {
        Unitary2(Mat2::rz(delta))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Unitary2(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Unitary2(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        Unitary2(self.0.conj())
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2(self.0 * rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (Pauli::X.matrix(), Pauli::Y.matrix(), Pauli::Z.matrix());
        assert!((x * y).max_deviation(&z.scale(I)) < 1e-15);
        assert!((z * x * z).max_deviation(&(-x)) < 1e-15);
        for p in [x, y, z] {
            assert!((p * p).max_deviation(&Mat2::IDENTITY) < 1e-15);
        }
    }

    #[test]
    fn bloch_round_trip() {
        let v = [0.3, -0.4, (1.0f64 - 0.25).sqrt()];
        let b = Mat2::from_bloch(v).bloch();
        for k in 0..3 {
            assert!((b[k] - v[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn exponential_is_unitary() {
        let u = Mat2::exp_i_pauli(FRAC_PI_4, Pauli::Y);
        assert!(Unitary2::new(u).is_ok());
        // exp(iσy π/4) sends σz to σx under conjugation u† σz u
        let rotated = u.adjoint() * Pauli::Z.matrix() * u;
        let b = rotated.bloch();
        assert!((b[0].abs() - 1.0).abs() < 1e-12 && b[2].abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Mat2::IDENTITY.scale(Complex::new(1.1, 0.0));
        assert!(matches!(Unitary2::new(m), Err(Error::NotUnitary(_))));
        let nan = Mat2::new(Complex::new(f64::NAN, 0.0), ZERO, ZERO, ONE);
        assert!(matches!(Unitary2::new(nan), Err(Error::NonFinite(_))));
    }
}
