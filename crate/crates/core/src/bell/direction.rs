use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::qops::{Mat2, ALGEBRAIC_TOL, MAX_QUBITS};

/// A measurement direction on the Bloch sphere, `α ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    alpha: f64,
    phi: f64,
}

impl MeasurementDirection {
    /// Normalizes arbitrary finite angles into the canonical ranges, keeping
    /// the Bloch vector unchanged.
    pub fn new(alpha: f64, phi: f64) -> Result<Self> {
        if !(alpha.is_finite() && phi.is_finite()) {
            return Err(Error::NonFinite("measurement direction"));
        }
        Ok(Self::normalized(alpha, phi))
    }

    pub(crate) fn normalized(alpha: f64, phi: f64) -> Self {
        let mut alpha = alpha.rem_euclid(TAU);
        let mut phi = phi;
        if alpha > PI {
            alpha = TAU - alpha;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        MeasurementDirection { alpha, phi }
    }

    /// A direction on the equator, `α = π/2`.
    pub fn equatorial(phi: f64) -> Result<Self> {
        Self::new(PI / 2.0, phi)
    }

    pub fn z_plus() -> Self {
        MeasurementDirection { alpha: 0.0, phi: 0.0 }
    }

    pub fn x_plus() -> Self {
        MeasurementDirection { alpha: PI / 2.0, phi: 0.0 }
    }

    /// Inverse of [`bloch`](Self::bloch) for a unit vector.
    pub fn from_bloch(v: &BlochVector) -> Self {
        let alpha = v.z.clamp(-1.0, 1.0).acos();
        let phi = if v.x == 0.0 && v.y == 0.0 { 0.0 } else { v.y.atan2(v.x) };
        Self::normalized(alpha, phi)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(sin α cos φ, sin α sin φ, cos α)`.
    pub fn bloch(&self) -> [f64; 3] {
        let (sa, ca) = self.alpha.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [sa * cp, sa * sp, ca]
    }

    pub fn bloch_vector(&self) -> BlochVector {
        let [x, y, z] = self.bloch();
        BlochVector { x, y, z }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::from_bloch(self.bloch())
    }

    /// The direction after conjugation by `exp(iσz θ/2)`, i.e. `φ → φ + θ`.
    pub fn rotated_about_z(&self, theta: f64) -> Self {
        Self::normalized(self.alpha, self.phi + theta)
    }

    /// A direction uniform on the sphere (`cos α` uniform, `φ` uniform).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cos_alpha: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..TAU);
        Self::normalized(cos_alpha.acos(), phi)
    }
}

/// A unit 3-vector `n` labelling the observable `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Requires Euclidean norm 1 within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("Bloch vector"));
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(BlochVector { x, y, z })
    }

    /// Scales a nonzero vector to unit length.
    pub fn normalize(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(BlochVector { x: v[0] / norm, y: v[1] / norm, z: v[2] / norm })
    }

    pub(crate) fn from_array_unchecked(v: [f64; 3]) -> Self {
        BlochVector { x: v[0], y: v[1], z: v[2] }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::from_bloch(self.to_array())
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let d = [self.x - other.x, self.y - other.y, self.z - other.z];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// The N-qubit measurement configuration: Alice's two product observables on
/// qubits `1..N-1` and Bob's two observables on qubit `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellConfig {
    n: usize,
    a0: Vec<MeasurementDirection>,
    a1: Vec<MeasurementDirection>,
    b0: MeasurementDirection,
    b1: MeasurementDirection,
}

impl BellConfig {
    pub fn new(
        a0: Vec<MeasurementDirection>,
        a1: Vec<MeasurementDirection>,
        b0: MeasurementDirection,
        b1: MeasurementDirection,
    ) -> Result<Self> {
        let n = a0.len() + 1;
        if a0.is_empty() {
            return Err(Error::InvalidConfig("n must be at least 2".into()));
        }
        if a1.len() != a0.len() {
            return Err(Error::InvalidConfig(format!(
                "a0 has {} directions but a1 has {}",
                a0.len(),
                a1.len()
            )));
        }
        if n > MAX_QUBITS {
            return Err(Error::Capacity { qubits: n, max: MAX_QUBITS });
        }
        Ok(BellConfig { n, a0, a1, b0, b1 })
    }

    /// Like [`new`](Self::new) but also checks the declared qubit count.
    pub fn with_n(
        n: usize,
        a0: Vec<MeasurementDirection>,
        a1: Vec<MeasurementDirection>,
        b0: MeasurementDirection,
        b1: MeasurementDirection,
    ) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Capacity { qubits: n, max: MAX_QUBITS });
        }
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n = {n} is below 2")));
        }
        if a0.len() != n - 1 || a1.len() != n - 1 {
            return Err(Error::InvalidConfig(format!(
                "expected {} directions per Alice setting, found {} and {}",
                n - 1,
                a0.len(),
                a1.len()
            )));
        }
        Self::new(a0, a1, b0, b1)
    }

    /// A configuration with every direction drawn uniformly on the sphere.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n = {n} is below 2")));
        }
        let a0 = (0..n - 1).map(|_| MeasurementDirection::random(rng)).collect();
        let a1 = (0..n - 1).map(|_| MeasurementDirection::random(rng)).collect();
        let b0 = MeasurementDirection::random(rng);
        let b1 = MeasurementDirection::random(rng);
        Self::new(a0, a1, b0, b1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a0(&self) -> &[MeasurementDirection] {
        &self.a0
    }

    pub fn a1(&self) -> &[MeasurementDirection] {
        &self.a1
    }

    pub fn b0(&self) -> MeasurementDirection {
        self.b0
    }

    pub fn b1(&self) -> MeasurementDirection {
        self.b1
    }

    pub fn alice(&self, a: usize) -> &[MeasurementDirection] {
        if a == 0 {
            &self.a0
        } else {
            &self.a1
        }
    }

    pub fn bob(&self, b: usize) -> MeasurementDirection {
        if b == 0 {
            self.b0
        } else {
            self.b1
        }
    }

    /// All `n` local directions of the term `𝔸_a ⊗ 𝔹_b`.
    pub fn term_directions(&self, a: usize, b: usize) -> Vec<MeasurementDirection> {
        let mut dirs = self.alice(a).to_vec();
        dirs.push(self.bob(b));
        dirs
    }

    /// Rotates qubit `qubit` (0-based) of both settings about z by `theta`.
    pub fn rotate_qubit_about_z(&self, qubit: usize, theta: f64) -> Result<Self> {
        let mut cfg = self.clone();
        if qubit + 1 < self.n {
            cfg.a0[qubit] = cfg.a0[qubit].rotated_about_z(theta);
            cfg.a1[qubit] = cfg.a1[qubit].rotated_about_z(theta);
        } else if qubit + 1 == self.n {
            cfg.b0 = cfg.b0.rotated_about_z(theta);
            cfg.b1 = cfg.b1.rotated_about_z(theta);
        } else {
            return Err(Error::InvalidQubitCount(qubit));
        }
        Ok(cfg)
    }
}
