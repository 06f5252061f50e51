use crate::error::{Error, Result};
use crate::qops::{
    check_qubits, eig::eigvalsh, mat2::Mat2, Complex, HermitianOperator, Unitary2, ALGEBRAIC_TOL,
};

/// A normalized pure state of `n_qubits` qubits.
///
/// Basis index bit `n_qubits - 1 - q` belongs to qubit `q`, so qubit 0 is the
/// leftmost tensor factor and `|11…1⟩` is the last basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Builds a state, requiring `Σ|a|² = 1` within 1e-12.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: amplitudes.len() });
        }
        if !amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::NonFinite("state vector"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector { n_qubits, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm before validating.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(n_qubits, amplitudes)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amplitudes = vec![Complex::new(0.0, 0.0); dim];
        amplitudes[index] = Complex::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`, equal to 1 exactly when the states agree up to a global phase.
    pub fn overlap_modulus(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Applies `u` to qubit `qubit` (0-based, leftmost first).
    pub fn apply_local(&self, qubit: usize, u: &Unitary2) -> Result<StateVector> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidQubitCount(qubit));
        }
        let mut amplitudes = self.amplitudes.clone();
        apply_local_in_place(&mut amplitudes, self.n_qubits, qubit, u.matrix());
        Ok(StateVector { n_qubits: self.n_qubits, amplitudes })
    }

    /// Applies one unitary per qubit, `u[0] ⊗ u[1] ⊗ …`.
    pub fn apply_product(&self, us: &[Unitary2]) -> Result<StateVector> {
        if us.len() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, found: us.len() });
        }
        let mut amplitudes = self.amplitudes.clone();
        for (q, u) in us.iter().enumerate() {
            apply_local_in_place(&mut amplitudes, self.n_qubits, q, u.matrix());
        }
        Ok(StateVector { n_qubits: self.n_qubits, amplitudes })
    }

    pub(crate) fn kron(&self, rhs: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * rhs.dim());
        for a in &self.amplitudes {
            amplitudes.extend(rhs.amplitudes.iter().map(|b| a * b));
        }
        StateVector { n_qubits: self.n_qubits + rhs.n_qubits, amplitudes }
    }
}

/// In-place `m` on one qubit of a raw amplitude vector.
pub(crate) fn apply_local_in_place(amps: &mut [Complex], n_qubits: usize, qubit: usize, m: &Mat2) {
    let stride = 1usize << (n_qubits - 1 - qubit);
    let block = stride << 1;
    for base in (0..amps.len()).step_by(block) {
        for i in base..base + stride {
            let [lo, hi] = m.apply([amps[i], amps[i + stride]]);
            amps[i] = lo;
            amps[i + stride] = hi;
        }
    }
}

/// A density matrix: Hermitian, unit trace, eigenvalues ≥ −1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    inner: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, entries: Vec<Complex>) -> Result<Self> {
        let inner = HermitianOperator::new(n_qubits, entries)?;
        let trace = inner.trace();
        if (trace - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotDensityMatrix(format!("trace {trace}")));
        }
        let lowest = eigvalsh(&inner)?[0];
        if lowest < -1e-10 {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {lowest:e}")));
        }
        Ok(DensityMatrix { inner })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(state: &StateVector) -> Self {
        Self::mixture_unchecked(&[(1.0, state)])
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|` for nonnegative weights summing to one.
    pub fn mixture(components: &[(f64, &StateVector)]) -> Result<Self> {
        let first = components.first().ok_or(Error::Empty("mixture"))?.1;
        let mut total = 0.0;
        for &(p, s) in components {
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::InvalidWeights(format!("weight {p}")));
            }
            if s.n_qubits() != first.n_qubits() {
                return Err(Error::DimensionMismatch { expected: first.n_qubits(), found: s.n_qubits() });
            }
            total += p;
        }
        if (total - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        let rho = Self::mixture_unchecked(components);
        Self::new(rho.n_qubits(), rho.inner.into_entries())
    }

    fn mixture_unchecked(components: &[(f64, &StateVector)]) -> Self {
        let n = components[0].1.n_qubits();
        let dim = 1usize << n;
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for &(p, s) in components {
            let a = s.amplitudes();
            for i in 0..dim {
                let ai = a[i] * p;
                if ai == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    entries[i * dim + j] += ai * a[j].conj();
                }
            }
        }
        DensityMatrix { inner: HermitianOperator::from_entries_unchecked(n, entries) }
    }

    pub fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    pub fn as_operator(&self) -> &HermitianOperator {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::Pauli;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_states() {
        assert!(matches!(StateVector::new(1, vec![c(1.0), c(1.0)]), Err(Error::NotNormalized(_))));
        assert!(matches!(StateVector::new(2, vec![c(1.0), c(0.0)]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(StateVector::new(1, vec![c(f64::NAN), c(0.0)]), Err(Error::NonFinite(_))));
        assert!(matches!(StateVector::basis(15, 0), Err(Error::Capacity { .. })));
        assert!(StateVector::normalized(1, vec![c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn local_application_respects_qubit_order() {
        // σx on qubit 0 of |00⟩ gives |10⟩, index 2
        let s = StateVector::basis(2, 0).unwrap();
        let flipped = s.apply_local(0, &Unitary2::pauli(Pauli::X)).unwrap();
        assert_eq!(flipped.amplitudes()[2], c(1.0));
        let flipped = s.apply_local(1, &Unitary2::pauli(Pauli::X)).unwrap();
        assert_eq!(flipped.amplitudes()[1], c(1.0));
    }

    #[test]
    fn density_matrix_validation() {
        let plus = StateVector::normalized(1, vec![c(1.0), c(1.0)]).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        let rho = DensityMatrix::mixture(&[(0.5, &plus), (0.5, &zero)]).unwrap();
        assert!((rho.as_operator().trace() - 1.0).abs() < 1e-15);
        assert!(matches!(
            DensityMatrix::mixture(&[(0.7, &plus), (0.7, &zero)]),
            Err(Error::InvalidWeights(_))
        ));
        // diag(1.5, -0.5) has unit trace but is not positive
        assert!(matches!(
            DensityMatrix::new(1, vec![c(1.5), c(0.0), c(0.0), c(-0.5)]),
            Err(Error::NotDensityMatrix(_))
        ));
    }
}
