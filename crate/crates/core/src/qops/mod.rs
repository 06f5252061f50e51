//! Dense complex linear algebra for small qubit registers: states, Hermitian
//! operators, tensor products, Pauli observables, expectation values and the
//! Hermitian eigendecomposition.
//!
//! Everything here is an immutable value; operations return new values and may
//! be evaluated from several threads at once.

pub mod eig;
mod mat2;
mod operator;
mod state;

pub use eig::{eig_hermitian, eigvalsh, multiplicity_of_max, HermitianEigen};
pub use mat2::{Mat2, Pauli, Unitary2};
pub use operator::HermitianOperator;
pub use state::{DensityMatrix, StateVector};

pub(crate) use state::apply_local_in_place;

use crate::bell::MeasurementDirection;
use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Largest register handled densely (matrix side 16384).
pub const MAX_QUBITS: usize = 14;

/// Default tolerance for grouping eigenvalues.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Default tolerance for algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Largest imaginary part tolerated in an expectation value.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

pub(crate) fn check_qubits(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 {
        return Err(Error::InvalidQubitCount(0));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity { qubits: n_qubits, max: MAX_QUBITS });
    }
    Ok(1usize << n_qubits)
}

/// Values that combine under the Kronecker product.
pub trait Kron: Sized {
    fn n_qubits(&self) -> usize;

    #[doc(hidden)]
    fn kron_unchecked(&self, rhs: &Self) -> Self;
}

impl Kron for HermitianOperator {
    fn n_qubits(&self) -> usize {
        HermitianOperator::n_qubits(self)
    }

    fn kron_unchecked(&self, rhs: &Self) -> Self {
        self.kron(rhs)
    }
}

impl Kron for StateVector {
    fn n_qubits(&self) -> usize {
        StateVector::n_qubits(self)
    }

    fn kron_unchecked(&self, rhs: &Self) -> Self {
        self.kron(rhs)
    }
}

/// Kronecker product in left-to-right order; the first factor holds the most
/// significant qubits.
pub fn tensor<T: Kron + Clone>(parts: &[&T]) -> Result<T> {
    let (first, rest) = parts.split_first().ok_or(Error::Empty("tensor factors"))?;
    let total: usize = parts.iter().map(|p| p.n_qubits()).sum();
    if total > MAX_QUBITS {
        return Err(Error::Capacity { qubits: total, max: MAX_QUBITS });
    }
    Ok(rest.iter().fold((*first).clone(), |acc, p| acc.kron_unchecked(p)))
}

/// `sin α cos φ·σx + sin α sin φ·σy + cos α·σz`.
pub fn pauli_observable(dir: &MeasurementDirection) -> HermitianOperator {
    let m = Mat2::from_bloch(dir.bloch());
    HermitianOperator::from_entries_unchecked(1, m.0.iter().flatten().copied().collect())
}

/// Anything an expectation value can be taken in.
pub trait QuantumState {
    fn n_qubits(&self) -> usize;

    /// Complex value of `⟨ψ|O|ψ⟩` or `Tr(ρO)`, before the imaginary part is dropped.
    fn raw_expectation(&self, op: &HermitianOperator) -> Result<Complex>;
}

impl QuantumState for StateVector {
    fn n_qubits(&self) -> usize {
        StateVector::n_qubits(self)
    }

    fn raw_expectation(&self, op: &HermitianOperator) -> Result<Complex> {
        let ov = op.apply_state(self)?;
        Ok(self.amplitudes().iter().zip(&ov).map(|(a, b)| a.conj() * b).sum())
    }
}

impl QuantumState for DensityMatrix {
    fn n_qubits(&self) -> usize {
        DensityMatrix::n_qubits(self)
    }

    fn raw_expectation(&self, op: &HermitianOperator) -> Result<Complex> {
        let rho = self.as_operator();
        if rho.dim() != op.dim() {
            return Err(Error::DimensionMismatch { expected: rho.dim(), found: op.dim() });
        }
        let d = rho.dim();
        // Tr(ρO) = Σ_ij ρ_ij O_ji
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += rho.get(i, j) * op.get(j, i);
            }
        }
        Ok(acc)
    }
}

/// Real expectation value; fails if the discarded imaginary part exceeds 1e-10.
pub fn expectation<S: QuantumState + ?Sized>(state: &S, op: &HermitianOperator) -> Result<f64> {
    if state.n_qubits() != op.n_qubits() {
        return Err(Error::DimensionMismatch { expected: state.n_qubits(), found: op.n_qubits() });
    }
    let value = state.raw_expectation(op)?;
    if value.im.abs() >= IMAGINARY_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}
