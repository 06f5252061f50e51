use crate::error::{Error, Result};
use crate::qops::{check_qubits, mat2::Mat2, Complex, StateVector, ALGEBRAIC_TOL};

/// A dense Hermitian operator on `n_qubits` qubits, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    n_qubits: usize,
    dim: usize,
    entries: Vec<Complex>,
}

impl HermitianOperator {
    /// Validates `entries[i][j] = conj(entries[j][i])` within 1e-12.
    pub fn new(n_qubits: usize, entries: Vec<Complex>) -> Result<Self> {
        Self::with_tolerance(n_qubits, entries, ALGEBRAIC_TOL)
    }

    pub fn with_tolerance(n_qubits: usize, entries: Vec<Complex>, tol: f64) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("operator"));
        }
        let op = HermitianOperator { n_qubits, dim, entries };
        let dev = op.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        Ok(op)
    }

    pub(crate) fn from_entries_unchecked(n_qubits: usize, entries: Vec<Complex>) -> Self {
        let dim = 1usize << n_qubits;
        debug_assert_eq!(entries.len(), dim * dim);
        HermitianOperator { n_qubits, dim, entries }
    }

    pub fn from_mat2(m: &Mat2) -> Result<Self> {
        Self::new(1, m.0.iter().flatten().copied().collect())
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(1.0, 0.0);
        }
        Ok(HermitianOperator { n_qubits, dim, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex> {
        self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    /// The 2×2 matrix of a single-qubit operator.
    pub fn as_mat2(&self) -> Option<Mat2> {
        (self.n_qubits == 1).then(|| {
            let e = &self.entries;
            Mat2([[e[0], e[1]], [e[2], e[3]]])
        })
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// True when every entry has a zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| f(a, b)).collect();
        Ok(HermitianOperator { n_qubits: self.n_qubits, dim: self.dim, entries })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|z| z * s).collect();
        HermitianOperator { n_qubits: self.n_qubits, dim: self.dim, entries }
    }

    /// Product `self · rhs` of two (commuting or not) operators, returned as
    /// raw row-major entries since the product need not be Hermitian.
    pub fn matmul_raw(&self, rhs: &Self) -> Result<Vec<Complex>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let d = self.dim;
        let mut out = vec![Complex::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        Ok(out)
    }

    /// `O·v` for a raw vector of matching dimension.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn apply_state(&self, s: &StateVector) -> Result<Vec<Complex>> {
        self.apply(s.amplitudes())
    }

    pub(crate) fn kron(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim, rhs.dim);
        let dim = da * db;
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..da {
            for j in 0..da {
                let a = self.entries[i * da + j];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..db {
                    let row = (i * db + k) * dim + j * db;
                    for l in 0..db {
                        entries[row + l] = a * rhs.entries[k * db + l];
                    }
                }
            }
        }
        HermitianOperator { n_qubits: self.n_qubits + rhs.n_qubits, dim, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let z = Complex::new(0.0, 0.0);
        let entries = vec![z, Complex::new(1.0, 0.0), Complex::new(0.0, 1.0), z];
        assert!(matches!(HermitianOperator::new(1, entries), Err(Error::NotHermitian(_))));
        assert!(matches!(HermitianOperator::new(1, vec![z; 3]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn identity_trace() {
        assert_eq!(HermitianOperator::identity(3).unwrap().trace(), 8.0);
    }
}
