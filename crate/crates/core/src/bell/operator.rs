use std::f64::consts::FRAC_1_SQRT_2;

use crate::bell::{BellConfig, MeasurementDirection};
use crate::error::{Error, Result};
use crate::qops::{
    apply_local_in_place, check_qubits, pauli_observable, tensor, Complex, HermitianOperator, Mat2,
    StateVector, MAX_QUBITS,
};

/// `(|0…0⟩ + |1…1⟩)/√2`; `|+⟩` for one qubit and `|ψ₊⟩` for two.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    let dim = check_qubits(n)?;
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    amps[0] = Complex::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(n, amps)
}

/// GHZ correlation `⟨G|⊗ⱼ nⱼ·σ|G⟩` in closed form:
/// `½[1+(−1)ⁿ] Πcos αⱼ + cos(Σφⱼ) Πsin αⱼ`.
pub fn closed_form_expectation(dirs: &[MeasurementDirection]) -> Result<f64> {
    let n = dirs.len();
    if n == 0 {
        return Err(Error::InvalidQubitCount(0));
    }
    if n > MAX_QUBITS {
        return Err(Error::Capacity { qubits: n, max: MAX_QUBITS });
    }
    let prod_cos: f64 = dirs.iter().map(|d| d.alpha().cos()).product();
    let prod_sin: f64 = dirs.iter().map(|d| d.alpha().sin()).product();
    let phase: f64 = dirs.iter().map(|d| d.phi()).sum();
    let parity = if n % 2 == 0 { 1.0 } else { 0.0 };
    Ok(parity * prod_cos + phase.cos() * prod_sin)
}

/// `⟨G|I^N|G⟩ = Σ_ab (−1)^{ab} ⟨𝔸_a ⊗ 𝔹_b⟩` from the closed form.
pub fn closed_form_value(cfg: &BellConfig) -> f64 {
    let mut total = 0.0;
    for (a, b, sign) in TERMS {
        // directions come from a validated config, so the closed form cannot fail
        total += sign * closed_form_expectation(&cfg.term_directions(a, b)).expect("valid config");
    }
    total
}

/// The four `(a, b, (−1)^{ab})` terms of the CHSH combination.
pub const TERMS: [(usize, usize, f64); 4] = [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)];

/// The generalized CHSH operator kept in factored form,
/// `𝔸₀⊗(𝔹₀+𝔹₁) + 𝔸₁⊗(𝔹₀−𝔹₁)`, so it can act on states without a dense matrix.
#[derive(Debug, Clone)]
pub struct BellOperator {
    n: usize,
    alice: [Vec<Mat2>; 2],
    bob_sum: Mat2,
    bob_diff: Mat2,
}

impl BellOperator {
    pub fn new(cfg: &BellConfig) -> Self {
        let local = |dirs: &[MeasurementDirection]| dirs.iter().map(|d| d.matrix()).collect();
        let (b0, b1) = (cfg.b0().matrix(), cfg.b1().matrix());
        BellOperator {
            n: cfg.n(),
            alice: [local(cfg.a0()), local(cfg.a1())],
            bob_sum: b0 + b1,
            bob_diff: b0 - b1,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// `I^N |ψ⟩` computed factor by factor.
    pub fn apply(&self, state: &StateVector) -> Result<Vec<Complex>> {
        if state.n_qubits() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: state.n_qubits() });
        }
        let mut out = vec![Complex::new(0.0, 0.0); state.dim()];
        for (alice, bob) in [(&self.alice[0], &self.bob_sum), (&self.alice[1], &self.bob_diff)] {
            let mut v = state.amplitudes().to_vec();
            for (q, m) in alice.iter().enumerate() {
                apply_local_in_place(&mut v, self.n, q, m);
            }
            apply_local_in_place(&mut v, self.n, self.n - 1, bob);
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        Ok(out)
    }

    /// `⟨ψ|I^N|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        let image = self.apply(state)?;
        let value: Complex = state.amplitudes().iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
        if value.im.abs() >= crate::qops::IMAGINARY_RESIDUE_TOL {
            return Err(Error::ImaginaryResidue(value.im));
        }
        Ok(value.re)
    }

    /// `‖I^N ψ − λψ‖`.
    pub fn eigen_residual(&self, state: &StateVector, lambda: f64) -> Result<f64> {
        let image = self.apply(state)?;
        Ok(image.iter().zip(state.amplitudes()).map(|(a, b)| (a - b * lambda).norm_sqr()).sum::<f64>().sqrt())
    }

    /// The dense `2ⁿ × 2ⁿ` matrix.
    pub fn to_dense(&self) -> Result<HermitianOperator> {
        let alice_dense = |locals: &[Mat2]| -> Result<HermitianOperator> {
            let ops = locals.iter().map(HermitianOperator::from_mat2).collect::<Result<Vec<_>>>()?;
            tensor(&ops.iter().collect::<Vec<_>>())
        };
        let a0 = alice_dense(&self.alice[0])?;
        let a1 = alice_dense(&self.alice[1])?;
        let half = a0.dim();
        let dim = half * 2;
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..half {
            for j in 0..half {
                let (x0, x1) = (a0.get(i, j), a1.get(i, j));
                for k in 0..2 {
                    let row = (2 * i + k) * dim + 2 * j;
                    for l in 0..2 {
                        entries[row + l] = x0 * self.bob_sum.get(k, l) + x1 * self.bob_diff.get(k, l);
                    }
                }
            }
        }
        HermitianOperator::new(self.n, entries)
    }
}

/// Dense `I^N = 𝔸₀⊗𝔹₀ + 𝔸₀⊗𝔹₁ + 𝔸₁⊗𝔹₀ − 𝔸₁⊗𝔹₁`.
pub fn bell_operator(cfg: &BellConfig) -> Result<HermitianOperator> {
    BellOperator::new(cfg).to_dense()
}

/// Dense `⊗ⱼ nⱼ·σ` for the given local directions.
pub fn product_observable(dirs: &[MeasurementDirection]) -> Result<HermitianOperator> {
    let ops: Vec<HermitianOperator> = dirs.iter().map(pauli_observable).collect();
    tensor(&ops.iter().collect::<Vec<_>>())
}
