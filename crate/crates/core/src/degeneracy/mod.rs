//! Configurations saturating the Tsirelson bound on `|G⟩`, the local unitary
//! families that leave them invariant, and the degenerate `2√2` eigenspace of
//! the Bell operator.
//!
//! The two canonical families are
//!
//! * [`CanonicalCase::One`]: `𝔸₀ = σz^{⊗(N−1)}`, `𝔸₁ = σx^{⊗(N−1)}` (even N).
//!   The eigenspace is spanned by `|G⟩` with an even number of its first N−1
//!   qubits flipped, `2^{N−2}` states.
//! * [`CanonicalCase::Five`]: `𝔸₀ = σx^{⊗(N−1)}` and `𝔸₁ = ⊗ⱼ(cos φ′ⱼσx + sin φ′ⱼσy)`.
//!   The eigenspace is spanned by the flips `K` with `Σ_{k∈K} φ′ₖ ≡ 0 (mod π)`.

mod basis;
mod classify;
mod experiments;
mod symmetry;

pub use basis::{
    degenerate_basis_case1, degenerate_basis_case5, flip_state, spectral_subspace, SPECTRAL_CHECK_MAX_QUBITS,
};
pub use classify::{canonical_config, classify_saturating_config, default_phi_primes, AXIS_TOL};
pub use experiments::{
    reference_config_n4, reference_example_n4, reference_states_n4, robustness_experiment, uj_family_check,
    ReferenceExample, RobustnessOutcome, UjFamilyCheck,
};
pub use symmetry::{symmetry_triple, verify_ghz_symmetry, GhzSymmetryCheck, SymmetryTriple};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::bell::BellConfig;
use crate::error::{Error, Result};
use crate::qops::{Complex, StateVector};

/// `2√2`.
pub const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Tolerance on `⟨I^N⟩ = ±2√2` and on angle congruences.
pub const SATURATION_TOL: f64 = 1e-9;

/// Largest accepted `‖I^N ψ − λψ‖` for a constructed eigenstate.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Largest accepted deviation of the constructed basis from orthonormality.
pub const ORTHONORMALITY_TOL: f64 = 1e-9;

/// The three saturating families of Bloch-vector arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SaturationFamily {
    /// Alice's setting 0 along `±ẑ` on every qubit, setting 1 equatorial.
    CaseI,
    /// The mirror of `CaseI`.
    CaseII,
    /// Both settings equatorial on every qubit.
    CaseIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

/// Saturation class: the family and which of its two members.
///
/// The orientation is the sign of the reduced `A₀`'s z component for `CaseI`,
/// of `A₁`'s for `CaseII`, and the handedness of the equatorial rotation
/// taking `A₀` to `A₁` for `CaseIII`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TsirelsonClass {
    pub case: SaturationFamily,
    pub orientation: Orientation,
}

impl TsirelsonClass {
    /// Figure label `1..=6`: `CaseI` → 1, 2, `CaseII` → 3, 4, `CaseIII` → 5, 6.
    pub fn label(&self) -> u8 {
        let base = match self.case {
            SaturationFamily::CaseI => 1,
            SaturationFamily::CaseII => 3,
            SaturationFamily::CaseIII => 5,
        };
        base + u8::from(self.orientation == Orientation::Minus)
    }
}

/// The two canonical forms every saturating configuration reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalCase {
    One,
    Five,
}

impl fmt::Display for CanonicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalCase::One => "1",
            CanonicalCase::Five => "5",
        })
    }
}

impl FromStr for CanonicalCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "one" | "case1" | "①" => Ok(CanonicalCase::One),
            "5" | "five" | "case5" | "⑤" => Ok(CanonicalCase::Five),
            other => Err(Error::InvalidLabel(format!("unknown canonical case {other:?}"))),
        }
    }
}

/// How the basis of a [`DegeneracyReport`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Even-size flips of `|G⟩`.
    Case1Flips,
    /// Flips `K` satisfying the phase condition.
    Case5Subsets,
    /// Eigenvectors of the dense operator.
    SpectralOnly,
}

/// A state stored as its nonzero amplitudes, sorted by basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n_qubits: usize,
    entries: Vec<(usize, Complex)>,
}

impl SparseState {
    /// Keeps entries with modulus above `1e-14`.
    pub fn from_dense(state: &StateVector) -> Self {
        let entries = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-14)
            .map(|(i, a)| (i, *a))
            .collect();
        SparseState { n_qubits: state.n_qubits(), entries }
    }

    pub(crate) fn from_entries(n_qubits: usize, mut entries: Vec<(usize, Complex)>) -> Self {
        entries.sort_by_key(|e| e.0);
        SparseState { n_qubits, entries }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn entries(&self) -> &[(usize, Complex)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Result<StateVector> {
        let mut amps = vec![Complex::new(0.0, 0.0); 1usize << self.n_qubits];
        for &(i, a) in &self.entries {
            amps[i] = a;
        }
        StateVector::new(self.n_qubits, amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SparseState) -> Complex {
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (self.entries[i], other.entries[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a.1.conj() * b.1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `|⟨self|other⟩|` against a dense state.
    pub fn overlap_modulus(&self, other: &StateVector) -> f64 {
        let amps = other.amplitudes();
        self.entries.iter().map(|&(i, a)| a.conj() * amps[i]).sum::<Complex>().norm()
    }
}

/// A basis of the eigenspace of the largest eigenvalue, with provenance.
#[derive(Debug, Clone)]
pub struct DegeneracyReport {
    pub config: BellConfig,
    pub max_eigenvalue: f64,
    /// Size of the constructed basis.
    pub multiplicity: usize,
    /// Count of dense eigenvalues within 1e-9 of the maximum, when the dense
    /// check was run.
    pub spectral_multiplicity: Option<usize>,
    pub basis: Vec<SparseState>,
    pub construction: Construction,
    /// 1-based flip sets `K`, in the order of `basis`.
    pub subsets: Option<Vec<Vec<usize>>>,
    /// Largest `‖I^N ψ − λψ‖` over the basis.
    pub max_residual: f64,
    /// Largest deviation of the Gram matrix from the identity.
    pub orthonormality_error: f64,
}

/// Distance from `x` to the nearest multiple of `period`.
pub(crate) fn distance_to_multiple(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    r.min(period - r)
}

/// Whether `x ≡ target (mod period)` within [`SATURATION_TOL`].
pub(crate) fn congruent(x: f64, target: f64, period: f64) -> bool {
    distance_to_multiple(x - target, period) <= SATURATION_TOL
}

pub(crate) fn congruent_mod_pi(x: f64, target: f64) -> bool {
    congruent(x, target, PI)
}
