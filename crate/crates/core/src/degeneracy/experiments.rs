use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{ghz_state, BellConfig, BellOperator, MeasurementDirection};
use crate::degeneracy::{
    basis::flip_state, canonical_config, congruent_mod_pi, symmetry_triple, CanonicalCase, Construction,
    DegeneracyReport, SparseState, RESIDUAL_TOL, TSIRELSON,
};
use crate::error::{Error, Result};
use crate::qops::{
    eigvalsh, expectation, multiplicity_of_max, Complex, DensityMatrix, StateVector, Unitary2, SPECTRAL_TOL,
};

/// The four-qubit saturating configuration with all directions equatorial:
/// `φ = (0, 0, −π/4)`, `φ′ = (π/2, π/2, π/4)`, Bob at `π/2` and `0`.
pub fn reference_config_n4() -> BellConfig {
    let e = |phi: f64| MeasurementDirection::equatorial(phi).expect("finite angle");
    BellConfig::new(
        vec![e(0.0), e(0.0), e(-FRAC_PI_4)],
        vec![e(FRAC_PI_2), e(FRAC_PI_2), e(FRAC_PI_4)],
        e(FRAC_PI_2),
        e(0.0),
    )
    .expect("four-qubit configuration")
}

/// The expected eigenstates, in the order `K = ∅, {1,2}, {1,3}, {2,3}`:
/// `|0000⟩+|1111⟩`, `|1100⟩+|0011⟩`, `e^{−iπ/4}|1010⟩+e^{iπ/4}|0101⟩`,
/// `e^{−iπ/4}|0110⟩+e^{iπ/4}|1001⟩`, each over `√2`.
pub fn reference_states_n4() -> Vec<StateVector> {
    let h = FRAC_1_SQRT_2;
    let minus = Complex::from_polar(h, -FRAC_PI_4);
    let plus = Complex::from_polar(h, FRAC_PI_4);
    let real = Complex::new(h, 0.0);
    [
        [(0b0000, real), (0b1111, real)],
        [(0b1100, real), (0b0011, real)],
        [(0b1010, minus), (0b0101, plus)],
        [(0b0110, minus), (0b1001, plus)],
    ]
    .iter()
    .map(|pair| {
        let mut amps = vec![Complex::new(0.0, 0.0); 16];
        for &(i, a) in pair {
            amps[i] = a;
        }
        StateVector::new(4, amps).expect("normalized")
    })
    .collect()
}

/// The degenerate subspace of the four-qubit reference configuration and its
/// agreement with [`reference_states_n4`].
#[derive(Debug, Clone)]
pub struct ReferenceExample {
    pub report: DegeneracyReport,
    /// `φ′` after rotating qubits 3 and 4 about z by `π/4` and `−π/4`.
    pub rotated_phi_primes: Vec<f64>,
    pub expected: Vec<StateVector>,
    /// `|⟨expected_i|basis_i⟩|`.
    pub fidelities: Vec<f64>,
}

/// Rotates the reference configuration into the case-⑤ form, enumerates the
/// flip sets there, rotates the flip states back and checks them against the
/// original operator.
pub fn reference_example_n4() -> Result<ReferenceExample> {
    let cfg = reference_config_n4();
    let n = cfg.n();
    let rotated = cfg.rotate_qubit_about_z(2, FRAC_PI_4)?.rotate_qubit_about_z(3, -FRAC_PI_4)?;
    let phi_primes: Vec<f64> = rotated.a1().iter().map(|d| d.phi()).collect();
    if rotated.a0().iter().any(|d| d.phi().sin().abs() > 1e-12) {
        return Err(Error::CrossCheck("rotated setting 0 is not along x".into()));
    }
    let mut subsets: Vec<Vec<usize>> = (0..1usize << (n - 1))
        .map(|bits| (1..n).filter(|k| bits >> (k - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|k: &Vec<usize>| congruent_mod_pi(k.iter().map(|&j| phi_primes[j - 1]).sum(), 0.0))
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut rotation = vec![Unitary2::IDENTITY; n];
    rotation[2] = Unitary2::rz(FRAC_PI_4);
    rotation[3] = Unitary2::rz(-FRAC_PI_4);
    let basis = subsets
        .iter()
        .map(|k| Ok(SparseState::from_dense(&flip_state(n, k)?.to_dense()?.apply_product(&rotation)?)))
        .collect::<Result<Vec<_>>>()?;

    let op = BellOperator::new(&cfg);
    let mut residual: f64 = 0.0;
    for s in &basis {
        residual = residual.max(op.eigen_residual(&s.to_dense()?, TSIRELSON)?);
    }
    if residual >= RESIDUAL_TOL {
        return Err(Error::CrossCheck(format!("reference state residual {residual:e}")));
    }
    let values = eigvalsh(&op.to_dense()?)?;
    let count = multiplicity_of_max(&values, SPECTRAL_TOL)?;
    let mut ortho: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((a.inner(b) - Complex::new(target, 0.0)).norm());
        }
    }

    let expected = reference_states_n4();
    let fidelities = expected.iter().zip(&basis).map(|(e, b)| b.overlap_modulus(e)).collect();
    Ok(ReferenceExample {
        report: DegeneracyReport {
            config: cfg,
            max_eigenvalue: TSIRELSON,
            multiplicity: basis.len(),
            spectral_multiplicity: Some(count),
            basis,
            construction: Construction::Case5Subsets,
            subsets: Some(subsets),
            max_residual: residual,
            orthonormality_error: ortho,
        },
        rotated_phi_primes: phi_primes,
        expected,
        fidelities,
    })
}

/// Outcome of applying `⊗ⱼ uⱼ` with `uⱼ = (v or w)·e^{iσzδⱼ/2}` and
/// `u_N = (u·e^{iσzδ/2})*`, `δ = Σδⱼ`, to `|G⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct UjFamilyCheck {
    pub bell_value: f64,
    pub reference_value: f64,
    /// `|bell_value − reference_value| ≤ 1e-10`.
    pub value_preserved: bool,
    pub residual: f64,
    /// Residual at `2√2` below 1e-8.
    pub is_eigenstate: bool,
    /// Flip set of the predicted state `⊗_{k∈K}σx^k|G⟩`.
    pub predicted_subset: Vec<usize>,
    pub predicted_overlap: f64,
    pub matches_prediction: bool,
}

/// Builds the transformed GHZ state for the canonical configuration of `case`
/// and checks that it keeps the Bell value and stays in the `2√2` eigenspace.
///
/// `w_positions` are 1-based qubits carrying `w` instead of `v`. Case ① needs
/// an even number of them; case ⑤ needs `Σ_{k∈w} φ′ₖ ≡ 0 (mod π)`.
pub fn uj_family_check(
    case: CanonicalCase,
    nu: u8,
    n: usize,
    deltas: &[f64],
    w_positions: &[usize],
    phi_primes: Option<&[f64]>,
) -> Result<UjFamilyCheck> {
    if deltas.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "expected {} deltas, got {}",
            n.saturating_sub(1),
            deltas.len()
        )));
    }
    if deltas.iter().any(|d| !d.is_finite()) {
        return Err(Error::NonFinite("deltas"));
    }
    let mut w_sorted = w_positions.to_vec();
    w_sorted.sort_unstable();
    w_sorted.dedup();
    if w_sorted.len() != w_positions.len() || w_sorted.iter().any(|&k| k == 0 || k >= n) {
        return Err(Error::Precondition(format!("w positions must be distinct labels in 1..{n}")));
    }
    let cfg = canonical_config(case, n, phi_primes)?;
    let triple = symmetry_triple(case, nu, n)?;
    match case {
        CanonicalCase::One => {
            if w_sorted.len() % 2 == 1 {
                return Err(Error::Precondition("case ① needs an even number of w factors".into()));
            }
        }
        CanonicalCase::Five => {
            let phis: Vec<f64> = cfg.a1().iter().map(|d| d.phi()).collect();
            if !congruent_mod_pi(w_sorted.iter().map(|&k| phis[k - 1]).sum(), 0.0) {
                return Err(Error::Precondition("Σφ′ over the w positions is not 0 modulo π".into()));
            }
        }
    }
    let delta: f64 = deltas.iter().sum();
    let mut ops: Vec<Unitary2> = deltas
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let base = if w_sorted.contains(&(j + 1)) { triple.w } else { triple.v };
            base * Unitary2::rz(d)
        })
        .collect();
    ops.push((triple.u * Unitary2::rz(delta.rem_euclid(TAU))).conj());

    let g = ghz_state(n)?;
    let state = g.apply_product(&ops)?;
    let op = BellOperator::new(&cfg);
    let bell_value = op.expectation(&state)?;
    let reference_value = op.expectation(&g)?;
    let residual = op.eigen_residual(&state, TSIRELSON)?;
    let predicted_subset =
        if case == CanonicalCase::One && matches!(nu, 3 | 4) { Vec::new() } else { w_sorted };
    let predicted = flip_state(n, &predicted_subset)?;
    let predicted_overlap = predicted.overlap_modulus(&state);
    Ok(UjFamilyCheck {
        bell_value,
        reference_value,
        value_preserved: (bell_value - reference_value).abs() <= 1e-10,
        residual,
        is_eigenstate: residual < RESIDUAL_TOL,
        predicted_subset,
        predicted_overlap,
        matches_prediction: (predicted_overlap - 1.0).abs() <= 1e-10,
    })
}

/// Bell value of a mixture or a random-phase superposition of a degenerate
/// basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessOutcome {
    pub value: f64,
    pub expected: f64,
    /// `|value − expected| ≤ 1e-10`.
    pub holds: bool,
}

/// `Tr(ρ I^N)` for `ρ = Σ pᵢ|ψᵢ⟩⟨ψᵢ|`, or `⟨ψ|I^N|ψ⟩` for
/// `ψ = Σ √pᵢ e^{iθᵢ}|ψᵢ⟩` with phases drawn from `seed`.
pub fn robustness_experiment(
    report: &DegeneracyReport,
    weights: &[f64],
    superpose: bool,
    seed: u64,
) -> Result<RobustnessOutcome> {
    if weights.len() != report.basis.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for a basis of {} states",
            weights.len(),
            report.basis.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidWeights("weights must be finite and nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let states = report.basis.iter().map(SparseState::to_dense).collect::<Result<Vec<_>>>()?;
    let n = report.config.n();
    let value = if superpose {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps = vec![Complex::new(0.0, 0.0); 1usize << n];
        for (w, s) in weights.iter().zip(&states) {
            let c = Complex::from_polar(w.sqrt(), rng.random_range(0.0..TAU));
            for (a, b) in amps.iter_mut().zip(s.amplitudes()) {
                *a += c * b;
            }
        }
        BellOperator::new(&report.config).expectation(&StateVector::normalized(n, amps)?)?
    } else {
        let parts: Vec<(f64, &StateVector)> = weights.iter().copied().zip(&states).collect();
        let rho = DensityMatrix::mixture(&parts)?;
        expectation(&rho, &BellOperator::new(&report.config).to_dense()?)?
    };
    Ok(RobustnessOutcome {
        value,
        expected: report.max_eigenvalue,
        holds: (value - report.max_eigenvalue).abs() <= 1e-10,
    })
}
