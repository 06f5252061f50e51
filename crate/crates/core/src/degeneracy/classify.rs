use std::f64::consts::FRAC_PI_2;

use crate::bell::{closed_form_value, gamma_map, optimal_bob_directions, BellConfig, MeasurementDirection};
use crate::degeneracy::{
    congruent_mod_pi, CanonicalCase, Orientation, SaturationFamily, TsirelsonClass, SATURATION_TOL, TSIRELSON,
};
use crate::error::{Error, Result};

/// Tolerance on a Bloch component being `0` or `±1` when classifying.
///
/// A saturating value within 1e-9 only pins angles to about `√1e-9`, so this
/// is looser than [`SATURATION_TOL`].
pub const AXIS_TOL: f64 = 1e-4;

fn is_polar(d: &MeasurementDirection) -> bool {
    d.alpha().sin().abs() <= AXIS_TOL
}

fn is_equatorial(d: &MeasurementDirection) -> bool {
    d.alpha().cos().abs() <= AXIS_TOL
}

fn sign(x: f64) -> Orientation {
    if x >= 0.0 {
        Orientation::Plus
    } else {
        Orientation::Minus
    }
}

/// Sorts a configuration with `⟨G|I^N|G⟩ = ±2√2` into one of the three
/// families and an orientation.
pub fn classify_saturating_config(cfg: &BellConfig) -> Result<TsirelsonClass> {
    let value = closed_form_value(cfg);
    if (value.abs() - TSIRELSON).abs() > SATURATION_TOL {
        return Err(Error::NotSaturating(value));
    }
    let all = |dirs: &[MeasurementDirection], f: fn(&MeasurementDirection) -> bool| dirs.iter().all(f);
    let (a0, a1) = (cfg.a0(), cfg.a1());
    let case = if all(a0, is_equatorial) && all(a1, is_equatorial) {
        SaturationFamily::CaseIII
    } else if all(a0, is_polar) && all(a1, is_equatorial) {
        SaturationFamily::CaseI
    } else if all(a0, is_equatorial) && all(a1, is_polar) {
        SaturationFamily::CaseII
    } else {
        return Err(Error::InconsistentConfiguration(
            "saturating configuration matches none of the three Bloch-vector families".into(),
        ));
    };
    if case != SaturationFamily::CaseIII && cfg.n() % 2 == 1 {
        return Err(Error::InconsistentConfiguration(format!("{case:?} found for odd n = {}", cfg.n())));
    }
    let g0 = gamma_map(a0)?.vector;
    let g1 = gamma_map(a1)?.vector;
    let orientation = match case {
        SaturationFamily::CaseI => sign(g0.z),
        SaturationFamily::CaseII => sign(g1.z),
        SaturationFamily::CaseIII => sign(g0.x * g1.y - g0.y * g1.x),
    };
    Ok(TsirelsonClass { case, orientation })
}

/// `(0, …, 0, π/2)` of length `n − 1`, the case-⑤ setting with the largest
/// degeneracy.
pub fn default_phi_primes(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n.saturating_sub(1)];
    if let Some(last) = v.last_mut() {
        *last = FRAC_PI_2;
    }
    v
}

/// The canonical saturating configuration of either family, with Bob's pair
/// set to the optimum for the reduced Alice vectors.
///
/// Case ① needs even `n`. Case ⑤ takes `𝔸₀ = σx^{⊗(N−1)}` and `𝔸₁` at the
/// equatorial angles `phi_primes` (default [`default_phi_primes`]), whose sum
/// must be `π/2` modulo `π`.
pub fn canonical_config(case: CanonicalCase, n: usize, phi_primes: Option<&[f64]>) -> Result<BellConfig> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("n = {n} is below 2")));
    }
    let (a0, a1) = match case {
        CanonicalCase::One => {
            if n % 2 == 1 {
                return Err(Error::Parity(format!("case ① needs an even number of qubits, got n = {n}")));
            }
            if phi_primes.is_some() {
                return Err(Error::InvalidConfig("case ① takes no phi_primes".into()));
            }
            (vec![MeasurementDirection::z_plus(); n - 1], vec![MeasurementDirection::x_plus(); n - 1])
        }
        CanonicalCase::Five => {
            let phis = phi_primes.map(<[f64]>::to_vec).unwrap_or_else(|| default_phi_primes(n));
            if phis.len() != n - 1 {
                return Err(Error::InvalidConfig(format!(
                    "expected {} phi_primes for n = {n}, got {}",
                    n - 1,
                    phis.len()
                )));
            }
            let sum: f64 = phis.iter().sum();
            if !sum.is_finite() {
                return Err(Error::NonFinite("phi_primes"));
            }
            if !congruent_mod_pi(sum, FRAC_PI_2) {
                return Err(Error::PhaseSum(format!("Σφ′ = {sum} is not π/2 modulo π")));
            }
            let a1 = phis.iter().map(|&p| MeasurementDirection::equatorial(p)).collect::<Result<_>>()?;
            (vec![MeasurementDirection::x_plus(); n - 1], a1)
        }
    };
    let g0 = gamma_map(&a0)?.vector;
    let g1 = gamma_map(&a1)?.vector;
    let (b0, b1) = optimal_bob_directions(&g0, &g1)?;
    BellConfig::new(a0, a1, MeasurementDirection::from_bloch(&b0), MeasurementDirection::from_bloch(&b1))
}
