//! Mapping of the N-qubit CHSH function onto the two-qubit CHSH function.
//!
//! Alice's (N−1)-qubit product observable `⊗ⱼ nⱼ·σ` is replaced by a single
//! Bloch vector `Γ[𝔸]` whose correlations with `|ψ₊⟩` reproduce the GHZ
//! correlations up to the normalizer `ε ≥ 1`. For odd N Bob's observable is
//! projected onto the equator (`Θ`), which rescales each term by `1/sin α_N`.

use crate::bell::{closed_form_value, BellConfig, BlochVector, MeasurementDirection, TERMS};
use crate::error::{Error, Result};

/// Cutoff below which `(Πcos α)² + (Πsin α)²` or `|sin α_N|` counts as zero.
pub const EXCLUDED_SET_TOL: f64 = 1e-9;

/// Output of [`gamma_map`]: the unit Bloch vector and its normalizer `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaImage {
    pub vector: BlochVector,
    pub eps: f64,
}

/// `Γ[⊗ⱼ nⱼ·σ] = (sin γ cos β, sin γ sin β, cos γ)` with `sin γ = ε Πsin αⱼ`,
/// `cos γ = ε Πcos αⱼ`, `β = Σφⱼ`.
pub fn gamma_map(dirs: &[MeasurementDirection]) -> Result<GammaImage> {
    if dirs.is_empty() {
        return Err(Error::Empty("Γ input"));
    }
    let prod_cos: f64 = dirs.iter().map(|d| d.alpha().cos()).product();
    let prod_sin: f64 = dirs.iter().map(|d| d.alpha().sin()).product();
    let weight = prod_cos * prod_cos + prod_sin * prod_sin;
    if weight <= EXCLUDED_SET_TOL {
        return Err(Error::DegenerateDirection(format!(
            "(Πcos α)² + (Πsin α)² = {weight:e} for a product of {} observables",
            dirs.len()
        )));
    }
    let eps = weight.sqrt().recip();
    let beta: f64 = dirs.iter().map(|d| d.phi()).sum();
    let (sin_gamma, cos_gamma) = (eps * prod_sin, eps * prod_cos);
    let vector =
        BlochVector::from_array_unchecked([sin_gamma * beta.cos(), sin_gamma * beta.sin(), cos_gamma]);
    Ok(GammaImage { vector, eps })
}

/// `Θ[n·σ] = (cos φ, sin φ, 0)`.
pub fn theta_map(dir: &MeasurementDirection) -> BlochVector {
    let (s, c) = dir.phi().sin_cos();
    BlochVector::from_array_unchecked([c, s, 0.0])
}

/// A two-qubit CHSH setting given by four Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitConfig {
    pub a0: BlochVector,
    pub a1: BlochVector,
    pub b0: BlochVector,
    pub b1: BlochVector,
}

impl TwoQubitConfig {
    pub fn alice(&self, a: usize) -> BlochVector {
        if a == 0 {
            self.a0
        } else {
            self.a1
        }
    }

    pub fn bob(&self, b: usize) -> BlochVector {
        if b == 0 {
            self.b0
        } else {
            self.b1
        }
    }
}

/// `⟨ψ₊|(a·σ)⊗(b·σ)|ψ₊⟩ = a_x b_x − a_y b_y + a_z b_z`.
pub fn bell_state_correlation(a: &BlochVector, b: &BlochVector) -> f64 {
    a.x * b.x - a.y * b.y + a.z * b.z
}

/// `⟨I²⟩` on `|ψ₊⟩`.
pub fn two_qubit_chsh_value(cfg: &TwoQubitConfig) -> f64 {
    TERMS.iter().map(|&(a, b, sign)| sign * bell_state_correlation(&cfg.alice(a), &cfg.bob(b))).sum()
}

/// Result of reducing an N-qubit configuration to two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub two_qubit: TwoQubitConfig,
    pub eps: f64,
    pub eps_prime: f64,
    pub i_n: f64,
    pub i_2: f64,
}

impl ReductionReport {
    /// Whether the two values obey `i_n > 2 ⇒ i_2 ≥ i_n` and the mirrored
    /// negative statement, with slack `tol`.
    pub fn ordering_holds(&self, tol: f64) -> bool {
        if self.i_n > 2.0 {
            self.i_2 >= self.i_n - tol
        } else if self.i_n < -2.0 {
            self.i_2 <= self.i_n + tol
        } else {
            true
        }
    }
}

/// `A_a = Γ[𝔸_a]`; `B_b = 𝔹_b` for even N and `Θ[𝔹_b]` for odd N.
///
/// For odd N this refuses Bob directions with `|sin α| ≤ 1e-9`; see
/// [`reduce_projected`] for the variant that projects them anyway.
pub fn reduce_to_two_qubit(cfg: &BellConfig) -> Result<ReductionReport> {
    if cfg.n() % 2 == 1 {
        for (label, d) in [("b0", cfg.b0()), ("b1", cfg.b1())] {
            if d.alpha().sin().abs() <= EXCLUDED_SET_TOL {
                return Err(Error::DegenerateDirection(format!(
                    "sin α of {label} vanishes for odd n = {}",
                    cfg.n()
                )));
            }
        }
    }
    reduce_projected(cfg)
}

/// Same as [`reduce_to_two_qubit`] but applies `Θ` to Bob's directions for odd
/// N whatever their polar angle. Only the `Γ` excluded set is an error.
pub fn reduce_projected(cfg: &BellConfig) -> Result<ReductionReport> {
    let g0 = gamma_map(cfg.a0())?;
    let g1 = gamma_map(cfg.a1())?;
    let (b0, b1) = if cfg.n() % 2 == 0 {
        (cfg.b0().bloch_vector(), cfg.b1().bloch_vector())
    } else {
        (theta_map(&cfg.b0()), theta_map(&cfg.b1()))
    };
    let two_qubit = TwoQubitConfig { a0: g0.vector, a1: g1.vector, b0, b1 };
    Ok(ReductionReport {
        two_qubit,
        eps: g0.eps,
        eps_prime: g1.eps,
        i_n: closed_form_value(cfg),
        i_2: two_qubit_chsh_value(&two_qubit),
    })
}

/// Ratio `⟨A_a⊗B_b⟩_ψ₊ / ⟨𝔸_a⊗𝔹_b⟩_G` predicted by the reduction:
/// `ε_a` for even N and `ε_a / sin α_N⁽ᵇ⁾` for odd N.
pub fn term_scale(report: &ReductionReport, cfg: &BellConfig, a: usize, b: usize) -> Result<f64> {
    let eps = if a == 0 { report.eps } else { report.eps_prime };
    if cfg.n() % 2 == 0 {
        return Ok(eps);
    }
    let s = cfg.bob(b).alpha().sin();
    if s.abs() <= EXCLUDED_SET_TOL {
        return Err(Error::DegenerateDirection(format!("sin α of b{b} vanishes for odd n = {}", cfg.n())));
    }
    Ok(eps / s)
}

/// Bob's pair maximizing `⟨I²⟩` on `|ψ₊⟩` for fixed Alice vectors:
/// `b_b ∝ R(a₀ ± a₁)` with `R = diag(1, −1, 1)`.
pub fn optimal_bob_directions(a0: &BlochVector, a1: &BlochVector) -> Result<(BlochVector, BlochVector)> {
    let reflect = |v: [f64; 3]| [v[0], -v[1], v[2]];
    let sum = [a0.x + a1.x, a0.y + a1.y, a0.z + a1.z];
    let diff = [a0.x - a1.x, a0.y - a1.y, a0.z - a1.z];
    let b0 = BlochVector::normalize(reflect(sum))
        .map_err(|_| Error::DegenerateDirection("a0 = −a1 leaves b0 undetermined".into()))?;
    let b1 = BlochVector::normalize(reflect(diff))
        .map_err(|_| Error::DegenerateDirection("a0 = a1 leaves b1 undetermined".into()))?;
    Ok((b0, b1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn d(alpha: f64, phi: f64) -> MeasurementDirection {
        MeasurementDirection::new(alpha, phi).unwrap()
    }

    fn close(a: &BlochVector, b: [f64; 3], tol: f64) -> bool {
        (a.x - b[0]).abs() < tol && (a.y - b[1]).abs() < tol && (a.z - b[2]).abs() < tol
    }

    #[test]
    fn gamma_examples() {
        let z = gamma_map(&[d(0.0, 0.0), d(0.0, 0.0)]).unwrap();
        assert!(close(&z.vector, [0.0, 0.0, 1.0], 1e-15));
        assert_eq!(z.eps, 1.0);

        let beta: f64 = 0.4 + 1.9 + 2.2;
        let eq = gamma_map(&[d(FRAC_PI_2, 0.4), d(FRAC_PI_2, 1.9), d(FRAC_PI_2, 2.2)]).unwrap();
        assert!(close(&eq.vector, [beta.cos(), beta.sin(), 0.0], 1e-12));
        assert!((eq.eps - 1.0).abs() < 1e-12);

        // (Πcos)² + (Πsin)² = 1/4 + 1/4, so ε = √2 and sin γ = cos γ = √2/2
        let q = gamma_map(&[d(FRAC_PI_4, 0.0), d(FRAC_PI_4, 0.0)]).unwrap();
        assert!((q.eps - SQRT_2).abs() < 1e-12);
        assert!(close(&q.vector, [SQRT_2 / 2.0, 0.0, SQRT_2 / 2.0], 1e-12));
    }

    #[test]
    fn gamma_excluded_set() {
        // σz ⊗ σx: Πcos = 0 and Πsin = 0
        let err = gamma_map(&[d(0.0, 0.0), d(FRAC_PI_2, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DegenerateDirection(_)));
    }

    #[test]
    fn theta_examples() {
        let s = SQRT_2 / 2.0;
        assert!(close(&theta_map(&d(FRAC_PI_2, FRAC_PI_4)), [s, s, 0.0], 1e-15));
        assert!(close(&theta_map(&d(std::f64::consts::FRAC_PI_3, 0.0)), [1.0, 0.0, 0.0], 1e-15));
        assert!(close(&theta_map(&d(FRAC_PI_2, FRAC_PI_2)), [0.0, 1.0, 0.0], 1e-15));
    }

    #[test]
    fn two_qubit_values() {
        let x = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let all_x = TwoQubitConfig { a0: x, a1: x, b0: x, b1: x };
        assert!((two_qubit_chsh_value(&all_x) - 2.0).abs() < 1e-15);
        let mixed = TwoQubitConfig { a0: z, a1: x, b0: z, b1: z };
        assert!((two_qubit_chsh_value(&mixed) - 2.0).abs() < 1e-15);
        let (b0, b1) = optimal_bob_directions(&z, &x).unwrap();
        let best = TwoQubitConfig { a0: z, a1: x, b0, b1 };
        assert!((two_qubit_chsh_value(&best) - 2.0 * SQRT_2).abs() < 1e-15);
        assert!(optimal_bob_directions(&z, &z).is_err());
    }

    #[test]
    fn odd_n_rejects_polar_bob() {
        let e = d(FRAC_PI_2, 0.0);
        let cfg = BellConfig::new(vec![e, e], vec![e, e], d(0.0, 0.0), e).unwrap();
        assert!(matches!(reduce_to_two_qubit(&cfg), Err(Error::DegenerateDirection(_))));
        // the same Bob direction is fine for even n
        let cfg = BellConfig::new(vec![e, e, e], vec![e, e, e], d(0.0, 0.0), e).unwrap();
        assert!(reduce_to_two_qubit(&cfg).is_ok());
    }
}
