use std::f64::consts::FRAC_PI_4;

use crate::bell::ghz_state;
use crate::degeneracy::CanonicalCase;
use crate::error::{Error, Result};
use crate::qops::{Pauli, Unitary2};

/// `u` acts on Bob's qubit (as `u*`), `v` and `w` on Alice's qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryTriple {
    pub case: CanonicalCase,
    pub nu: u8,
    pub u: Unitary2,
    pub v: Unitary2,
    pub w: Unitary2,
}

fn case1_u(nu: u8) -> Unitary2 {
    let x = Unitary2::pauli(Pauli::X);
    let z = Unitary2::pauli(Pauli::Z);
    let u3 = Unitary2::exp_i_pauli(FRAC_PI_4, Pauli::Y);
    let u5 = Unitary2::exp_i_pauli(-FRAC_PI_4, Pauli::X);
    match nu {
        1 => Unitary2::IDENTITY,
        2 => x,
        3 => u3,
        4 => z * u3,
        5 => u5,
        _ => x * u5,
    }
}

/// The triple `(u^(ν), v^(ν), w^(ν))` for qubit count `n`.
///
/// Case ①: `u` runs over `𝟙, σx, e^{iσyπ/4}, σz e^{iσyπ/4}, e^{−iσxπ/4},
/// σx e^{−iσxπ/4}`; `v = u` except that for `ν = 5, 6` the two are swapped
/// when `n/2` is even; `w = σz v` for `ν = 3, 4` and `σx v` otherwise.
///
/// Case ⑤ (`ν = 5, 6`): `u = 𝟙, σx`, `v = u`, `w = σx u`.
pub fn symmetry_triple(case: CanonicalCase, nu: u8, n: usize) -> Result<SymmetryTriple> {
    let x = Unitary2::pauli(Pauli::X);
    let (u, v, w) = match case {
        CanonicalCase::One => {
            if !(1..=6).contains(&nu) {
                return Err(Error::InvalidLabel(format!("case ① takes ν in 1..=6, got {nu}")));
            }
            if n % 2 == 1 {
                return Err(Error::Parity(format!("case ① needs even n, got {n}")));
            }
            let u = case1_u(nu);
            let v = match nu {
                5 | 6 if (n / 2) % 2 == 0 => case1_u(11 - nu),
                _ => u,
            };
            let w = if matches!(nu, 3 | 4) { Unitary2::pauli(Pauli::Z) * v } else { x * v };
            (u, v, w)
        }
        CanonicalCase::Five => {
            let u = match nu {
                5 => Unitary2::IDENTITY,
                6 => x,
                _ => return Err(Error::InvalidLabel(format!("case ⑤ takes μ in 5..=6, got {nu}"))),
            };
            (u, u, x * u)
        }
    };
    if n < 2 {
        return Err(Error::InvalidQubitCount(n));
    }
    Ok(SymmetryTriple { case, nu, u, v, w })
}

/// `|⟨G|v^{⊗(n−1)} ⊗ u*|G⟩|` and whether it is 1 within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzSymmetryCheck {
    pub case: CanonicalCase,
    pub nu: u8,
    pub n: usize,
    pub modulus: f64,
    pub holds: bool,
}

pub fn verify_ghz_symmetry(case: CanonicalCase, nu: u8, n: usize) -> Result<GhzSymmetryCheck> {
    let t = symmetry_triple(case, nu, n)?;
    let g = ghz_state(n)?;
    let mut ops = vec![t.v; n - 1];
    ops.push(t.u.conj());
    let image = g.apply_product(&ops)?;
    let modulus = g.overlap_modulus(&image)?;
    Ok(GhzSymmetryCheck { case, nu, n, modulus, holds: (modulus - 1.0).abs() <= 1e-12 })
}
