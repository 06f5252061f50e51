use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::bell::{BellConfig, BellOperator};
use crate::degeneracy::{
    canonical_config, congruent_mod_pi, CanonicalCase, Construction, DegeneracyReport, SparseState,
    ORTHONORMALITY_TOL, RESIDUAL_TOL, SATURATION_TOL, TSIRELSON,
};
use crate::error::{Error, Result};
use crate::qops::{check_qubits, eig_hermitian, eigvalsh, multiplicity_of_max, Complex, SPECTRAL_TOL};

/// Largest `n` for which the dense eigenvalue cross-check is run.
pub const SPECTRAL_CHECK_MAX_QUBITS: usize = 12;

/// `⊗_{k∈K} σx^k |G⟩` for 1-based qubit labels `K`.
pub fn flip_state(n: usize, subset: &[usize]) -> Result<SparseState> {
    let dim = check_qubits(n)?;
    let mut mask = 0usize;
    for &k in subset {
        if k == 0 || k > n {
            return Err(Error::InvalidConfig(format!("qubit label {k} outside 1..={n}")));
        }
        mask ^= 1 << (n - k);
    }
    let amp = Complex::new(FRAC_1_SQRT_2, 0.0);
    Ok(SparseState::from_entries(n, vec![(mask, amp), (!mask & (dim - 1), amp)]))
}

/// All subsets of `{1, …, m}` satisfying `keep`, ordered by size and then
/// lexicographically.
fn subsets_where(m: usize, keep: impl Fn(&[usize]) -> bool + Sync) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1usize << m)
        .into_par_iter()
        .map(|bits| (1..=m).filter(|k| bits >> (k - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| keep(s))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn max_residual(cfg: &BellConfig, basis: &[SparseState], lambda: f64) -> Result<f64> {
    let op = BellOperator::new(cfg);
    basis
        .par_iter()
        .map(|s| op.eigen_residual(&s.to_dense()?, lambda))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Largest `|⟨ψᵢ|ψⱼ⟩ − δᵢⱼ|`, using only overlapping supports.
fn orthonormality_error(basis: &[SparseState]) -> f64 {
    let mut by_index: std::collections::HashMap<usize, Vec<(usize, Complex)>> = Default::default();
    for (s, state) in basis.iter().enumerate() {
        for &(i, a) in state.entries() {
            by_index.entry(i).or_default().push((s, a));
        }
    }
    let mut gram: std::collections::HashMap<(usize, usize), Complex> = Default::default();
    for column in by_index.values() {
        for &(s, a) in column {
            for &(t, b) in column {
                *gram.entry((s, t)).or_default() += a.conj() * b;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for s in 0..basis.len() {
        let diag = gram.get(&(s, s)).copied().unwrap_or_default();
        worst = worst.max((diag - Complex::new(1.0, 0.0)).norm());
    }
    for (&(s, t), v) in &gram {
        if s != t {
            worst = worst.max(v.norm());
        }
    }
    worst
}

/// Dense eigenvalues of `cfg`'s operator: the maximum and its multiplicity.
fn spectral_top(cfg: &BellConfig) -> Result<(f64, usize)> {
    let values = eigvalsh(&BellOperator::new(cfg).to_dense()?)?;
    let max = *values.last().ok_or(Error::Empty("spectrum"))?;
    Ok((max, multiplicity_of_max(&values, SPECTRAL_TOL)?))
}

fn flip_report(
    cfg: BellConfig,
    subsets: Vec<Vec<usize>>,
    construction: Construction,
    spectral_check: bool,
) -> Result<DegeneracyReport> {
    let n = cfg.n();
    let basis = subsets.iter().map(|k| flip_state(n, k)).collect::<Result<Vec<_>>>()?;
    let residual = max_residual(&cfg, &basis, TSIRELSON)?;
    if residual >= RESIDUAL_TOL {
        return Err(Error::CrossCheck(format!("flip state residual {residual:e} at eigenvalue 2√2")));
    }
    let ortho = orthonormality_error(&basis);
    if ortho > ORTHONORMALITY_TOL {
        return Err(Error::CrossCheck(format!("flip states deviate from orthonormal by {ortho:e}")));
    }
    let spectral_multiplicity = if spectral_check && n <= SPECTRAL_CHECK_MAX_QUBITS {
        let (max, count) = spectral_top(&cfg)?;
        if (max - TSIRELSON).abs() > SATURATION_TOL {
            return Err(Error::CrossCheck(format!("largest eigenvalue {max} is not 2√2")));
        }
        if count != basis.len() {
            return Err(Error::CrossCheck(format!(
                "spectral multiplicity {count} differs from the {} enumerated states",
                basis.len()
            )));
        }
        Some(count)
    } else {
        None
    };
    Ok(DegeneracyReport {
        config: cfg,
        max_eigenvalue: TSIRELSON,
        multiplicity: basis.len(),
        spectral_multiplicity,
        basis,
        construction,
        subsets: Some(subsets),
        max_residual: residual,
        orthonormality_error: ortho,
    })
}

/// Even-size flips of the first `n − 1` qubits of `|G⟩`, checked against the
/// canonical case-① operator. The dense eigenvalue count is compared for
/// `n ≤ 12`.
pub fn degenerate_basis_case1(n: usize) -> Result<DegeneracyReport> {
    if n % 2 == 1 {
        return Err(Error::Parity(format!("case ① needs even n, got {n}")));
    }
    if n < 4 {
        return Err(Error::InvalidQubitCount(n));
    }
    check_qubits(n)?;
    let cfg = canonical_config(CanonicalCase::One, n, None)?;
    let subsets = subsets_where(n - 1, |k| k.len() % 2 == 0);
    flip_report(cfg, subsets, Construction::Case1Flips, true)
}

/// Flips `K ⊆ {1, …, n−1}` with `Σ_{k∈K} φ′ₖ ≡ 0 (mod π)`, checked against the
/// canonical case-⑤ operator. Also checks that no `K` and its complement
/// both qualify.
pub fn degenerate_basis_case5(n: usize, phi_primes: &[f64]) -> Result<DegeneracyReport> {
    check_qubits(n)?;
    let cfg = canonical_config(CanonicalCase::Five, n, Some(phi_primes))?;
    let qualifies = |k: &[usize]| congruent_mod_pi(k.iter().map(|&j| phi_primes[j - 1]).sum(), 0.0);
    let subsets = subsets_where(n - 1, qualifies);
    for k in &subsets {
        let complement: Vec<usize> = (1..n).filter(|j| !k.contains(j)).collect();
        if qualifies(&complement) {
            return Err(Error::CrossCheck(format!(
                "both {k:?} and its complement satisfy the phase condition"
            )));
        }
    }
    flip_report(cfg, subsets, Construction::Case5Subsets, true)
}

/// Eigenvectors for the largest eigenvalue of any configuration's operator.
pub fn spectral_subspace(cfg: &BellConfig) -> Result<DegeneracyReport> {
    let eig = eig_hermitian(&BellOperator::new(cfg).to_dense()?)?;
    let max = *eig.values.last().ok_or(Error::Empty("spectrum"))?;
    let count = multiplicity_of_max(&eig.values, SPECTRAL_TOL)?;
    let basis: Vec<SparseState> =
        eig.vectors[eig.vectors.len() - count..].iter().map(SparseState::from_dense).collect();
    let residual = max_residual(cfg, &basis, max)?;
    let ortho = orthonormality_error(&basis);
    Ok(DegeneracyReport {
        config: cfg.clone(),
        max_eigenvalue: max,
        multiplicity: count,
        spectral_multiplicity: Some(count),
        basis,
        construction: Construction::SpectralOnly,
        subsets: None,
        max_residual: residual,
        orthonormality_error: ortho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn case1_n4_states() {
        let r = degenerate_basis_case1(4).unwrap();
        assert_eq!(r.multiplicity, 4);
        assert_eq!(r.spectral_multiplicity, Some(4));
        assert_eq!(r.subsets.unwrap(), vec![vec![], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(matches!(degenerate_basis_case1(5), Err(Error::Parity(_))));
    }

    #[test]
    fn case5_default_and_rotated() {
        let r = degenerate_basis_case5(4, &[0.0, 0.0, FRAC_PI_2]).unwrap();
        assert_eq!(r.subsets.unwrap(), vec![vec![], vec![1], vec![2], vec![1, 2]]);
        let r = degenerate_basis_case5(4, &[FRAC_PI_2; 3]).unwrap();
        assert_eq!(r.subsets.unwrap(), vec![vec![], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let r = degenerate_basis_case5(4, &[0.3, 0.7, FRAC_PI_2 - 1.0]).unwrap();
        assert_eq!(r.multiplicity, 1);
        assert_eq!(r.spectral_multiplicity, Some(1));
    }

    #[test]
    fn spectral_subspace_matches_case1() {
        let cfg = canonical_config(CanonicalCase::One, 4, None).unwrap();
        let r = spectral_subspace(&cfg).unwrap();
        assert_eq!(r.multiplicity, 4);
        assert!((r.max_eigenvalue - TSIRELSON).abs() < 1e-10);
        assert!(r.max_residual < 1e-8);
    }

    #[test]
    fn flip_state_bits() {
        let s = flip_state(4, &[1, 3]).unwrap();
        let idx: Vec<usize> = s.entries().iter().map(|e| e.0).collect();
        assert_eq!(idx, vec![0b0101, 0b1010]);
    }
}
