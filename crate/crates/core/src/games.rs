//! The two-player CHSH game played on `|ψ₊⟩` and the single-player CHSH*
//! game played on `|+⟩`.
//!
//! A strategy is four unitaries. In the CHSH game Alice measures
//! `A_a = 𝒜ₐ*σx𝒜ₐᵀ` and Bob measures `B_b = ℬ_b†σxℬ_b`; the players win when
//! `x ⊕ y = ab`. In CHSH* Carol measures `C_ab = 𝒜ₐ†ℬ_b†σxℬ_b𝒜ₐ` on `|+⟩` and
//! wins when her outcome `c = ab`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bell::BlochVector;
use crate::error::{Error, Result};
use crate::qops::{Complex, HermitianOperator, Mat2, Pauli, Unitary2};

/// `(𝒜₀, 𝒜₁)` for Alice and `(ℬ₀, ℬ₁)` for Bob.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshStrategy {
    pub alice: [Unitary2; 2],
    pub bob: [Unitary2; 2],
}

impl ChshStrategy {
    pub fn new(alice: [Unitary2; 2], bob: [Unitary2; 2]) -> Self {
        ChshStrategy { alice, bob }
    }

    /// Every unitary is the identity, so all four observables are `σx`.
    pub fn identity() -> Self {
        ChshStrategy { alice: [Unitary2::IDENTITY; 2], bob: [Unitary2::IDENTITY; 2] }
    }

    /// `A₀ = σz`, `A₁ = σx`, `B_b = (σz ± σx)/√2`.
    pub fn optimal() -> Self {
        let z = [0.0, 0.0, 1.0];
        let x = [1.0, 0.0, 0.0];
        let b0 = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
        let b1 = [-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
        Self::from_observables([z, x], [b0, b1]).expect("unit vectors")
    }

    /// The strategy whose observables have the given Bloch vectors.
    pub fn from_observables(alice: [[f64; 3]; 2], bob: [[f64; 3]; 2]) -> Result<Self> {
        let alice_u = |v: [f64; 3]| -> Result<Unitary2> {
            Ok(unitary_from_observable(&BlochVector::new(v[0], v[1], v[2])?).transpose())
        };
        let bob_u = |v: [f64; 3]| -> Result<Unitary2> {
            Ok(unitary_from_observable(&BlochVector::new(v[0], v[1], v[2])?))
        };
        Ok(ChshStrategy {
            alice: [alice_u(alice[0])?, alice_u(alice[1])?],
            bob: [bob_u(bob[0])?, bob_u(bob[1])?],
        })
    }

    /// Four independent Haar-random unitaries.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        ChshStrategy {
            alice: [random_unitary(rng), random_unitary(rng)],
            bob: [random_unitary(rng), random_unitary(rng)],
        }
    }

    fn alice_observable(&self, a: usize) -> Mat2 {
        alice_matrix(&self.alice[a])
    }

    fn bob_observable(&self, b: usize) -> Mat2 {
        bob_matrix(&self.bob[b])
    }

    /// `C_ab = 𝒜ₐ†ℬ_b†σxℬ_b𝒜ₐ`.
    fn carol_observable(&self, a: usize, b: usize) -> Mat2 {
        let u = *self.bob[b].matrix() * *self.alice[a].matrix();
        u.adjoint() * Pauli::X.matrix() * u
    }
}

fn alice_matrix(u: &Unitary2) -> Mat2 {
    let m = u.matrix();
    m.conj() * Pauli::X.matrix() * m.transpose()
}

fn bob_matrix(u: &Unitary2) -> Mat2 {
    let m = u.matrix();
    m.adjoint() * Pauli::X.matrix() * *m
}

fn as_operator(m: &Mat2) -> HermitianOperator {
    HermitianOperator::with_tolerance(1, m.0.iter().flatten().copied().collect(), 1e-10)
        .expect("conjugate of σx is Hermitian")
}

/// `𝒜*σx𝒜ᵀ`.
pub fn observable_from_unitary_alice(u: &Unitary2) -> HermitianOperator {
    as_operator(&alice_matrix(u))
}

/// `ℬ†σxℬ`.
pub fn observable_from_unitary_bob(u: &Unitary2) -> HermitianOperator {
    as_operator(&bob_matrix(u))
}

/// A unitary `V` with `V†σxV = t·σ`: the rotation carrying `x̂` to `t` about
/// `x̂ × t`, or a π rotation about `ẑ` when `t = −x̂`. Alice's form is the
/// transpose.
pub fn unitary_from_observable(target: &BlochVector) -> Unitary2 {
    // conjugation by exp(iθ n·σ/2) rotates Bloch vectors by θ about n
    let axis = [0.0, -target.z, target.y];
    let s = (axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let c = target.x.clamp(-1.0, 1.0);
    let (n, theta) = if s < 1e-15 {
        if c > 0.0 {
            return Unitary2::IDENTITY;
        }
        ([0.0, 0.0, 1.0], std::f64::consts::PI)
    } else {
        ([0.0, axis[1] / s, axis[2] / s], s.atan2(c))
    };
    let (sh, ch) = (theta / 2.0).sin_cos();
    let m = Mat2::IDENTITY.scale(Complex::new(ch, 0.0)) + Mat2::from_bloch(n).scale(Complex::new(0.0, sh));
    Unitary2::with_tolerance(m, 1e-10).expect("rotation is unitary")
}

/// A Haar-random 2×2 unitary: the unitary factor of the polar decomposition
/// of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary2 {
    loop {
        let mut g = || Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let m = Mat2::new(g(), g(), g(), g());
        // √P = (P + √det P·𝟙)/√(tr P + 2√det P) for 2×2 positive P
        let p = m.adjoint() * m;
        let det = p.det().re;
        if det < 1e-12 {
            continue;
        }
        let sd = det.sqrt();
        let norm = (p.trace().re + 2.0 * sd).sqrt();
        let root = (p + Mat2::IDENTITY.scale(Complex::new(sd, 0.0))).scale(Complex::new(1.0 / norm, 0.0));
        let rd = root.det();
        let inv = Mat2::new(root.get(1, 1), -root.get(0, 1), -root.get(1, 0), root.get(0, 0))
            .scale(Complex::new(1.0, 0.0) / rd);
        if let Ok(u) = Unitary2::with_tolerance(m * inv, 1e-10) {
            return u;
        }
    }
}

/// Exact win probabilities for each input pair and their derived summaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameOutcomeTable {
    /// Indexed `[a][b]`.
    pub per_input_win_prob: [[f64; 2]; 2],
    pub success_probability: f64,
    pub i_value: f64,
}

impl GameOutcomeTable {
    fn from_wins(per_input_win_prob: [[f64; 2]; 2], i_value: f64) -> Self {
        let success_probability = per_input_win_prob.iter().flatten().sum::<f64>() / 4.0;
        GameOutcomeTable { per_input_win_prob, success_probability, i_value }
    }
}

fn projector(obs: &Mat2, outcome: usize) -> Mat2 {
    let sign = if outcome == 0 { 0.5 } else { -0.5 };
    Mat2::IDENTITY.scale(Complex::new(0.5, 0.0)) + obs.scale(Complex::new(sign, 0.0))
}

/// `⟨ψ₊|M⊗N|ψ₊⟩` for `|ψ₊⟩ = (|00⟩+|11⟩)/√2`.
fn bell_pair_expectation(m: &Mat2, n: &Mat2) -> f64 {
    let mut acc = Complex::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += m.get(i, j) * n.get(i, j);
        }
    }
    acc.re / 2.0
}

/// `⟨+|M|+⟩`.
fn plus_expectation(m: &Mat2) -> f64 {
    m.0.iter().flatten().map(|z| z.re).sum::<f64>() / 2.0
}

/// Joint outcome probabilities `P(x, y | a, b)` on `|ψ₊⟩`, indexed `[x][y]`.
fn chsh_joint(s: &ChshStrategy, a: usize, b: usize) -> [[f64; 2]; 2] {
    let (oa, ob) = (s.alice_observable(a), s.bob_observable(b));
    let mut p = [[0.0; 2]; 2];
    for (x, row) in p.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = bell_pair_expectation(&projector(&oa, x), &projector(&ob, y));
        }
    }
    p
}

/// `P(c = 0 | a, b)` on `|+⟩`.
fn chsh_star_zero(s: &ChshStrategy, a: usize, b: usize) -> f64 {
    plus_expectation(&projector(&s.carol_observable(a, b), 0))
}

/// Born-rule evaluation of the CHSH game on `|ψ₊⟩`.
pub fn chsh_game_value(s: &ChshStrategy) -> GameOutcomeTable {
    let mut wins = [[0.0; 2]; 2];
    let mut i_value = 0.0;
    for (a, wins_a) in wins.iter_mut().enumerate() {
        for (b, win) in wins_a.iter_mut().enumerate() {
            let p = chsh_joint(s, a, b);
            let target = a & b;
            let mut correlation = 0.0;
            for (x, row) in p.iter().enumerate() {
                for (y, prob) in row.iter().enumerate() {
                    if x ^ y == target {
                        *win += prob;
                    }
                    correlation += if x == y { *prob } else { -*prob };
                }
            }
            i_value += if a & b == 1 { -correlation } else { correlation };
        }
    }
    GameOutcomeTable::from_wins(wins, i_value)
}

/// Born-rule evaluation of the CHSH* game on `|+⟩`.
pub fn chsh_star_value(s: &ChshStrategy) -> GameOutcomeTable {
    let mut wins = [[0.0; 2]; 2];
    let mut i_value = 0.0;
    for (a, wins_a) in wins.iter_mut().enumerate() {
        for (b, win) in wins_a.iter_mut().enumerate() {
            let p0 = chsh_star_zero(s, a, b);
            *win = if a & b == 0 { p0 } else { 1.0 - p0 };
            let correlation = 2.0 * p0 - 1.0;
            i_value += if a & b == 1 { -correlation } else { correlation };
        }
    }
    GameOutcomeTable::from_wins(wins, i_value)
}

/// Which of the two games to play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Game {
    Chsh,
    ChshStar,
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Game::Chsh => "chsh",
            Game::ChshStar => "chsh_star",
        })
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chsh" => Ok(Game::Chsh),
            "chsh_star" | "chsh-star" | "chsh*" => Ok(Game::ChshStar),
            other => Err(Error::InvalidConfig(format!("unknown game {other:?}"))),
        }
    }
}

impl Game {
    pub fn exact(&self, s: &ChshStrategy) -> GameOutcomeTable {
        match self {
            Game::Chsh => chsh_game_value(s),
            Game::ChshStar => chsh_star_value(s),
        }
    }
}

/// Empirical success rate of a seeded simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub game: Game,
    pub shots: u64,
    pub seed: u64,
    pub wins: u64,
    pub estimate: f64,
    /// `√(p̂(1−p̂)/shots)`.
    pub std_error: f64,
}

impl MonteCarloEstimate {
    /// `|estimate − p| / std_error`; infinite when the error is zero and the
    /// estimate differs from `p`.
    pub fn z_score(&self, p: f64) -> f64 {
        let diff = (self.estimate - p).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Shots drawn from one RNG stream.
pub const SHOTS_PER_BLOCK: u64 = 1024;

/// Plays `shots` rounds with uniformly random inputs and Born-rule outcomes.
///
/// Shots are grouped into blocks of [`SHOTS_PER_BLOCK`]; block `k` draws from
/// ChaCha8 stream `k` of `seed`, so the estimate is identical for any number
/// of worker threads.
pub fn play_monte_carlo(s: &ChshStrategy, game: Game, shots: u64, seed: u64) -> Result<MonteCarloEstimate> {
    if shots == 0 {
        return Err(Error::Precondition("shots must be at least 1".into()));
    }
    // P(win | a, b) for CHSH comes from the joint table, for CHSH* from P(c = 0)
    let mut joint = [[[[0.0; 2]; 2]; 2]; 2];
    let mut star = [[0.0; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            joint[a][b] = chsh_joint(s, a, b);
            star[a][b] = chsh_star_zero(s, a, b);
        }
    }
    let blocks = shots.div_ceil(SHOTS_PER_BLOCK);
    let wins: u64 = (0..blocks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = SHOTS_PER_BLOCK.min(shots - k * SHOTS_PER_BLOCK);
            let mut wins = 0;
            for _ in 0..count {
                let a = rng.random_range(0..2usize);
                let b = rng.random_range(0..2usize);
                let u: f64 = rng.random();
                let won = match game {
                    Game::Chsh => {
                        let p = &joint[a][b];
                        let (x, y) = if u < p[0][0] {
                            (0, 0)
                        } else if u < p[0][0] + p[0][1] {
                            (0, 1)
                        } else if u < p[0][0] + p[0][1] + p[1][0] {
                            (1, 0)
                        } else {
                            (1, 1)
                        };
                        x ^ y == a & b
                    }
                    Game::ChshStar => {
                        let c = if u < star[a][b] { 0 } else { 1 };
                        c == a & b
                    }
                };
                wins += u64::from(won);
            }
            wins
        })
        .sum();
    let estimate = wins as f64 / shots as f64;
    Ok(MonteCarloEstimate {
        game,
        shots,
        seed,
        wins,
        estimate,
        std_error: (estimate * (1.0 - estimate) / shots as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_mat(op: &HermitianOperator, expected: Mat2) {
        assert!(op.as_mat2().unwrap().max_deviation(&expected) < 1e-12);
    }

    #[test]
    fn alice_observable_examples() {
        assert_mat(&observable_from_unitary_alice(&Unitary2::IDENTITY), Pauli::X.matrix());
        assert_mat(&observable_from_unitary_alice(&Unitary2::pauli(Pauli::Z)), -Pauli::X.matrix());
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let u = unitary_from_observable(&z).transpose();
        assert_mat(&observable_from_unitary_alice(&u), Pauli::Z.matrix());
    }

    #[test]
    fn unitary_from_observable_examples() {
        let x = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(unitary_from_observable(&x), Unitary2::IDENTITY);
        let mx = BlochVector::new(-1.0, 0.0, 0.0).unwrap();
        assert_mat(&observable_from_unitary_bob(&unitary_from_observable(&mx)), -Pauli::X.matrix());
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        assert_mat(&observable_from_unitary_bob(&unitary_from_observable(&z)), Pauli::Z.matrix());
    }

    #[test]
    fn identity_and_optimal_values() {
        let id = chsh_game_value(&ChshStrategy::identity());
        assert!((id.i_value - 2.0).abs() < 1e-15);
        assert!((id.success_probability - 0.75).abs() < 1e-15);
        let star = chsh_star_value(&ChshStrategy::identity());
        assert!((star.i_value - 2.0).abs() < 1e-15);
        let opt = chsh_game_value(&ChshStrategy::optimal());
        assert!((opt.success_probability - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn flipping_b1_negates_its_terms() {
        let s = ChshStrategy::optimal();
        let mut flipped = s;
        flipped.bob[1] = Unitary2::pauli(Pauli::Z) * flipped.bob[1];
        // B₁ → −B₁ changes ⟨A₀B₁⟩ − ⟨A₁B₁⟩ to its negative
        let before = chsh_game_value(&s).i_value;
        let after = chsh_game_value(&flipped).i_value;
        let b1_terms = |st: &ChshStrategy| {
            let (a0, a1, b1) = (st.alice_observable(0), st.alice_observable(1), st.bob_observable(1));
            bell_pair_expectation(&a0, &b1) - bell_pair_expectation(&a1, &b1)
        };
        assert!((before - after - 2.0 * b1_terms(&s)).abs() < 1e-12);
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let u = random_unitary(&mut rng);
            assert!((u.adjoint() * u).matrix().max_deviation(&Mat2::IDENTITY) < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let s = ChshStrategy::optimal();
        let a = play_monte_carlo(&s, Game::Chsh, 5000, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| play_monte_carlo(&s, Game::Chsh, 5000, 9).unwrap());
        assert_eq!(a, b);
        assert!(play_monte_carlo(&s, Game::ChshStar, 0, 9).is_err());
    }

    #[test]
    fn game_names() {
        assert_eq!("chsh".parse::<Game>().unwrap(), Game::Chsh);
        assert_eq!("chsh_star".parse::<Game>().unwrap(), Game::ChshStar);
        assert!("poker".parse::<Game>().is_err());
    }
}
