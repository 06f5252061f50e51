use ghz_chsh::bell::BlochVector;
use ghz_chsh::games::{
    chsh_game_value, chsh_star_value, observable_from_unitary_alice, observable_from_unitary_bob,
    play_monte_carlo, unitary_from_observable, ChshStrategy, Game,
};
use ghz_chsh::qops::{expectation, tensor, Complex, Pauli, StateVector, Unitary2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn psi_plus() -> StateVector {
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex::new(0.0, 0.0);
    StateVector::new(2, vec![h, z, z, h]).unwrap()
}

/// `Σ(−1)^{ab}⟨A_a⊗B_b⟩` from the dense 4×4 operators.
fn dense_i_value(s: &ChshStrategy) -> f64 {
    let psi = psi_plus();
    let mut total = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let op = tensor(&[
                &observable_from_unitary_alice(&s.alice[a]),
                &observable_from_unitary_bob(&s.bob[b]),
            ])
            .unwrap();
            let sign = if a & b == 1 { -1.0 } else { 1.0 };
            total += sign * expectation(&psi, &op).unwrap();
        }
    }
    total
}

#[test]
fn random_strategies_agree_across_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let s = ChshStrategy::random(&mut rng);
        let two = chsh_game_value(&s);
        let one = chsh_star_value(&s);
        assert!((two.i_value - one.i_value).abs() < 1e-12);
        assert!((two.i_value - dense_i_value(&s)).abs() < 1e-12);
        for a in 0..2 {
            for b in 0..2 {
                assert!((two.per_input_win_prob[a][b] - one.per_input_win_prob[a][b]).abs() < 1e-12);
            }
        }
        for t in [two, one] {
            assert!((t.success_probability - (0.5 + t.i_value / 8.0)).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&t.success_probability));
        }
    }
}

#[test]
fn optimal_strategy_hits_the_bound() {
    let p = (2.0 + 2f64.sqrt()) / 4.0;
    let s = ChshStrategy::optimal();
    assert!((chsh_game_value(&s).success_probability - p).abs() < 1e-12);
    assert!((chsh_star_value(&s).success_probability - p).abs() < 1e-12);
}

#[test]
fn observable_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let d = ghz_chsh::MeasurementDirection::random(&mut rng);
        let v = d.bloch_vector();
        let alice = observable_from_unitary_alice(&unitary_from_observable(&v).transpose());
        let bob = observable_from_unitary_bob(&unitary_from_observable(&v));
        for op in [alice, bob] {
            let b = op.as_mat2().unwrap().bloch();
            let got = BlochVector { x: b[0], y: b[1], z: b[2] };
            assert!(got.distance(&v) < 1e-12);
        }
    }
}

#[test]
fn deterministic_strategies_stay_classical() {
    let flip = Unitary2::pauli(Pauli::Z);
    for mask in 0..16u32 {
        let pick = |bit: u32| if mask >> bit & 1 == 1 { flip } else { Unitary2::IDENTITY };
        // Bob's sign flip is σz on the left of ℬ; Alice's is σz in 𝒜ᵀ
        let s = ChshStrategy::new([pick(0), pick(1)], [pick(2), pick(3)]);
        let t = chsh_game_value(&s);
        assert!((t.i_value.abs() - 2.0).abs() < 1e-12);
        assert!(t.success_probability <= 0.75 + 1e-12);
    }
}

#[test]
fn monte_carlo_within_five_standard_errors() {
    for (s, seed) in [(ChshStrategy::identity(), 1), (ChshStrategy::optimal(), 2)] {
        for game in [Game::Chsh, Game::ChshStar] {
            let exact = game.exact(&s).success_probability;
            let mc = play_monte_carlo(&s, game, 100_000, seed).unwrap();
            assert!(mc.z_score(exact) < 5.0, "{game}: {mc:?} vs {exact}");
            assert_eq!(mc, play_monte_carlo(&s, game, 100_000, seed).unwrap());
        }
    }
}
