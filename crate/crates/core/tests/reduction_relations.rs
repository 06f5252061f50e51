use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use ghz_chsh::bell::{
    bell_operator, ghz_state, ordering_scan, product_observable, reduce_to_two_qubit, term_scale,
    two_qubit_chsh_value, BellConfig, BlochVector, ReductionReport, TERMS,
};
use ghz_chsh::degeneracy::{canonical_config, reference_config_n4, CanonicalCase};
use ghz_chsh::qops::{eigvalsh, expectation, pauli_observable, tensor, Complex, StateVector};
use ghz_chsh::{Error, MeasurementDirection};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TSIRELSON: f64 = 2.0 * SQRT_2;

fn psi_plus() -> StateVector {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex::new(0.0, 0.0);
    StateVector::new(2, vec![h, z, z, h]).unwrap()
}

fn dense_pair(a: &BlochVector, b: &BlochVector) -> f64 {
    let oa = pauli_observable(&MeasurementDirection::from_bloch(a));
    let ob = pauli_observable(&MeasurementDirection::from_bloch(b));
    expectation(&psi_plus(), &tensor(&[&oa, &ob]).unwrap()).unwrap()
}

fn dense_ghz_term(cfg: &BellConfig, a: usize, b: usize) -> f64 {
    let g = ghz_state(cfg.n()).unwrap();
    expectation(&g, &product_observable(&cfg.term_directions(a, b)).unwrap()).unwrap()
}

fn random_reduction(n: usize, rng: &mut ChaCha8Rng) -> (BellConfig, ReductionReport) {
    loop {
        let cfg = BellConfig::random(n, rng).unwrap();
        if let Ok(r) = reduce_to_two_qubit(&cfg) {
            return (cfg, r);
        }
    }
}

#[test]
fn two_qubit_value_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let (_, r) = random_reduction(3, &mut rng);
        let t = r.two_qubit;
        let dense: f64 = TERMS.iter().map(|&(a, b, s)| s * dense_pair(&t.alice(a), &t.bob(b))).sum();
        assert!((two_qubit_chsh_value(&t) - dense).abs() < 1e-12);
    }
}

#[test]
fn scaling_relations_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=7 {
        for _ in 0..100 {
            let (cfg, r) = random_reduction(n, &mut rng);
            assert!(r.eps >= 1.0 - 1e-15 && r.eps_prime >= 1.0 - 1e-15);
            for (a, b, _) in TERMS {
                let reduced = dense_pair(&r.two_qubit.alice(a), &r.two_qubit.bob(b));
                let scaled = term_scale(&r, &cfg, a, b).unwrap() * dense_ghz_term(&cfg, a, b);
                assert!((reduced - scaled).abs() < 1e-10, "n = {n}: {reduced} vs {scaled}");
            }
        }
    }
}

#[test]
fn operator_never_exceeds_tsirelson() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 2..=6 {
        for _ in 0..40 {
            let cfg = BellConfig::random(n, &mut rng).unwrap();
            let vals = eigvalsh(&bell_operator(&cfg).unwrap()).unwrap();
            assert!(vals.last().unwrap() <= &(TSIRELSON + 1e-9));
            assert!(vals[0] >= -TSIRELSON - 1e-9);
        }
    }
}

#[test]
fn saturation_carries_over_to_two_qubits() {
    let mut cfgs = vec![reference_config_n4()];
    for n in [2, 4, 6, 8] {
        cfgs.push(canonical_config(CanonicalCase::One, n, None).unwrap());
    }
    for n in [2, 3, 4, 5, 7] {
        cfgs.push(canonical_config(CanonicalCase::Five, n, None).unwrap());
    }
    for cfg in cfgs {
        let r = reduce_to_two_qubit(&cfg).unwrap();
        assert!((r.i_n - TSIRELSON).abs() < 1e-9);
        assert!((r.i_2 - r.i_n).abs() < 1e-9, "n = {}", cfg.n());
    }
}

#[test]
fn reference_reduction_vectors() {
    let r = reduce_to_two_qubit(&reference_config_n4()).unwrap();
    let close =
        |v: BlochVector, e: [f64; 3]| v.distance(&BlochVector::new(e[0], e[1], e[2]).unwrap()) < 1e-12;
    assert!(close(r.two_qubit.a0, [(-FRAC_PI_4).cos(), (-FRAC_PI_4).sin(), 0.0]));
    assert!(close(r.two_qubit.a1, [(5.0 * FRAC_PI_4).cos(), (5.0 * FRAC_PI_4).sin(), 0.0]));
    assert!(close(r.two_qubit.b0, [0.0, 1.0, 0.0]));
    assert!(close(r.two_qubit.b1, [1.0, 0.0, 0.0]));
    assert!((r.i_2 - TSIRELSON).abs() < 1e-10);

    let c1 = reduce_to_two_qubit(&canonical_config(CanonicalCase::One, 4, None).unwrap()).unwrap();
    assert!(close(c1.two_qubit.a0, [0.0, 0.0, 1.0]) && close(c1.two_qubit.a1, [1.0, 0.0, 0.0]));
    assert_eq!((c1.eps, c1.eps_prime), (1.0, 1.0));
}

#[test]
fn excluded_set_is_reported() {
    let z = MeasurementDirection::z_plus();
    let x = MeasurementDirection::x_plus();
    let cfg = BellConfig::new(vec![z, x], vec![x, x], x, x).unwrap();
    assert!(matches!(reduce_to_two_qubit(&cfg), Err(Error::DegenerateDirection(_))));
    let odd =
        BellConfig::new(vec![x, x], vec![x, x], MeasurementDirection::new(PI, 0.0).unwrap(), x).unwrap();
    assert!(matches!(reduce_to_two_qubit(&odd), Err(Error::DegenerateDirection(_))));
    let eq = MeasurementDirection::new(FRAC_PI_2, 0.3).unwrap();
    assert!(reduce_to_two_qubit(&BellConfig::new(vec![eq, eq], vec![eq, eq], eq, eq).unwrap()).is_ok());
}

#[test]
fn scan_finds_violations_without_counterexamples() {
    for s in ordering_scan(&[3, 4], 10_000, 7).unwrap() {
        assert_eq!(s.counterexamples, 0, "{s:?}");
        assert!(s.violations() > 0, "{s:?}");
        assert!(s.max_gap <= 1e-9);
    }
    let five = &ordering_scan(&[5], 200_000, 7).unwrap()[0];
    assert!(five.passed() && five.violations() > 0, "{five:?}");
}
