//! One function per subcommand. Each returns the report body, its digest
//! input, the seed if any, and whether its internal checks passed.

use std::path::Path;

use ghz_chsh::bell::{
    closed_form_expectation, ghz_state, ordering_scan, reduce_to_two_qubit, BellOperator, SCAN_TOL, TERMS,
};
use ghz_chsh::degeneracy::{
    classify_saturating_config, default_phi_primes, degenerate_basis_case1, degenerate_basis_case5,
    reference_example_n4, CanonicalCase, DegeneracyReport, SparseState, SATURATION_TOL, TSIRELSON,
};
use ghz_chsh::games::{chsh_game_value, chsh_star_value, play_monte_carlo, Game, GameOutcomeTable};
use ghz_chsh::qops::ALGEBRAIC_TOL;
use ghz_chsh::BlochVector;
use serde_json::{json, Value};

use crate::config::{round_sig12, ConfigFile};
use crate::error::CliError;
use crate::strategy::StrategySpec;

/// Smallest accepted overlap modulus with the expected reference states.
pub const FIDELITY_TOL: f64 = 1e-10;

pub struct Outcome {
    pub input: Value,
    pub seed: Option<u64>,
    pub passed: bool,
    pub result: Value,
}

fn vector(v: &BlochVector) -> Value {
    json!([v.x, v.y, v.z])
}

fn state_json(s: &SparseState, subset: Option<&[usize]>) -> Value {
    let n = s.n_qubits();
    let amplitudes: Vec<Value> = s
        .entries()
        .iter()
        .map(|(i, a)| json!({ "index": i, "bits": format!("{i:0n$b}"), "re": a.re, "im": a.im }))
        .collect();
    match subset {
        Some(k) => json!({ "subset": k, "amplitudes": amplitudes }),
        None => json!({ "amplitudes": amplitudes }),
    }
}

fn agreement(report: &DegeneracyReport) -> &'static str {
    match report.spectral_multiplicity {
        Some(m) if m == report.multiplicity => "agree",
        Some(_) => "disagree",
        None => "skipped",
    }
}

fn degeneracy_body(report: &DegeneracyReport) -> Value {
    let basis: Vec<Value> = match &report.subsets {
        Some(subsets) => report.basis.iter().zip(subsets).map(|(s, k)| state_json(s, Some(k))).collect(),
        None => report.basis.iter().map(|s| state_json(s, None)).collect(),
    };
    json!({
        "construction": format!("{:?}", report.construction),
        "max_eigenvalue": report.max_eigenvalue,
        "multiplicity": report.multiplicity,
        "spectral_multiplicity": report.spectral_multiplicity,
        "agreement": agreement(report),
        "max_residual": report.max_residual,
        "orthonormality_error": report.orthonormality_error,
        "subsets": report.subsets,
        "basis": basis,
    })
}

fn load(path: &Path) -> Result<(ConfigFile, ghz_chsh::BellConfig), CliError> {
    let file = ConfigFile::load(path)?;
    let cfg = file.to_bell_config()?;
    Ok((file, cfg))
}

pub fn eval(path: &Path) -> Result<Outcome, CliError> {
    let (file, cfg) = load(path)?;
    let n = cfg.n();
    let terms = TERMS
        .iter()
        .map(|&(a, b, sign)| {
            let value = closed_form_expectation(&cfg.term_directions(a, b))?;
            Ok(json!({ "term": format!("A{a}B{b}"), "sign": sign, "closed_form": value }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let closed = ghz_chsh::bell::closed_form_value(&cfg);
    let operator = BellOperator::new(&cfg).expectation(&ghz_state(n)?)?;
    let difference = (closed - operator).abs();
    let saturating = (closed.abs() - TSIRELSON).abs() <= SATURATION_TOL;
    let class = if saturating {
        classify_saturating_config(&cfg).ok().map(|c| {
            json!({
                "case": format!("{:?}", c.case),
                "orientation": format!("{:?}", c.orientation),
                "label": c.label(),
            })
        })
    } else {
        None
    };
    Ok(Outcome {
        input: json!({ "command": "eval", "config": file }),
        seed: None,
        passed: difference <= ALGEBRAIC_TOL,
        result: json!({
            "config": file.echo(),
            "i_n": closed,
            "i_n_operator": operator,
            "difference": difference,
            "saturating": saturating,
            "classical_violation": closed.abs() > 2.0,
            "saturation_class": class,
            "terms": terms,
        }),
    })
}

pub fn reduce(path: &Path) -> Result<Outcome, CliError> {
    let (file, cfg) = load(path)?;
    let r = reduce_to_two_qubit(&cfg)?;
    let holds = r.ordering_holds(SCAN_TOL);
    Ok(Outcome {
        input: json!({ "command": "reduce", "config": file }),
        seed: None,
        passed: holds,
        result: json!({
            "config": file.echo(),
            "two_qubit": {
                "a0": vector(&r.two_qubit.a0),
                "a1": vector(&r.two_qubit.a1),
                "b0": vector(&r.two_qubit.b0),
                "b1": vector(&r.two_qubit.b1),
            },
            "eps": r.eps,
            "eps_prime": r.eps_prime,
            "i_n": r.i_n,
            "i_2": r.i_2,
            "classical_violation": r.i_n.abs() > 2.0,
            "i_2_dominates": holds,
        }),
    })
}

pub fn degeneracy(case: CanonicalCase, n: usize, phi_primes: Option<&[f64]>) -> Result<Outcome, CliError> {
    let (report, phis) = match case {
        CanonicalCase::One => {
            if phi_primes.is_some() {
                return Err(CliError::Usage("--phi-primes applies to case 5 only".into()));
            }
            (degenerate_basis_case1(n)?, None)
        }
        CanonicalCase::Five => {
            let phis = phi_primes.map(<[f64]>::to_vec).unwrap_or_else(|| default_phi_primes(n));
            (degenerate_basis_case5(n, &phis)?, Some(phis))
        }
    };
    let mut result = json!({
        "case": case.to_string(),
        "n": n,
        "phi_primes": phis.as_ref().map(|p| p.iter().copied().map(round_sig12).collect::<Vec<_>>()),
        "config": ConfigFile::from_config(&report.config).echo(),
    });
    extend(&mut result, degeneracy_body(&report));
    Ok(Outcome {
        input: json!({ "command": "degeneracy", "case": case.to_string(), "n": n, "phi_primes": phi_primes }),
        seed: None,
        passed: agreement(&report) != "disagree",
        result,
    })
}

fn table(t: &GameOutcomeTable) -> Value {
    json!({
        "per_input_win_prob": t.per_input_win_prob,
        "success_probability": t.success_probability,
        "i_value": t.i_value,
    })
}

pub fn game(
    spec: &StrategySpec,
    game: Game,
    shots: Option<u64>,
    seed: Option<u64>,
) -> Result<Outcome, CliError> {
    let (strategy, described) = spec.resolve()?;
    let chsh = chsh_game_value(&strategy);
    let star = chsh_star_value(&strategy);
    let i_difference = (chsh.i_value - star.i_value).abs();
    let win_difference = chsh
        .per_input_win_prob
        .iter()
        .flatten()
        .zip(star.per_input_win_prob.iter().flatten())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    let equivalent = i_difference < ALGEBRAIC_TOL && win_difference < ALGEBRAIC_TOL;
    let exact = game.exact(&strategy);
    let seed = shots.map(|_| seed.unwrap_or(0));
    let monte_carlo = match (shots, seed) {
        (Some(shots), Some(seed)) => {
            let mc = play_monte_carlo(&strategy, game, shots, seed)?;
            Some(json!({
                "shots": mc.shots,
                "seed": mc.seed,
                "wins": mc.wins,
                "estimate": mc.estimate,
                "std_error": mc.std_error,
                "z_score": mc.z_score(exact.success_probability),
            }))
        }
        _ => None,
    };
    Ok(Outcome {
        input: json!({
            "command": "game",
            "strategy": described,
            "game": game.to_string(),
            "shots": shots,
            "seed": seed,
        }),
        seed,
        passed: equivalent,
        result: json!({
            "strategy": described,
            "game": game.to_string(),
            "i_value": exact.i_value,
            "success_probability": exact.success_probability,
            "chsh": table(&chsh),
            "chsh_star": table(&star),
            "equivalence": {
                "i_value_difference": i_difference,
                "max_win_prob_difference": win_difference,
                "holds": equivalent,
            },
            "monte_carlo": monte_carlo,
        }),
    })
}

pub fn scan(n_list: &[usize], samples: usize, seed: u64) -> Result<Outcome, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let summaries = ordering_scan(n_list, samples, seed)?;
    let rows: Vec<Value> = summaries
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "samples": s.samples,
                "excluded": s.excluded,
                "positive_violations": s.positive_violations,
                "negative_violations": s.negative_violations,
                "violations": s.violations(),
                "violation_rate": s.violation_rate(),
                "counterexamples": s.counterexamples,
                "max_gap": s.max_gap,
                "max_abs_i_n": s.max_abs_i_n,
                "max_abs_i_2": s.max_abs_i_2,
                "tsirelson_exceeded": s.tsirelson_exceeded,
            })
        })
        .collect();
    let counterexamples: usize = summaries.iter().map(|s| s.counterexamples).sum();
    Ok(Outcome {
        input: json!({ "command": "scan", "n": n_list, "samples": samples, "seed": seed }),
        seed: Some(seed),
        passed: summaries.iter().all(|s| s.passed()),
        result: json!({
            "n": n_list,
            "samples": samples,
            "seed": seed,
            "tolerance": SCAN_TOL,
            "counterexamples": counterexamples,
            "summaries": rows,
        }),
    })
}

pub fn example_n4() -> Result<Outcome, CliError> {
    let ex = reference_example_n4()?;
    let report = &ex.report;
    let subsets = report.subsets.clone().unwrap_or_default();
    let states: Vec<Value> = report
        .basis
        .iter()
        .zip(&subsets)
        .zip(&ex.fidelities)
        .map(|((s, k), f)| {
            let mut v = state_json(s, Some(k));
            extend(&mut v, json!({ "fidelity": f }));
            v
        })
        .collect();
    let min_fidelity = ex.fidelities.iter().copied().fold(f64::INFINITY, f64::min);
    let fidelities_ok = ex.fidelities.len() == 4 && min_fidelity >= 1.0 - FIDELITY_TOL;
    let agree = agreement(report);
    Ok(Outcome {
        input: json!({ "command": "example-n4" }),
        seed: None,
        passed: fidelities_ok && agree == "agree",
        result: json!({
            "config": ConfigFile::from_config(&report.config).echo(),
            "rotated_phi_primes": ex.rotated_phi_primes.iter().copied().map(round_sig12).collect::<Vec<_>>(),
            "max_eigenvalue": report.max_eigenvalue,
            "multiplicity": report.multiplicity,
            "spectral_multiplicity": report.spectral_multiplicity,
            "agreement": agree,
            "max_residual": report.max_residual,
            "orthonormality_error": report.orthonormality_error,
            "fidelities": ex.fidelities,
            "min_fidelity": min_fidelity,
            "states": states,
        }),
    })
}

fn extend(target: &mut Value, more: Value) {
    if let (Value::Object(t), Value::Object(m)) = (target, more) {
        t.extend(m);
    }
}
