//! Random sampling of measurement configurations comparing `⟨I^N⟩` with the
//! value of the reduced two-qubit configuration.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell::{reduce_projected, BellConfig};
use crate::error::{Error, Result};

/// Slack allowed in `i_2 ≥ i_n` (and its mirror) before a sample counts as a
/// counterexample.
pub const SCAN_TOL: f64 = 1e-9;

/// Aggregate result of [`ordering_scan`] for a single `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub n: usize,
    pub samples: usize,
    /// Samples falling in the `Γ` excluded set.
    pub excluded: usize,
    /// Samples with `i_n > 2`.
    pub positive_violations: usize,
    /// Samples with `i_n < −2`.
    pub negative_violations: usize,
    pub counterexamples: usize,
    /// Largest `i_n − i_2` over positive violations and `i_2 − i_n` over
    /// negative ones; `0` when there are none.
    pub max_gap: f64,
    pub max_abs_i_n: f64,
    pub max_abs_i_2: f64,
    /// Samples with `|i_n| > 2√2 + 1e-9`.
    pub tsirelson_exceeded: usize,
}

impl ScanSummary {
    pub fn violations(&self) -> usize {
        self.positive_violations + self.negative_violations
    }

    pub fn violation_rate(&self) -> f64 {
        self.violations() as f64 / self.samples as f64
    }

    pub fn passed(&self) -> bool {
        self.counterexamples == 0 && self.max_gap <= SCAN_TOL && self.tsirelson_exceeded == 0
    }
}

enum Sample {
    Excluded,
    Reduced { i_n: f64, i_2: f64 },
}

fn sample_rng(seed: u64, n: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 48) | index as u64);
    rng
}

fn draw(n: usize, seed: u64, index: usize) -> Result<Sample> {
    let mut rng = sample_rng(seed, n, index);
    let cfg = BellConfig::random(n, &mut rng)?;
    match reduce_projected(&cfg) {
        Ok(r) => Ok(Sample::Reduced { i_n: r.i_n, i_2: r.i_2 }),
        Err(Error::DegenerateDirection(_)) => Ok(Sample::Excluded),
        Err(e) => Err(e),
    }
}

/// Draws `samples` configurations per `n`, each uniform on the sphere, and
/// checks `i_n > 2 ⇒ i_2 ≥ i_n − 1e-9` and `i_n < −2 ⇒ i_2 ≤ i_n + 1e-9`.
///
/// Sample `k` for qubit count `n` uses its own ChaCha8 stream derived from
/// `(seed, n, k)`, so the summary does not depend on the thread count.
pub fn ordering_scan(n_list: &[usize], samples: usize, seed: u64) -> Result<Vec<ScanSummary>> {
    if samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    let ceiling = 2.0 * std::f64::consts::SQRT_2 + SCAN_TOL;
    n_list
        .iter()
        .map(|&n| {
            let draws: Vec<Sample> =
                (0..samples).into_par_iter().map(|k| draw(n, seed, k)).collect::<Result<_>>()?;
            let mut s = ScanSummary {
                n,
                samples,
                excluded: 0,
                positive_violations: 0,
                negative_violations: 0,
                counterexamples: 0,
                max_gap: 0.0,
                max_abs_i_n: 0.0,
                max_abs_i_2: 0.0,
                tsirelson_exceeded: 0,
            };
            for d in draws {
                let Sample::Reduced { i_n, i_2 } = d else {
                    s.excluded += 1;
                    continue;
                };
                s.max_abs_i_n = s.max_abs_i_n.max(i_n.abs());
                s.max_abs_i_2 = s.max_abs_i_2.max(i_2.abs());
                if i_n.abs() > ceiling {
                    s.tsirelson_exceeded += 1;
                }
                let gap = if i_n > 2.0 {
                    s.positive_violations += 1;
                    i_n - i_2
                } else if i_n < -2.0 {
                    s.negative_violations += 1;
                    i_2 - i_n
                } else {
                    continue;
                };
                s.max_gap = s.max_gap.max(gap);
                if gap > SCAN_TOL {
                    s.counterexamples += 1;
                }
            }
            Ok(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_samples() {
        assert!(ordering_scan(&[3], 0, 1).is_err());
    }

    #[test]
    fn independent_of_thread_count() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| ordering_scan(&[3, 4], 500, 11).unwrap());
        let b = four.install(|| ordering_scan(&[3, 4], 500, 11).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn small_scan_passes() {
        for s in ordering_scan(&[2, 3, 4], 2000, 7).unwrap() {
            assert!(s.passed(), "{s:?}");
        }
    }
}
