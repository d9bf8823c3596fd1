//! Identity-verification engine: run seeded random trials of an equality
//! between two evaluation routes and report the error statistics.

use serde::Serialize;

use super::gen::GenConfig;
use crate::algebra::Multivector;
use crate::error::Result;

/// Outcome of one verification run. Deterministic for a given seed since
/// trials execute and aggregate in index order.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rule: String,
    pub trials: usize,
    pub failures: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub seed: u64,
}

impl VerifyReport {
    pub fn new(rule: &str, seed: u64) -> Self {
        VerifyReport {
            rule: rule.to_string(),
            trials: 0,
            failures: 0,
            max_abs_error: 0.0,
            max_rel_error: 0.0,
            seed,
        }
    }

    pub fn record(&mut self, abs: f64, rel: f64, tol: f64) {
        self.trials += 1;
        self.max_abs_error = self.max_abs_error.max(abs);
        self.max_rel_error = self.max_rel_error.max(rel);
        if !(rel <= tol) {
            self.failures += 1;
        }
    }

    pub fn record_failure(&mut self) {
        self.trials += 1;
        self.failures += 1;
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Absolute and normalized error between two multivectors. The relative
/// denominator is max(1, ||reference||), which keeps near-zero references
/// from blowing the quotient up.
pub fn error_metrics(lhs: &Multivector, rhs: &Multivector) -> (f64, f64) {
    let abs = match lhs.sub(rhs) {
        Ok(diff) => diff.norm(),
        Err(_) => f64::INFINITY,
    };
    (abs, abs / rhs.norm().max(1.0))
}

/// Runs `cfg.trials` random trials of the identity `lhs == rhs` on inputs
/// drawn by `generate`. Evaluation errors are counted as failures rather
/// than panics, so generator output can never abort a run.
pub fn verify_identity<T>(
    rule: &str,
    cfg: &GenConfig,
    tol: f64,
    mut generate: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> T,
    lhs: impl Fn(&T) -> Result<Multivector>,
    rhs: impl Fn(&T) -> Result<Multivector>,
) -> VerifyReport {
    let mut rng = cfg.rng();
    let mut report = VerifyReport::new(rule, cfg.seed);
    for _ in 0..cfg.trials {
        let input = generate(&mut rng);
        match (lhs(&input), rhs(&input)) {
            (Ok(l), Ok(r)) => {
                let (abs, rel) = error_metrics(&l, &r);
                report.record(abs, rel, tol);
            }
            _ => report.record_failure(),
        }
    }
    report
}
