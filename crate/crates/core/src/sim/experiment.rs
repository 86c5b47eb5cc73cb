//! Shot-budget validation on a family of 8-qubit cut circuits.
//!
//! Qubits are split into groups: `[0,1,2] [3,4,5] [6,7]` for three partitions,
//! pairs for four. The circuit is
//!
//! 1. `ry`, `rz` on every qubit;
//! 2. an `rzz(π/2)` chain inside each group;
//! 3. a ring of `rzz(π/2)` gates joining the last qubit of each group to the
//!    first qubit of the next (the last group wraps to the first);
//! 4. `ry`, `rz` on every qubit, then the in-group chain again;
//! 5. a final `ry` on every qubit.
//!
//! The ring gates are cut space-like and the observable is `Z` on all qubits.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::estimator::{CutPlacement, CutPlan, ProductObservable};
use super::SimError;
use crate::circuit::CircuitIR;
use crate::math::sqrt;

pub const VALIDATION_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub partitions: usize,
    pub eps: f64,
    pub repetitions: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepetitionResult {
    pub exact: f64,
    pub estimate: f64,
    pub shots: u64,
}

impl RepetitionResult {
    pub fn error(&self) -> f64 {
        self.estimate - self.exact
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub n_total: u64,
    pub errors: Vec<f64>,
    /// Sample standard deviation of the errors.
    pub std: f64,
    pub mean_error: f64,
    /// `|mean error|` in units of `std/√n`.
    pub mean_error_z: f64,
}

impl ExperimentSummary {
    pub fn within_bound(&self) -> bool {
        self.std <= self.config.eps
    }
}

fn groups(partitions: usize) -> Result<Vec<Vec<usize>>, SimError> {
    match partitions {
        3 => Ok([[0, 1, 2].as_slice(), &[3, 4, 5], &[6, 7]]
            .map(|g| g.to_vec())
            .to_vec()),
        4 => Ok((0..4).map(|g| alloc::vec![2 * g, 2 * g + 1]).collect()),
        p => Err(SimError::Config(format!("{p} partitions (use 3 or 4)"))),
    }
}

/// Number of rotation angles the circuit consumes.
pub const fn parameter_count() -> usize {
    5 * VALIDATION_QUBITS
}

/// Builds the circuit and its ring cuts from `parameter_count()` angles.
pub fn validation_circuit(
    partitions: usize,
    params: &[f64],
) -> Result<(CircuitIR, Vec<CutPlacement>), SimError> {
    if params.len() != parameter_count() {
        return Err(SimError::Config(format!(
            "{} parameters given, {} needed",
            params.len(),
            parameter_count()
        )));
    }
    let groups = groups(partitions)?;
    let n = VALIDATION_QUBITS;
    let mut c = CircuitIR::new(&format!("validation_r{partitions}"), n);
    let mut angles = params.iter().copied();
    let mut next = || angles.next().unwrap();
    let chain = |c: &mut CircuitIR| {
        for g in &groups {
            for w in g.windows(2) {
                c.push("rzz", &[w[0], w[1]], &[PI / 2.0]);
            }
        }
    };
    for q in 0..n {
        c.push("ry", &[q], &[next()]).push("rz", &[q], &[next()]);
    }
    chain(&mut c);
    let mut cuts = Vec::new();
    for k in 0..groups.len() {
        let (a, b) = (
            *groups[k].last().unwrap(),
            groups[(k + 1) % groups.len()][0],
        );
        cuts.push(CutPlacement::Gate {
            gate: c.gates.len(),
        });
        c.push("rzz", &[a, b], &[PI / 2.0]);
    }
    for q in 0..n {
        c.push("ry", &[q], &[next()]).push("rz", &[q], &[next()]);
    }
    chain(&mut c);
    for q in 0..n {
        c.push("ry", &[q], &[next()]);
    }
    Ok((c, cuts))
}

/// One random circuit draw and one estimate.
pub fn run_repetition(config: &ExperimentConfig, rep: usize) -> Result<RepetitionResult, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(rep as u64);
    let params: Vec<f64> = (0..parameter_count())
        .map(|_| rng.random::<f64>() * 2.0 * PI)
        .collect();
    let (circuit, cuts) = validation_circuit(config.partitions, &params)?;
    let obs = ProductObservable::z_on(0..VALIDATION_QUBITS);
    let plan = CutPlan::new(&circuit, &cuts, &obs)?;
    let est_seed = config.seed ^ (rep as u64 + 1).wrapping_mul(0x5851_F42D_4C95_7F2D);
    let run = plan.estimate(config.eps, est_seed);
    Ok(RepetitionResult {
        exact: obs.exact(&circuit)?,
        estimate: run.estimate,
        shots: run.shots,
    })
}

pub fn summarize(config: &ExperimentConfig, reps: &[RepetitionResult]) -> ExperimentSummary {
    let errors: Vec<f64> = reps.iter().map(RepetitionResult::error).collect();
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    let var = if errors.len() > 1 {
        errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let std = sqrt(var);
    ExperimentSummary {
        config: *config,
        n_total: reps.first().map_or(0, |r| r.shots),
        mean_error: mean,
        mean_error_z: if std > 0.0 {
            mean.abs() / (std / sqrt(n))
        } else {
            0.0
        },
        std,
        errors,
    }
}

/// Runs every repetition in sequence.
pub fn variance_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary, SimError> {
    if config.repetitions == 0 || config.eps <= 0.0 {
        return Err(SimError::Config(format!("{config:?}")));
    }
    let reps = (0..config.repetitions)
        .map(|r| run_repetition(config, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(config, &reps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angles_give_plus_one() {
        for r in [3, 4] {
            let (c, cuts) = validation_circuit(r, &[0.0; parameter_count()]).unwrap();
            let obs = ProductObservable::z_on(0..VALIDATION_QUBITS);
            assert!((obs.exact(&c).unwrap() - 1.0).abs() < 1e-12);
            let plan = CutPlan::new(&c, &cuts, &obs).unwrap();
            assert_eq!(plan.partitions(), r);
            assert!((plan.exact_value() - 1.0).abs() < 1e-10);
            let run = plan.estimate(0.1, 1);
            assert!((run.estimate - 1.0).abs() < 0.5);
        }
    }

    #[test]
    fn budgets_match_closed_form() {
        let cfg = ExperimentConfig {
            partitions: 3,
            eps: 0.03,
            repetitions: 1,
            seed: 0,
        };
        let rep = run_repetition(&cfg, 0).unwrap();
        let per = crate::math::ceil_tolerant(3.0 * 81.0 * 1.5 / 0.0009);
        assert_eq!(rep.shots, 3 * per);
        assert!((rep.shots as f64 / 1.2e6 - 1.0).abs() < 0.05);
    }

    #[test]
    fn plan_exact_matches_statevector() {
        let cfg = ExperimentConfig {
            partitions: 4,
            eps: 0.5,
            repetitions: 1,
            seed: 3,
        };
        let rep = run_repetition(&cfg, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        rng.set_stream(0);
        let params: Vec<f64> = (0..parameter_count())
            .map(|_| rng.random::<f64>() * 2.0 * PI)
            .collect();
        let (c, cuts) = validation_circuit(4, &params).unwrap();
        let obs = ProductObservable::z_on(0..VALIDATION_QUBITS);
        let plan = CutPlan::new(&c, &cuts, &obs).unwrap();
        assert!((plan.exact_value() - rep.exact).abs() < 1e-10);
    }
}
