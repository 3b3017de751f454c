use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::gen::{derive_seed, generate_instance, GeneratorConfig};
use crate::model::WelfareRule;
use crate::solve::SolveError;

use super::{check_axiom, AxiomId, AxiomReport};

/// Bounds for the random instances a counterexample search draws. Sizes are
/// kept small enough for exhaustive optima enumeration on every trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_projects: usize,
    pub max_degrees: usize,
    pub max_voters: usize,
    pub max_cost: u64,
    pub budget_range: (u64, u64),
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_projects: 4,
            max_degrees: 3,
            max_voters: 4,
            max_cost: 8,
            budget_range: (0, 12),
        }
    }
}

/// Runs the axiom checker over seeded random instances and returns the first
/// `Violated` report, or a satisfied-on-sample report carrying the trial
/// count. Trial `k` of a given seed always draws the same instance, so runs
/// are reproducible and independent trials can be distributed.
pub fn search_counterexamples<R: WelfareRule + ?Sized>(
    rule: &R,
    axiom: AxiomId,
    config: &SearchConfig,
    trials: u64,
    seed: u64,
) -> Result<AxiomReport, SolveError> {
    for trial in 0..trials {
        let mut report = check_trial(rule, axiom, config, seed, trial)?;
        if report.is_violated() {
            report.trials = Some(trial + 1);
            return Ok(report);
        }
    }
    let mut report = AxiomReport::satisfied(axiom);
    report.trials = Some(trials);
    Ok(report)
}

/// One seeded trial: draw sizes, draw the instance, run the checker.
pub(crate) fn check_trial<R: WelfareRule + ?Sized>(
    rule: &R,
    axiom: AxiomId,
    config: &SearchConfig,
    seed: u64,
    trial: u64,
) -> Result<AxiomReport, SolveError> {
    let trial_seed = derive_seed(seed, trial);
    let mut rng = ChaCha12Rng::seed_from_u64(trial_seed);
    let generator = GeneratorConfig {
        num_projects: rng.gen_range(1..=config.max_projects),
        max_degrees: config.max_degrees,
        num_voters: rng.gen_range(1..=config.max_voters),
        max_cost: config.max_cost,
        budget_range: config.budget_range,
    };
    let instance = generate_instance(&generator, derive_seed(trial_seed, u64::MAX))
        .expect("search configs stay within generator bounds");
    check_axiom(axiom, rule, &instance)
}
