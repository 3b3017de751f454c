//! Differential tests: the DP solvers against exhaustive enumeration, and
//! the approximation schemes against their guarantees.

use rangepb_core::gen::{derive_seed, generate_instance, GeneratorConfig};
use rangepb_core::{
    brute_force, fptas_max, fptas_min_distance, solve_exact, solve_scaled, total_value, Epsilon,
    Rule, SolveError,
};

fn sweep_config(seed: u64) -> (GeneratorConfig, u64) {
    // draw sizes from the seed so the sweep covers the whole small range
    let s = derive_seed(seed, 99);
    let max_cost = 2 + ((s >> 24) % 7);
    let config = GeneratorConfig {
        num_projects: 1 + (s % 4) as usize,
        max_degrees: (1 + ((s >> 8) % 3) as usize).min(max_cost as usize),
        num_voters: 1 + ((s >> 16) % 4) as usize,
        max_cost,
        budget_range: (0, 12),
    };
    (config, derive_seed(seed, 1))
}

#[test]
fn dp_matches_brute_force_on_500_instances() {
    for seed in 0..500 {
        let (config, inst_seed) = sweep_config(seed);
        let instance = generate_instance(&config, inst_seed).unwrap();
        for rule in Rule::ALL {
            let exact = solve_exact(rule, &instance).unwrap();
            let (oracle, optima) = brute_force(rule, &instance).unwrap();
            assert_eq!(
                exact.optimal_value, oracle.optimal_value,
                "seed {seed} rule {rule} on {instance:?}"
            );
            // the DP's witness must itself be optimal and priced correctly
            assert!(exact.allocation.is_valid(&instance));
            assert_eq!(
                total_value(rule, &instance, &exact.allocation),
                exact.optimal_value,
                "seed {seed} rule {rule}: backtracked allocation mispriced"
            );
            assert!(optima.binary_search(&exact.allocation).is_ok());
        }
    }
}

#[test]
fn scaled_dp_matches_exact_on_planted_factors() {
    let factors = [2u64, 3, 5, 10];
    for seed in 0..200 {
        let (config, inst_seed) = sweep_config(seed);
        let base = generate_instance(&config, inst_seed).unwrap();
        let factor = factors[(seed % 4) as usize];
        let doc = {
            let mut doc = rangepb_core::io::InstanceDocument::from_instance(&base, None);
            doc.budget *= factor;
            for p in &mut doc.projects {
                for c in &mut p.costs {
                    *c *= factor;
                }
            }
            for v in &mut doc.voters {
                for b in v.lower.iter_mut().chain(v.upper.iter_mut()) {
                    *b *= factor;
                }
            }
            doc
        };
        let (planted, _) = doc.into_instance().unwrap();
        for rule in Rule::ALL {
            let scaled = solve_scaled(rule, &planted).unwrap();
            let exact = solve_exact(rule, &planted).unwrap();
            assert_eq!(
                scaled.optimal_value, exact.optimal_value,
                "seed {seed} {rule}"
            );
            assert_eq!(scaled.allocation, exact.allocation, "seed {seed} {rule}");
        }
    }
}

#[test]
fn fptas_guarantees_hold_on_small_sweep() {
    let epsilons = [
        Epsilon::new(1, 10).unwrap(),
        Epsilon::new(3, 10).unwrap(),
        Epsilon::new(1, 2).unwrap(),
        Epsilon::new(9, 10).unwrap(),
    ];
    for seed in 0..150 {
        let (config, inst_seed) = sweep_config(seed);
        let instance = generate_instance(&config, inst_seed).unwrap();
        for eps in epsilons {
            for rule in [Rule::Cost, Rule::CostCapped] {
                let approx = fptas_max(rule, &instance, eps).unwrap();
                let (oracle, _) = brute_force(rule, &instance).unwrap();
                assert!(approx.allocation.is_valid(&instance));
                // value * den >= OPT * (den - num), exactly
                assert!(
                    approx.optimal_value as u128 * eps.denom() as u128
                        >= oracle.optimal_value as u128 * (eps.denom() - eps.numer()) as u128,
                    "seed {seed} {rule} eps {eps}: {} vs OPT {}",
                    approx.optimal_value,
                    oracle.optimal_value
                );
            }
            match fptas_min_distance(&instance, eps) {
                Ok(approx) => {
                    let (oracle, _) = brute_force(Rule::Distance, &instance).unwrap();
                    assert!(approx.allocation.is_valid(&instance));
                    assert!(
                        approx.optimal_value as u128 * eps.denom() as u128
                            <= oracle.optimal_value as u128 * (eps.denom() + eps.numer()) as u128,
                        "seed {seed} distance eps {eps}"
                    );
                }
                Err(SolveError::DegenerateVarianceCoefficient) => {}
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
    }
}

#[test]
fn tiny_epsilon_recovers_exact_distance_optimum() {
    let eps = Epsilon::new(1, 1000).unwrap();
    let mut checked = 0;
    for seed in 0..200 {
        let (config, inst_seed) = sweep_config(seed);
        let instance = generate_instance(&config, inst_seed).unwrap();
        if let Ok(approx) = fptas_min_distance(&instance, eps) {
            let (oracle, _) = brute_force(Rule::Distance, &instance).unwrap();
            assert_eq!(approx.optimal_value, oracle.optimal_value, "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked > 20, "sweep produced too few non-degenerate draws");
}
