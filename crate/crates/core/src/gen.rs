//! Seeded random instance generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::model::{Instance, ProjectDegrees};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible generator config: {0}")]
    InfeasibleConfig(String),
}

/// Shape of a randomly drawn instance. The same `(config, seed)` pair always
/// produces the same instance, on every platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub num_projects: usize,
    /// Upper bound on `t_j`; each project draws its degree count from
    /// `1..=max_degrees`.
    pub max_degrees: usize,
    pub num_voters: usize,
    /// Largest permissible cost a degree may take.
    pub max_cost: u64,
    /// Inclusive budget range.
    pub budget_range: (u64, u64),
}

impl GeneratorConfig {
    fn check(&self) -> Result<(), GenError> {
        if self.max_degrees == 0 {
            return Err(GenError::InfeasibleConfig(
                "max_degrees must be positive".into(),
            ));
        }
        if (self.max_degrees as u64) > self.max_cost {
            return Err(GenError::InfeasibleConfig(format!(
                "cannot draw {} distinct positive costs at most {}",
                self.max_degrees, self.max_cost
            )));
        }
        if self.budget_range.0 > self.budget_range.1 {
            return Err(GenError::InfeasibleConfig(format!(
                "empty budget range {:?}",
                self.budget_range
            )));
        }
        Ok(())
    }
}

/// Derives a child seed; used to give each trial of a search its own
/// deterministic stream.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 over the combined words
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws an instance: per project a sorted list of distinct costs with 0
/// prepended, per voter and project two permissible costs ordered into a
/// lower and upper bound, and a budget from the configured range.
pub fn generate_instance(config: &GeneratorConfig, seed: u64) -> Result<Instance, GenError> {
    config.check()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut projects = Vec::with_capacity(config.num_projects);
    for _ in 0..config.num_projects {
        let degrees = rng.gen_range(1..=config.max_degrees);
        let mut costs: Vec<u64> = Vec::with_capacity(degrees);
        while costs.len() < degrees {
            let cost = rng.gen_range(1..=config.max_cost);
            if !costs.contains(&cost) {
                costs.push(cost);
            }
        }
        costs.push(0);
        costs.sort_unstable();
        projects.push(ProjectDegrees::new_unchecked(costs));
    }

    let mut lower = vec![vec![0u64; config.num_projects]; config.num_voters];
    let mut upper = vec![vec![0u64; config.num_projects]; config.num_voters];
    for i in 0..config.num_voters {
        for (j, project) in projects.iter().enumerate() {
            let a = project.costs()[rng.gen_range(0..project.num_degrees())];
            let b = project.costs()[rng.gen_range(0..project.num_degrees())];
            lower[i][j] = a.min(b);
            upper[i][j] = a.max(b);
        }
    }

    let budget = rng.gen_range(config.budget_range.0..=config.budget_range.1);
    let instance = Instance::new(projects, budget, lower, upper)
        .expect("generated instances satisfy the model invariants");
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> GeneratorConfig {
        GeneratorConfig {
            num_projects: 3,
            max_degrees: 3,
            num_voters: 3,
            max_cost: 8,
            budget_range: (1, 12),
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = generate_instance(&config(), 42).unwrap();
        let b = generate_instance(&config(), 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let a = generate_instance(&config(), 1).unwrap();
        let b = generate_instance(&config(), 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..1000 {
            let instance = generate_instance(&config(), seed).unwrap();
            assert!(instance.revalidate().is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn infeasible_configs_are_rejected() {
        let mut c = config();
        c.max_degrees = 20;
        c.max_cost = 3;
        assert!(matches!(
            generate_instance(&c, 0),
            Err(GenError::InfeasibleConfig(_))
        ));
    }

    #[test]
    fn derived_seeds_spread() {
        let seeds: std::collections::HashSet<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 100);
    }
}
