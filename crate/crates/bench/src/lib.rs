//! Shared instance builders for the solver benchmarks.

use rangepb_core::gen::{generate_instance, GeneratorConfig};
use rangepb_core::Instance;

/// A seeded instance sized for the pseudo-polynomial solvers: costs and
/// budgets well past the brute-force comfort zone.
pub fn dp_sized(projects: usize, voters: usize, seed: u64) -> Instance {
    let config = GeneratorConfig {
        num_projects: projects,
        max_degrees: 6,
        num_voters: voters,
        max_cost: 400,
        budget_range: (600, 900),
    };
    generate_instance(&config, seed).unwrap()
}

/// A small instance every algorithm can handle, for like-for-like runs.
pub fn oracle_sized(seed: u64) -> Instance {
    let config = GeneratorConfig {
        num_projects: 8,
        max_degrees: 3,
        num_voters: 6,
        max_cost: 10,
        budget_range: (8, 20),
    };
    generate_instance(&config, seed).unwrap()
}
