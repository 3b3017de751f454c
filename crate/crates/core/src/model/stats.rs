use serde::Serialize;

use super::instance::Instance;
use super::rule::Rule;
use super::score::score_table;
use crate::solve::SolveError;

/// Per-project sets of permissible costs that every voter's range admits.
///
/// Degree 0 participates like any other degree, so a cost of 0 shows up
/// whenever all lower bounds on the project are 0. A set may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsensusRanges {
    sets: Vec<Vec<u64>>,
}

impl ConsensusRanges {
    pub fn num_projects(&self) -> usize {
        self.sets.len()
    }

    /// Sorted unanimously acceptable costs of project `j`.
    pub fn set(&self, project: usize) -> &[u64] {
        &self.sets[project]
    }

    pub fn is_empty(&self, project: usize) -> bool {
        self.sets[project].is_empty()
    }

    pub fn tau_min(&self, project: usize) -> Option<u64> {
        self.sets[project].first().copied()
    }

    pub fn tau_max(&self, project: usize) -> Option<u64> {
        self.sets[project].last().copied()
    }

    pub fn contains(&self, project: usize, cost: u64) -> bool {
        self.sets[project].binary_search(&cost).is_ok()
    }

    /// Projects with a nonempty consensus set.
    pub fn nonempty_projects(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.sets.len()).filter(|&j| !self.sets[j].is_empty())
    }
}

/// Intersects all voters' ranges with each project's cost list.
pub fn consensus_ranges(instance: &Instance) -> ConsensusRanges {
    let sets = instance
        .projects()
        .iter()
        .enumerate()
        .map(|(j, project)| {
            project
                .costs()
                .iter()
                .copied()
                .filter(|&cost| {
                    (0..instance.num_voters()).all(|i| {
                        instance.lower_bound(i, j) <= cost && cost <= instance.upper_bound(i, j)
                    })
                })
                .collect()
        })
        .collect();
    ConsensusRanges { sets }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An instance with all costs, bounds, and the budget divided by their
/// common factor. Degree indices are untouched, so optimal allocations carry
/// over unchanged.
#[derive(Debug, Clone)]
pub struct ScaledInstance {
    /// The common factor every money amount was divided by.
    pub factor: u64,
    /// Largest permissible cost after scaling.
    pub delta: u64,
    pub instance: Instance,
}

/// Computes the common factor of all nonzero permissible costs and the
/// budget, the scaled-down instance, and its largest remaining cost.
pub fn scalable_limit(instance: &Instance) -> Result<ScaledInstance, SolveError> {
    let mut g = instance.budget();
    let mut any_positive = false;
    for project in instance.projects() {
        for &cost in &project.costs()[1..] {
            any_positive = true;
            g = gcd(g, cost);
        }
    }
    if !any_positive {
        return Err(SolveError::AllCostsZero);
    }
    debug_assert!(g > 0, "gcd of nonzero costs is positive");

    let mut scaled = instance.clone();
    for project in scaled.projects_mut() {
        for cost in project.costs_mut() {
            *cost /= g;
        }
    }
    {
        let (lower, upper) = scaled.bounds_mut();
        for row in lower.iter_mut().chain(upper.iter_mut()) {
            for bound in row {
                *bound /= g;
            }
        }
    }
    let scaled = scaled.with_budget(instance.budget() / g);
    debug_assert!(scaled.revalidate().is_ok());

    Ok(ScaledInstance {
        factor: g,
        delta: instance.max_cost() / g,
        instance: scaled,
    })
}

/// The spread parameter of the distance rule: the largest single-degree
/// disutility contribution `q_max` over the sum `q_sigma` of per-project
/// minimum contributions. Degenerate when `q_sigma` is 0, in which case the
/// rounding-based solver is undefined and callers fall back to the exact DP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VarianceCoefficient {
    Defined { q_max: u64, q_sigma: u64 },
    Degenerate { q_max: u64 },
}

impl VarianceCoefficient {
    /// The ratio `q_max / q_sigma` when defined.
    pub fn gamma(&self) -> Option<f64> {
        match self {
            VarianceCoefficient::Defined { q_max, q_sigma } => {
                Some(*q_max as f64 / *q_sigma as f64)
            }
            VarianceCoefficient::Degenerate { .. } => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, VarianceCoefficient::Degenerate { .. })
    }
}

pub fn variance_coefficient(instance: &Instance) -> VarianceCoefficient {
    let table = score_table(Rule::Distance, instance);
    let q_max = table.max_entry();
    let q_sigma = table.min_total();
    if q_sigma == 0 {
        VarianceCoefficient::Degenerate { q_max }
    } else {
        VarianceCoefficient::Defined { q_max, q_sigma }
    }
}
