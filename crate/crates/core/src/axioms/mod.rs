//! Executable checkers for eight budgeting axioms.
//!
//! Every checker takes a welfare rule and an instance, treats "selected"
//! as membership in the set of all welfare-optimal valid allocations (the
//! rules are irresolute), and returns a verdict. A `Violated` verdict
//! carries a witness precise enough to re-verify against the axiom's raw
//! definition with [`replay_witness`], independent of the checker's search
//! order.

mod checkers;
pub mod fixtures;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    consensus_ranges, Allocation, BoundSide, Instance, ValidationError, WelfareRule,
};
use crate::solve::{brute_force_by, SolveError, DEFAULT_ALLOCATION_CAP};

pub use checkers::{
    check_axiom, check_degree_efficient, check_discount_proof, check_lower_bound_sensitive,
    check_range_abiding, check_range_converging, check_range_unanimous, check_shrink_resistant,
    check_upper_bound_sensitive, default_budget_increments,
};
pub use search::{search_counterexamples, SearchConfig};

/// The eight axioms, in a fixed order so verdict matrices line up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    ShrinkResistant,
    RangeAbiding,
    RangeConverging,
    RangeUnanimous,
    DegreeEfficient,
    LowerBoundSensitive,
    UpperBoundSensitive,
    DiscountProof,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::ShrinkResistant,
        AxiomId::RangeAbiding,
        AxiomId::RangeConverging,
        AxiomId::RangeUnanimous,
        AxiomId::DegreeEfficient,
        AxiomId::LowerBoundSensitive,
        AxiomId::UpperBoundSensitive,
        AxiomId::DiscountProof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::ShrinkResistant => "shrink-resistant",
            AxiomId::RangeAbiding => "range-abiding",
            AxiomId::RangeConverging => "range-converging",
            AxiomId::RangeUnanimous => "range-unanimous",
            AxiomId::DegreeEfficient => "degree-efficient",
            AxiomId::LowerBoundSensitive => "lower-bound-sensitive",
            AxiomId::UpperBoundSensitive => "upper-bound-sensitive",
            AxiomId::DiscountProof => "discount-proof",
        }
    }
}

impl std::fmt::Display for AxiomId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error(
        "discounting project {project} degree {degree} would collide with the next lower cost"
    )]
    Collision { project: usize, degree: usize },
    #[error("mutation produced an invalid instance: {0:?}")]
    InvalidResult(Vec<ValidationError>),
}

/// An instance edit an axiom quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mutation {
    /// Move one voter's bound one permissible-cost step toward a chosen cost.
    ShrinkBound {
        voter: usize,
        project: usize,
        side: BoundSide,
        new_value: u64,
    },
    BudgetIncrease {
        delta: u64,
    },
    /// Lower the cost of one degree by one money unit, dragging along any
    /// voter bound equal to the old cost so bounds stay permissible.
    CostDiscount {
        project: usize,
        degree: usize,
    },
}

impl Mutation {
    /// Applies the mutation; the result is always a fully valid instance.
    pub fn apply(&self, instance: &Instance) -> Result<Instance, MutationError> {
        match *self {
            Mutation::ShrinkBound {
                voter,
                project,
                side,
                new_value,
            } => {
                let mut out = instance.clone();
                out.set_bound(voter, project, side, new_value);
                out.revalidate().map_err(MutationError::InvalidResult)?;
                Ok(out)
            }
            Mutation::BudgetIncrease { delta } => {
                Ok(instance.with_budget(instance.budget() + delta))
            }
            Mutation::CostDiscount { project, degree } => {
                assert!(degree >= 1, "degree 0 has no cost to discount");
                let old = instance.project(project).cost(degree);
                if instance.project(project).cost(degree - 1) + 1 == old {
                    return Err(MutationError::Collision { project, degree });
                }
                let mut out = instance.clone();
                out.projects_mut()[project].costs_mut()[degree] = old - 1;
                let (lower, upper) = out.bounds_mut();
                for row in lower.iter_mut().chain(upper.iter_mut()) {
                    if row[project] == old {
                        row[project] = old - 1;
                    }
                }
                out.revalidate().map_err(MutationError::InvalidResult)?;
                Ok(out)
            }
        }
    }
}

/// The falsifying evidence inside a `Violated` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDetail {
    /// `allocation` was optimal but stops being optimal after `mutation`.
    Shrink {
        allocation: Allocation,
        mutation: Mutation,
        optima_after: Vec<Allocation>,
    },
    /// `allocation` funds `project` above the unanimously acceptable maximum.
    RangeAbiding {
        allocation: Allocation,
        project: usize,
        chosen_cost: u64,
        tau_max: u64,
    },
    /// After raising the budget by `delta`, `successor` is selected yet no
    /// consensus project moved closer to its consensus range.
    RangeConverging {
        delta: u64,
        allocation: Allocation,
        successor: Allocation,
    },
    /// The affordable allocation funding every project at its consensus
    /// maximum is not selected.
    RangeUnanimous {
        consensus_allocation: Allocation,
        optima: Vec<Allocation>,
    },
    /// `allocation` is selected although `project` could be raised to
    /// `degree` within the budget.
    DegreeEfficient {
        allocation: Allocation,
        project: usize,
        degree: usize,
    },
    /// `allocation` is selected although `counter` (differing only at
    /// `project`) also undershoots every voter's lower bound, less badly.
    LowerBound {
        allocation: Allocation,
        counter: Allocation,
        project: usize,
    },
    /// Mirror of `LowerBound` for overshooting every upper bound.
    UpperBound {
        allocation: Allocation,
        counter: Allocation,
        project: usize,
    },
    /// `allocation` was optimal but stops being optimal after discounting
    /// its chosen degree by one money unit.
    Discount {
        allocation: Allocation,
        mutation: Mutation,
        optima_after: Vec<Allocation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: Instance,
    pub detail: WitnessDetail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Trials run before this verdict, for sampled searches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    /// Discount mutations skipped because the new cost would collide with an
    /// existing degree.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped: Vec<Mutation>,
}

impl AxiomReport {
    pub(crate) fn satisfied(axiom: AxiomId) -> Self {
        Self {
            axiom,
            verdict: Verdict::Satisfied,
            witness: None,
            trials: None,
            skipped: Vec::new(),
        }
    }

    pub(crate) fn violated(axiom: AxiomId, instance: &Instance, detail: WitnessDetail) -> Self {
        Self {
            axiom,
            verdict: Verdict::Violated,
            witness: Some(Witness {
                instance: instance.clone(),
                detail,
            }),
            trials: None,
            skipped: Vec::new(),
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

fn optima<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<Vec<Allocation>, SolveError> {
    brute_force_by(rule, instance, DEFAULT_ALLOCATION_CAP).map(|(_, all)| all)
}

fn is_selected(optima: &[Allocation], alloc: &Allocation) -> bool {
    optima.binary_search(alloc).is_ok()
}

/// Re-verifies a `Violated` report against the raw axiom definition.
///
/// Returns `Ok(true)` when the witness genuinely falsifies the axiom for
/// `rule` on the witnessed instance, `Ok(false)` when it does not (or the
/// report has no witness).
pub fn replay_witness<R: WelfareRule + ?Sized>(
    rule: &R,
    report: &AxiomReport,
) -> Result<bool, SolveError> {
    let Some(witness) = &report.witness else {
        return Ok(false);
    };
    let instance = &witness.instance;
    let base_optima = optima(rule, instance)?;

    let confirmed = match &witness.detail {
        WitnessDetail::Shrink {
            allocation,
            mutation,
            ..
        } => {
            let Mutation::ShrinkBound {
                voter,
                project,
                side,
                new_value,
            } = *mutation
            else {
                return Ok(false);
            };
            if !is_selected(&base_optima, allocation) {
                return Ok(false);
            }
            let choc = allocation.chosen_cost(instance, project);
            let costs = instance.project(project).costs();
            let old = match side {
                BoundSide::Lower => instance.lower_bound(voter, project),
                BoundSide::Upper => instance.upper_bound(voter, project),
            };
            let one_step_toward = match side {
                // lower bound narrows upward, never crossing the chosen cost
                BoundSide::Lower => {
                    old < choc
                        && costs.contains(&new_value)
                        && new_value <= choc
                        && new_value > old
                        && !costs.iter().any(|&c| c > old && c < new_value)
                }
                BoundSide::Upper => {
                    old > choc
                        && costs.contains(&new_value)
                        && new_value >= choc
                        && new_value < old
                        && !costs.iter().any(|&c| c < old && c > new_value)
                }
            };
            if !one_step_toward {
                return Ok(false);
            }
            let Ok(mutated) = mutation.apply(instance) else {
                return Ok(false);
            };
            !is_selected(&optima(rule, &mutated)?, allocation)
        }
        WitnessDetail::RangeAbiding {
            allocation,
            project,
            chosen_cost,
            tau_max,
        } => {
            let tau = consensus_ranges(instance);
            is_selected(&base_optima, allocation)
                && allocation.chosen_cost(instance, *project) == *chosen_cost
                && tau.tau_max(*project) == Some(*tau_max)
                && chosen_cost > tau_max
        }
        WitnessDetail::RangeConverging {
            delta,
            allocation,
            successor,
        } => {
            let tau = consensus_ranges(instance);
            let consensus_projects: Vec<usize> = tau.nonempty_projects().collect();
            if consensus_projects.is_empty() || allocation == successor || *delta == 0 {
                return Ok(false);
            }
            let bumped = instance.with_budget(instance.budget() + delta);
            let bumped_optima = optima(rule, &bumped)?;
            is_selected(&base_optima, allocation)
                && is_selected(&bumped_optima, successor)
                && consensus_projects.iter().all(|&j| {
                    let before = allocation.chosen_cost(instance, j);
                    let after = successor.chosen_cost(instance, j);
                    let anchor = tau.tau_min(j).expect("nonempty consensus");
                    !tau.contains(j, before) && before.abs_diff(anchor) <= after.abs_diff(anchor)
                })
        }
        WitnessDetail::RangeUnanimous {
            consensus_allocation,
            ..
        } => {
            let tau = consensus_ranges(instance);
            let all_nonempty = (0..instance.num_projects()).all(|j| !tau.is_empty(j));
            if !all_nonempty {
                return Ok(false);
            }
            let total: u64 = (0..instance.num_projects())
                .map(|j| tau.tau_max(j).unwrap())
                .sum();
            let matches_tau = (0..instance.num_projects())
                .all(|j| consensus_allocation.chosen_cost(instance, j) == tau.tau_max(j).unwrap());
            total <= instance.budget()
                && matches_tau
                && !is_selected(&base_optima, consensus_allocation)
        }
        WitnessDetail::DegreeEfficient {
            allocation,
            project,
            degree,
        } => {
            let chosen = allocation.degree_of(*project);
            is_selected(&base_optima, allocation)
                && *degree > chosen
                && *degree <= instance.project(*project).top_degree()
                && allocation.cost(instance) - allocation.chosen_cost(instance, *project)
                    + instance.project(*project).cost(*degree)
                    <= instance.budget()
        }
        WitnessDetail::LowerBound {
            allocation,
            counter,
            project,
        } => {
            let near = allocation.chosen_cost(instance, *project);
            let far = counter.chosen_cost(instance, *project);
            differs_only_at(allocation, counter, *project)
                && is_selected(&base_optima, allocation)
                && counter.is_valid(instance)
                && near < far
                && (0..instance.num_voters()).all(|i| far < instance.lower_bound(i, *project))
        }
        WitnessDetail::UpperBound {
            allocation,
            counter,
            project,
        } => {
            let near = allocation.chosen_cost(instance, *project);
            let far = counter.chosen_cost(instance, *project);
            differs_only_at(allocation, counter, *project)
                && is_selected(&base_optima, allocation)
                && counter.is_valid(instance)
                && near > far
                && (0..instance.num_voters()).all(|i| far > instance.upper_bound(i, *project))
        }
        WitnessDetail::Discount {
            allocation,
            mutation,
            ..
        } => {
            let Mutation::CostDiscount { project, degree } = *mutation else {
                return Ok(false);
            };
            if allocation.degree_of(project) != degree || degree == 0 {
                return Ok(false);
            }
            if !is_selected(&base_optima, allocation) {
                return Ok(false);
            }
            let Ok(mutated) = mutation.apply(instance) else {
                return Ok(false);
            };
            !is_selected(&optima(rule, &mutated)?, allocation)
        }
    };
    Ok(confirmed)
}

fn differs_only_at(a: &Allocation, b: &Allocation, project: usize) -> bool {
    a.len() == b.len()
        && a.degrees()
            .iter()
            .zip(b.degrees())
            .enumerate()
            .all(|(j, (x, y))| if j == project { x != y } else { x == y })
}
