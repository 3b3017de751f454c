use serde::Serialize;

use super::allocation::Allocation;
use super::instance::Instance;

/// Whether a rule's total is to be maximized or minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Maximize,
    Minimize,
}

/// The four utilitarian selection rules.
///
/// * `Cardinal` counts, per voter, the funded projects whose chosen cost lies
///   inside the voter's range.
/// * `Cost` credits the chosen cost itself when it lies inside the range.
/// * `CostCapped` additionally credits an overshooting cost at the voter's
///   upper bound instead of dropping it to zero.
/// * `Distance` charges the gap between the chosen cost and the nearest end
///   of the voter's range; totals are minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Cardinal,
    Cost,
    CostCapped,
    Distance,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::Cardinal, Rule::Cost, Rule::CostCapped, Rule::Distance];

    pub fn orientation(self) -> Orientation {
        match self {
            Rule::Distance => Orientation::Minimize,
            _ => Orientation::Maximize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Cardinal => "cardinal",
            Rule::Cost => "cost",
            Rule::CostCapped => "capped",
            Rule::Distance => "distance",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cardinal" => Ok(Rule::Cardinal),
            "cost" => Ok(Rule::Cost),
            "capped" | "cost-capped" => Ok(Rule::CostCapped),
            "distance" => Ok(Rule::Distance),
            other => Err(format!("unknown rule `{other}`")),
        }
    }
}

/// Per-voter per-project value of choosing cost `chosen` under `rule`, given
/// the voter's bounds. For `Distance` this is a disutility.
pub(crate) fn project_value(rule: Rule, chosen: u64, lower: u64, upper: u64) -> u64 {
    match rule {
        Rule::Cardinal => {
            if chosen != 0 && lower <= chosen && chosen <= upper {
                1
            } else {
                0
            }
        }
        Rule::Cost => {
            if lower <= chosen && chosen <= upper {
                chosen
            } else {
                0
            }
        }
        Rule::CostCapped => {
            if chosen < lower {
                0
            } else if chosen <= upper {
                chosen
            } else {
                upper
            }
        }
        // at most one side is missed since lower <= upper
        Rule::Distance => lower.saturating_sub(chosen) + chosen.saturating_sub(upper),
    }
}

/// Utility (disutility for `Distance`) voter `voter` derives from `alloc`.
///
/// Defined pointwise for any allocation; validity against the budget is not
/// required here.
pub fn utility(rule: Rule, instance: &Instance, voter: usize, alloc: &Allocation) -> u64 {
    (0..instance.num_projects())
        .map(|j| {
            project_value(
                rule,
                alloc.chosen_cost(instance, j),
                instance.lower_bound(voter, j),
                instance.upper_bound(voter, j),
            )
        })
        .sum()
}

/// Sum of `utility` over all voters.
pub fn total_value(rule: Rule, instance: &Instance, alloc: &Allocation) -> u64 {
    (0..instance.num_voters())
        .map(|i| utility(rule, instance, i, alloc))
        .sum()
}

/// A welfare objective over allocations. The four built-in [`Rule`]s are the
/// canonical implementors; tests plug in deliberately broken rules to make
/// sure the axiom checkers can catch misbehaving objectives.
pub trait WelfareRule {
    fn orientation(&self) -> Orientation;
    fn total_value(&self, instance: &Instance, alloc: &Allocation) -> u64;
}

impl WelfareRule for Rule {
    fn orientation(&self) -> Orientation {
        Rule::orientation(*self)
    }

    fn total_value(&self, instance: &Instance, alloc: &Allocation) -> u64 {
        total_value(*self, instance, alloc)
    }
}
