use std::collections::BTreeSet;

use crate::model::{Allocation, Instance, Orientation, Rule, WelfareRule};

use super::{Algorithm, SolveError, SolveResult, TableStats, DEFAULT_ALLOCATION_CAP};

/// Enumerates every allocation of `instance` in lexicographic degree order,
/// yielding only the valid ones.
fn for_each_valid(instance: &Instance, mut f: impl FnMut(&Allocation, u64)) {
    let m = instance.num_projects();
    let mut degrees = vec![0usize; m];
    loop {
        let alloc = Allocation::new(degrees.clone());
        let cost = alloc.cost(instance);
        if cost <= instance.budget() {
            f(&alloc, cost);
        }
        // odometer step: last project is the least significant digit
        let mut j = m;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if degrees[j] < instance.project(j).top_degree() {
                degrees[j] += 1;
                degrees[j + 1..].fill(0);
                break;
            }
        }
    }
}

/// Exhaustive search under an arbitrary welfare objective.
///
/// Returns the extremal result (with the lexicographically first optimal
/// allocation as witness) together with *all* optimal allocations, which the
/// axiom checkers quantify over. This is the testing oracle: it evaluates
/// allocations through the rule's own value function and never touches the
/// DP or score-table machinery.
pub fn brute_force_by<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
    cap: u128,
) -> Result<(SolveResult, Vec<Allocation>), SolveError> {
    let size = instance.allocation_space();
    if size > cap {
        return Err(SolveError::SearchSpaceTooLarge { size, cap });
    }
    let maximize = rule.orientation() == Orientation::Maximize;

    let mut best: Option<u64> = None;
    let mut optimal: Vec<Allocation> = Vec::new();
    let mut enumerated = 0u64;
    for_each_valid(instance, |alloc, _cost| {
        enumerated += 1;
        let value = rule.total_value(instance, alloc);
        let better = match best {
            None => true,
            Some(b) if maximize => value > b,
            Some(b) => value < b,
        };
        if better {
            best = Some(value);
            optimal.clear();
        }
        if best == Some(value) {
            optimal.push(alloc.clone());
        }
    });

    // The all-unfunded allocation costs 0, so the valid set is never empty.
    let optimal_value = best.expect("at least one valid allocation");
    let result = SolveResult {
        optimal_value,
        allocation: optimal[0].clone(),
        algorithm: Algorithm::BruteForce,
        table_stats: TableStats {
            rows: 0,
            columns: 0,
            cells_touched: enumerated,
        },
        note: None,
    };
    Ok((result, optimal))
}

/// [`brute_force_by`] for one of the built-in rules with the default cap.
pub fn brute_force(
    rule: Rule,
    instance: &Instance,
) -> Result<(SolveResult, Vec<Allocation>), SolveError> {
    brute_force_by(&rule, instance, DEFAULT_ALLOCATION_CAP)
}

/// [`brute_force_by`] for a built-in rule with an explicit cap.
pub fn brute_force_capped(
    rule: Rule,
    instance: &Instance,
    cap: u128,
) -> Result<(SolveResult, Vec<Allocation>), SolveError> {
    brute_force_by(&rule, instance, cap)
}

/// Every funded `(project, degree)` pair that appears in some optimal
/// allocation. Degree 0 entries are not reported.
pub fn winners(rule: Rule, instance: &Instance) -> Result<BTreeSet<(usize, usize)>, SolveError> {
    let (_, optimal) = brute_force(rule, instance)?;
    let mut set = BTreeSet::new();
    for alloc in &optimal {
        set.extend(alloc.funded());
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Instance {
        Instance::from_costs(
            vec![vec![0, 2, 4], vec![0, 3]],
            5,
            vec![vec![2, 0], vec![4, 3]],
            vec![vec![4, 3], vec![4, 3]],
        )
        .unwrap()
    }

    #[test]
    fn cardinal_has_unique_optimum() {
        let (result, optimal) = brute_force(Rule::Cardinal, &sample()).unwrap();
        assert_eq!(result.optimal_value, 3);
        assert_eq!(optimal, vec![Allocation::new(vec![1, 1])]);
    }

    #[test]
    fn cost_has_two_optima() {
        let (result, optimal) = brute_force(Rule::Cost, &sample()).unwrap();
        assert_eq!(result.optimal_value, 8);
        assert_eq!(
            optimal,
            vec![Allocation::new(vec![1, 1]), Allocation::new(vec![2, 0])]
        );
    }

    #[test]
    fn zero_budget_forces_all_unfunded() {
        let instance = sample().with_budget(0);
        for rule in [Rule::Cardinal, Rule::Cost, Rule::CostCapped] {
            let (result, optimal) = brute_force(rule, &instance).unwrap();
            assert_eq!(result.optimal_value, 0);
            assert_eq!(optimal, vec![Allocation::zeros(2)]);
        }
        let (result, optimal) = brute_force(Rule::Distance, &instance).unwrap();
        // every lower bound is missed in full: (2+0) + (4+3)
        assert_eq!(result.optimal_value, 9);
        assert_eq!(optimal, vec![Allocation::zeros(2)]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_force_capped(Rule::Cost, &sample(), 5).unwrap_err();
        assert_eq!(err, SolveError::SearchSpaceTooLarge { size: 6, cap: 5 });
    }

    #[test]
    fn winners_union_all_optima() {
        let set = winners(Rule::Cost, &sample()).unwrap();
        assert_eq!(set, BTreeSet::from([(0, 1), (0, 2), (1, 1)]));
    }

    #[test]
    fn unique_optimum_winners_are_its_funded_degrees() {
        let set = winners(Rule::Cardinal, &sample()).unwrap();
        assert_eq!(set, BTreeSet::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn winners_empty_on_zero_budget() {
        assert!(winners(Rule::Cost, &sample().with_budget(0))
            .unwrap()
            .is_empty());
    }
}
