use crate::model::{scalable_limit, score_table, total_value, Instance, Rule};

use super::dp::dp_solve_capped;
use super::{Algorithm, SolveError, SolveResult, DEFAULT_COLUMN_CAP};

/// Columns a valid allocation can actually reach under `rule`, if the rule
/// admits a budget-based bound.
///
/// For the cost-proportional rules every degree's score is at most `n` times
/// its cost, so any score beyond `n * b` forces a cost beyond `b`; pruning
/// those columns keeps the table pseudo-polynomial in the budget.
fn useful_span(rule: Rule, instance: &Instance) -> Option<u64> {
    match rule {
        Rule::Cost | Rule::CostCapped => Some(instance.num_voters() as u64 * instance.budget()),
        Rule::Cardinal | Rule::Distance => None,
    }
}

/// Exact optimum of `rule` via the score-table DP.
pub fn solve_exact(rule: Rule, instance: &Instance) -> Result<SolveResult, SolveError> {
    let scores = score_table(rule, instance);
    dp_solve_capped(
        &scores,
        instance,
        useful_span(rule, instance),
        DEFAULT_COLUMN_CAP,
    )
}

/// Exact optimum computed on the scaled-down instance.
///
/// Degree indices of the scaled optimum carry over unchanged; the value is
/// recomputed on the original instance so money amounts stay in the caller's
/// units. Table width for the cost rule is bounded by `m * n * delta`.
pub fn solve_scaled(rule: Rule, instance: &Instance) -> Result<SolveResult, SolveError> {
    let scaled = scalable_limit(instance)?;
    let mut result = solve_exact(rule, &scaled.instance)?;
    result.optimal_value = total_value(rule, instance, &result.allocation);
    result.algorithm = Algorithm::ScaledDp;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Allocation;
    use crate::solve::brute_force;

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
    fn exact_matches_brute_force_on_sample() {
        let instance = sample();
        for rule in Rule::ALL {
            let exact = solve_exact(rule, &instance).unwrap();
            let (oracle, _) = brute_force(rule, &instance).unwrap();
            assert_eq!(exact.optimal_value, oracle.optimal_value, "{rule}");
            assert_eq!(
                total_value(rule, &instance, &exact.allocation),
                exact.optimal_value
            );
        }
    }

    #[test]
    fn capped_rule_keeps_tied_upgrades_out_of_reach() {
        // b = 10, costs [0,1,2,3] and [0,7], every voter wants exactly (1, 7).
        let instance = Instance::from_costs(
            vec![vec![0, 1, 2, 3], vec![0, 7]],
            10,
            vec![vec![1, 7], vec![1, 7]],
            vec![vec![1, 7], vec![1, 7]],
        )
        .unwrap();
        let result = solve_exact(Rule::CostCapped, &instance).unwrap();
        assert_eq!(result.optimal_value, 16);
        let (_, optimal) = brute_force(Rule::CostCapped, &instance).unwrap();
        assert!(optimal.contains(&Allocation::new(vec![1, 1])));
        assert!(optimal.contains(&Allocation::new(vec![3, 1])));
        assert!(optimal.contains(&result.allocation));
    }

    #[test]
    fn single_project_cost_rule_takes_the_budget() {
        let instance =
            Instance::from_costs(vec![vec![0, 7]], 7, vec![vec![0]], vec![vec![7]]).unwrap();
        let result = solve_exact(Rule::Cost, &instance).unwrap();
        assert_eq!(result.optimal_value, 7);
        assert_eq!(result.allocation, Allocation::new(vec![1]));
    }

    #[test]
    fn distance_on_pinned_bounds() {
        let instance = Instance::from_costs(
            vec![vec![0, 2, 4], vec![0, 3]],
            5,
            vec![vec![2, 3], vec![4, 3]],
            vec![vec![2, 3], vec![4, 3]],
        )
        .unwrap();
        let result = solve_exact(Rule::Distance, &instance).unwrap();
        assert_eq!(result.optimal_value, 2);
        assert_eq!(result.allocation, Allocation::new(vec![1, 1]));
    }

    #[test]
    fn scaled_solve_agrees_with_exact() {
        let instance = Instance::from_costs(
            vec![vec![0, 10, 20], vec![0, 30]],
            50,
            vec![vec![10, 0], vec![20, 30]],
            vec![vec![20, 30], vec![20, 30]],
        )
        .unwrap();
        for rule in Rule::ALL {
            let scaled = solve_scaled(rule, &instance).unwrap();
            let exact = solve_exact(rule, &instance).unwrap();
            assert_eq!(scaled.optimal_value, exact.optimal_value, "{rule}");
            assert_eq!(scaled.allocation, exact.allocation, "{rule}");
        }
    }

    #[test]
    fn scaled_equals_exact_tables_when_factor_is_one() {
        let instance = sample();
        let scaled = solve_scaled(Rule::Cost, &instance).unwrap();
        let exact = solve_exact(Rule::Cost, &instance).unwrap();
        assert_eq!(scaled.table_stats, exact.table_stats);
        assert_eq!(scaled.optimal_value, exact.optimal_value);
    }

    #[test]
    fn cardinal_value_is_scale_free() {
        let instance = Instance::from_costs(
            vec![vec![0, 6], vec![0, 9]],
            12,
            vec![vec![0, 0]],
            vec![vec![6, 9]],
        )
        .unwrap();
        assert_eq!(
            solve_scaled(Rule::Cardinal, &instance)
                .unwrap()
                .optimal_value,
            solve_exact(Rule::Cardinal, &instance)
                .unwrap()
                .optimal_value,
        );
    }

    #[test]
    fn table_width_bounds_hold_on_sample() {
        let instance = sample();
        let (m, n, b) = (2u64, 2u64, 5u64);
        let cardinal = solve_exact(Rule::Cardinal, &instance).unwrap();
        assert!(cardinal.table_stats.columns as u64 <= m * n + 1);
        let cost = solve_exact(Rule::Cost, &instance).unwrap();
        assert!(cost.table_stats.columns as u64 <= n * b + 1);
    }
}
