use crate::model::{Allocation, Instance, Orientation, ScoreTable};

use super::{Algorithm, SolveError, SolveResult, TableStats, DEFAULT_COLUMN_CAP};

const INF: u64 = u64::MAX;

/// Score-table DP shared by all four rules.
///
/// Column `y` of row `x` holds the cheapest way to pick one degree from each
/// of the first `x` projects with total score exactly `y`; a parallel choice
/// table records the degree picked so the allocation can be rebuilt. The
/// answer is the column with the largest (smallest, when minimizing) `y`
/// whose cost fits the budget.
///
/// Ties on cost prefer degree 0, then lower degree indices, which makes the
/// returned allocation canonical.
pub fn dp_solve(scores: &ScoreTable, instance: &Instance) -> Result<SolveResult, SolveError> {
    dp_solve_capped(scores, instance, None, DEFAULT_COLUMN_CAP)
}

/// Like [`dp_solve`], with an optional ceiling on useful columns.
///
/// `useful_span` prunes columns no valid allocation can reach; callers must
/// guarantee that any choice whose score exceeds it also exceeds the budget
/// (for the cost-proportional rules, any score above `n * b` does).
pub(crate) fn dp_solve_capped(
    scores: &ScoreTable,
    instance: &Instance,
    useful_span: Option<u64>,
    column_cap: u64,
) -> Result<SolveResult, SolveError> {
    let m = instance.num_projects();
    debug_assert_eq!(scores.num_projects(), m, "score table shape mismatch");

    let mut span = scores.column_span();
    if let Some(cap) = useful_span {
        span = span.min(cap);
    }
    if span >= column_cap {
        return Err(SolveError::TableTooLarge {
            columns: span + 1,
            cap: column_cap,
        });
    }
    let width = span as usize + 1;

    // cost[x * width + y], choice mirrors it; row 0 is the empty prefix.
    let mut cost = vec![INF; (m + 1) * width];
    let mut choice = vec![0u32; m * width];
    cost[0] = 0;
    let mut cells_touched = 0u64;

    for x in 1..=m {
        let project = instance.project(x - 1);
        let row_scores = &scores.entries()[x - 1];
        let (prev_rows, cur_rows) = cost.split_at_mut(x * width);
        let prev = &prev_rows[(x - 1) * width..];
        let cur = &mut cur_rows[..width];
        let choice_row = &mut choice[(x - 1) * width..x * width];
        for (t, (&degree_cost, &degree_score)) in project.costs().iter().zip(row_scores).enumerate()
        {
            let shift = degree_score as usize;
            if shift >= width {
                continue;
            }
            for y in shift..width {
                let base = prev[y - shift];
                if base == INF {
                    continue;
                }
                let candidate = base + degree_cost;
                if candidate < cur[y] {
                    cur[y] = candidate;
                    choice_row[y] = t as u32;
                }
            }
        }
        cells_touched += width as u64;
    }

    let last = &cost[m * width..];
    let feasible = (0..width).filter(|&y| last[y] <= instance.budget());
    let best_y = match scores.orientation() {
        Orientation::Maximize => feasible.max(),
        Orientation::Minimize => feasible.min(),
    }
    .expect("the all-unfunded allocation is always feasible");

    // walk the choice table back to an allocation
    let mut degrees = vec![0usize; m];
    let mut y = best_y;
    for x in (1..=m).rev() {
        let t = choice[(x - 1) * width + y] as usize;
        degrees[x - 1] = t;
        y -= scores.entry(x - 1, t) as usize;
    }
    debug_assert_eq!(y, 0);

    let allocation = Allocation::new(degrees);
    debug_assert!(allocation.is_valid(instance));

    Ok(SolveResult {
        optimal_value: best_y as u64,
        allocation,
        algorithm: Algorithm::Dp,
        table_stats: TableStats {
            rows: m,
            columns: width,
            cells_touched,
        },
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{score_table, Rule};

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
    fn cardinal_dp_matches_hand_computed_optimum() {
        let instance = sample();
        let result = dp_solve(&score_table(Rule::Cardinal, &instance), &instance).unwrap();
        assert_eq!(result.optimal_value, 3);
        assert_eq!(result.allocation, Allocation::new(vec![1, 1]));
    }

    #[test]
    fn all_zero_scores_return_all_unfunded() {
        let instance = sample();
        let zeros = ScoreTable::new(vec![vec![0, 0, 0], vec![0, 0]], Orientation::Maximize);
        let result = dp_solve(&zeros, &instance).unwrap();
        assert_eq!(result.optimal_value, 0);
        assert_eq!(result.allocation, Allocation::zeros(2));
    }

    #[test]
    fn distance_dp_minimizes() {
        let instance = sample();
        let result = dp_solve(&score_table(Rule::Distance, &instance), &instance).unwrap();
        assert_eq!(result.optimal_value, 2);
        assert_eq!(result.allocation, Allocation::new(vec![1, 1]));
    }

    #[test]
    fn column_cap_is_enforced() {
        let instance = sample();
        let scores = score_table(Rule::Cost, &instance);
        let err = dp_solve_capped(&scores, &instance, None, 4).unwrap_err();
        assert!(matches!(err, SolveError::TableTooLarge { .. }));
    }

    #[test]
    fn empty_instance_solves_trivially() {
        let instance = Instance::from_costs(vec![], 3, vec![vec![]], vec![vec![]]).unwrap();
        let scores = ScoreTable::new(vec![], Orientation::Maximize);
        let result = dp_solve(&scores, &instance).unwrap();
        assert_eq!(result.optimal_value, 0);
        assert!(result.allocation.is_empty());
    }
}
