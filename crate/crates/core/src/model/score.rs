use serde::Serialize;

use super::allocation::Allocation;
use super::instance::Instance;
use super::rule::{project_value, Orientation, Rule};

/// Per-degree integer scores that make every rule separable across projects:
/// the total value of an allocation is the sum of its chosen entries.
///
/// For the three maximization rules `entries[j][t]` aggregates the voters'
/// value for funding project `j` at degree `t` (0 at degree 0). For
/// `Distance` the entries are disutility contributions and degree 0 carries
/// the cost of leaving a wanted project unfunded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreTable {
    entries: Vec<Vec<u64>>,
    orientation: Orientation,
}

impl ScoreTable {
    pub fn new(entries: Vec<Vec<u64>>, orientation: Orientation) -> Self {
        Self {
            entries,
            orientation,
        }
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn entry(&self, project: usize, degree: usize) -> u64 {
        self.entries[project][degree]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn num_projects(&self) -> usize {
        self.entries.len()
    }

    /// Score of an allocation under this table.
    pub fn total(&self, alloc: &Allocation) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(j, row)| row[alloc.degree_of(j)])
            .sum()
    }

    /// Largest entry over all projects and degrees.
    pub fn max_entry(&self) -> u64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Sum over projects of the largest per-project entry: an upper bound on
    /// any allocation's total, hence on the DP column range.
    pub fn column_span(&self) -> u64 {
        self.entries
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .sum()
    }

    /// Sum over projects of the smallest per-project entry.
    pub fn min_total(&self) -> u64 {
        self.entries
            .iter()
            .map(|row| row.iter().copied().min().unwrap_or(0))
            .sum()
    }
}

/// Builds the score table of `rule` on `instance`.
pub fn score_table(rule: Rule, instance: &Instance) -> ScoreTable {
    let entries = instance
        .projects()
        .iter()
        .enumerate()
        .map(|(j, project)| {
            project
                .costs()
                .iter()
                .enumerate()
                .map(|(t, &cost)| {
                    if t == 0 && rule != Rule::Distance {
                        return 0;
                    }
                    (0..instance.num_voters())
                        .map(|i| {
                            project_value(
                                rule,
                                cost,
                                instance.lower_bound(i, j),
                                instance.upper_bound(i, j),
                            )
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    let orientation = rule.orientation();
    ScoreTable {
        entries,
        orientation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rule::total_value;

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
    fn cardinal_scores_count_voters() {
        let table = score_table(Rule::Cardinal, &sample());
        assert_eq!(table.entries(), &[vec![0, 1, 2], vec![0, 2]]);
    }

    #[test]
    fn cost_scores_weight_counts_by_cost() {
        let table = score_table(Rule::Cost, &sample());
        assert_eq!(table.entries(), &[vec![0, 2, 8], vec![0, 6]]);
    }

    #[test]
    fn distance_scores_include_degree_zero() {
        let table = score_table(Rule::Distance, &sample());
        assert_eq!(table.entries(), &[vec![6, 2, 0], vec![3, 0]]);
        assert_eq!(table.orientation(), Orientation::Minimize);
    }

    #[test]
    fn table_total_matches_total_value() {
        let instance = sample();
        for rule in Rule::ALL {
            let table = score_table(rule, &instance);
            for d1 in 0..3 {
                for d2 in 0..2 {
                    let alloc = Allocation::new(vec![d1, d2]);
                    assert_eq!(
                        table.total(&alloc),
                        total_value(rule, &instance, &alloc),
                        "{rule} at {:?}",
                        alloc.degrees()
                    );
                }
            }
        }
    }
}
