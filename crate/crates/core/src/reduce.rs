//! Transformers from single-cost approval budgeting into the ranged model.
//!
//! Both constructions give every project the two degrees `{0, c(j)}`. The
//! cost-objective image encodes an approval as an upper bound at the
//! project's cost; the distance-objective image gives everyone the full
//! upper bound and encodes an approval as a lower bound, so skipping an
//! approved project is charged at its cost.

use thiserror::Error;

use crate::model::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApprovalError {
    #[error("project {project} has cost 0; approval projects need a positive cost")]
    ZeroCost { project: usize },
    #[error("voter {voter} approves unknown project {project}")]
    UnknownProject { voter: usize, project: usize },
}

/// A classic approval-ballot budgeting instance: one cost per project, one
/// approval set per voter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApprovalInstance {
    pub costs: Vec<u64>,
    /// Approved project indices per voter; order and duplicates are ignored.
    pub approvals: Vec<Vec<usize>>,
    pub budget: u64,
}

impl ApprovalInstance {
    pub fn new(
        costs: Vec<u64>,
        approvals: Vec<Vec<usize>>,
        budget: u64,
    ) -> Result<Self, ApprovalError> {
        if let Some(project) = costs.iter().position(|&c| c == 0) {
            return Err(ApprovalError::ZeroCost { project });
        }
        for (voter, set) in approvals.iter().enumerate() {
            if let Some(&project) = set.iter().find(|&&j| j >= costs.len()) {
                return Err(ApprovalError::UnknownProject { voter, project });
            }
        }
        Ok(Self {
            costs,
            approvals,
            budget,
        })
    }

    pub fn num_projects(&self) -> usize {
        self.costs.len()
    }

    pub fn num_voters(&self) -> usize {
        self.approvals.len()
    }

    fn approves(&self, voter: usize, project: usize) -> bool {
        self.approvals[voter].contains(&project)
    }

    /// Total approved cost over all voters, `sum_i c(A_i)`.
    pub fn total_approved_cost(&self) -> u64 {
        (0..self.num_voters())
            .map(|i| {
                (0..self.num_projects())
                    .filter(|&j| self.approves(i, j))
                    .map(|j| self.costs[j])
                    .sum::<u64>()
            })
            .sum()
    }
}

/// Image whose cost-rule optimum equals the approval-welfare optimum:
/// lower bounds all 0, upper bound `c(j)` exactly for approved projects.
pub fn reduce_from_approval_cost(approval: &ApprovalInstance) -> Instance {
    let m = approval.num_projects();
    let n = approval.num_voters();
    let projects = approval.costs.iter().map(|&c| vec![0, c]).collect();
    let lower = vec![vec![0u64; m]; n];
    let upper = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if approval.approves(i, j) {
                        approval.costs[j]
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    Instance::from_costs(projects, approval.budget, lower, upper)
        .expect("reduction image is structurally valid")
}

/// Image whose distance-rule optimum is `Z - W`, where `W` is the approval
/// welfare optimum and `Z` (returned) is `sum_i c(A_i)`.
pub fn reduce_from_approval_distance(approval: &ApprovalInstance) -> (Instance, u64) {
    let m = approval.num_projects();
    let n = approval.num_voters();
    let projects = approval.costs.iter().map(|&c| vec![0, c]).collect();
    let lower = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if approval.approves(i, j) {
                        approval.costs[j]
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let upper = vec![approval.costs.clone(); n];
    let instance = Instance::from_costs(projects, approval.budget, lower, upper)
        .expect("reduction image is structurally valid");
    (instance, approval.total_approved_cost())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{total_value, Allocation, Rule};
    use crate::solve::brute_force;

    #[test]
    fn cost_image_of_single_approval() {
        let approval = ApprovalInstance::new(vec![2, 3], vec![vec![0]], 3).unwrap();
        let instance = reduce_from_approval_cost(&approval);
        assert_eq!(instance.project(0).costs(), &[0, 2]);
        assert_eq!(instance.project(1).costs(), &[0, 3]);
        assert_eq!(instance.lower_bounds(), &[vec![0, 0]]);
        assert_eq!(instance.upper_bounds(), &[vec![2, 0]]);
    }

    #[test]
    fn distance_image_of_single_approval() {
        let approval = ApprovalInstance::new(vec![2, 3], vec![vec![0]], 3).unwrap();
        let (instance, z) = reduce_from_approval_distance(&approval);
        assert_eq!(instance.lower_bounds(), &[vec![2, 0]]);
        assert_eq!(instance.upper_bounds(), &[vec![2, 3]]);
        assert_eq!(z, 2);
    }

    #[test]
    fn empty_approvals_give_zero_welfare() {
        let approval = ApprovalInstance::new(vec![2, 3], vec![vec![], vec![]], 4).unwrap();
        let instance = reduce_from_approval_cost(&approval);
        let (result, _) = brute_force(Rule::Cost, &instance).unwrap();
        assert_eq!(result.optimal_value, 0);

        let (image, z) = reduce_from_approval_distance(&approval);
        let (result, optimal) = brute_force(Rule::Distance, &image).unwrap();
        assert_eq!(z, 0);
        assert_eq!(result.optimal_value, 0);
        assert!(optimal.contains(&Allocation::zeros(2)));
    }

    #[test]
    fn full_approval_distance_identity() {
        let approval = ApprovalInstance::new(vec![2, 3], vec![vec![0, 1]], 5).unwrap();
        let (image, z) = reduce_from_approval_distance(&approval);
        let (result, _) = brute_force(Rule::Distance, &image).unwrap();
        assert_eq!(z, 5);
        assert_eq!(result.optimal_value, 0);
        assert_eq!(
            total_value(Rule::Distance, &image, &Allocation::new(vec![1, 1])),
            0
        );
    }

    #[test]
    fn zero_cost_projects_are_rejected() {
        assert!(matches!(
            ApprovalInstance::new(vec![2, 0], vec![], 3),
            Err(ApprovalError::ZeroCost { project: 1 })
        ));
    }
}
