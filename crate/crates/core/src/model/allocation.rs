use serde::Serialize;

use super::instance::Instance;

/// One chosen degree per project; degree 0 means the project stays unfunded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Allocation {
    degree_of: Vec<usize>,
}

impl Allocation {
    pub fn new(degree_of: Vec<usize>) -> Self {
        Self { degree_of }
    }

    /// The all-unfunded allocation, valid under every budget.
    pub fn zeros(num_projects: usize) -> Self {
        Self {
            degree_of: vec![0; num_projects],
        }
    }

    pub fn degree_of(&self, project: usize) -> usize {
        self.degree_of[project]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree_of
    }

    pub fn len(&self) -> usize {
        self.degree_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree_of.is_empty()
    }

    /// Cost of the degree chosen for `project`.
    pub fn chosen_cost(&self, instance: &Instance, project: usize) -> u64 {
        instance.project(project).cost(self.degree_of[project])
    }

    /// Total cost of the allocation.
    pub fn cost(&self, instance: &Instance) -> u64 {
        self.degree_of
            .iter()
            .enumerate()
            .map(|(j, &t)| instance.project(j).cost(t))
            .sum()
    }

    /// An allocation is valid when its total cost fits the budget.
    pub fn is_valid(&self, instance: &Instance) -> bool {
        self.cost(instance) <= instance.budget()
    }

    /// Copy with project `j` switched to degree `t`.
    pub fn with_degree(&self, project: usize, degree: usize) -> Self {
        let mut out = self.clone();
        out.degree_of[project] = degree;
        out
    }

    /// Funded projects with their chosen degree (degree 0 omitted).
    pub fn funded(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.degree_of
            .iter()
            .enumerate()
            .filter(|(_, &t)| t > 0)
            .map(|(j, &t)| (j, t))
    }
}

impl From<Vec<usize>> for Allocation {
    fn from(degree_of: Vec<usize>) -> Self {
        Self::new(degree_of)
    }
}
