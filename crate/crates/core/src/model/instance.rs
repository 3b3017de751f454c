use serde::Serialize;
use thiserror::Error;

/// Which of a voter's two bounds a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

impl std::fmt::Display for BoundSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundSide::Lower => write!(f, "lower"),
            BoundSide::Upper => write!(f, "upper"),
        }
    }
}

/// A structural defect found while validating raw instance data, with the
/// coordinates needed to point back at the offending entry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("project {project}: first cost must be 0, found {found}")]
    NonzeroBaseCost { project: usize, found: u64 },
    #[error("project {project}: costs must be strictly increasing (position {position})")]
    NonIncreasingCosts { project: usize, position: usize },
    #[error("voter {voter}, project {project}: {side} bound {value} is not a permissible cost")]
    BoundNotPermissible {
        voter: usize,
        project: usize,
        side: BoundSide,
        value: u64,
    },
    #[error("voter {voter}, project {project}: lower bound {lower} exceeds upper bound {upper}")]
    BoundOrderViolation {
        voter: usize,
        project: usize,
        lower: u64,
        upper: u64,
    },
    #[error("{matrix} bounds: expected {expected} rows of {width} entries, found row {row} with {found}")]
    DimensionMismatch {
        matrix: BoundSide,
        expected: usize,
        width: usize,
        row: usize,
        found: usize,
    },
    #[error("{matrix} bounds: expected {expected} voter rows, found {found}")]
    RowCountMismatch {
        matrix: BoundSide,
        expected: usize,
        found: usize,
    },
}

/// The permissible funding levels of one project.
///
/// Index `t` is the project's degree; `costs[0]` is always 0 and stands for
/// leaving the project unfunded. Costs are strictly increasing, so a degree
/// index and its cost identify each other unambiguously.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ProjectDegrees {
    costs: Vec<u64>,
}

impl ProjectDegrees {
    pub fn new(costs: Vec<u64>) -> Result<Self, Vec<ValidationError>> {
        let p = Self { costs };
        let errors = p.check(0);
        if errors.is_empty() {
            Ok(p)
        } else {
            Err(errors)
        }
    }

    pub(crate) fn new_unchecked(costs: Vec<u64>) -> Self {
        Self { costs }
    }

    fn check(&self, project: usize) -> Vec<ValidationError> {
        let mut errors = Vec::new();
        match self.costs.first() {
            Some(0) => {}
            Some(&found) => errors.push(ValidationError::NonzeroBaseCost { project, found }),
            None => errors.push(ValidationError::NonzeroBaseCost { project, found: 0 }),
        }
        for (position, pair) in self.costs.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                errors.push(ValidationError::NonIncreasingCosts {
                    project,
                    position: position + 1,
                });
            }
        }
        errors
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    /// Cost of degree `t`.
    pub fn cost(&self, degree: usize) -> u64 {
        self.costs[degree]
    }

    /// Highest degree index (`t_j`); 0 means the project can only stay unfunded.
    pub fn top_degree(&self) -> usize {
        self.costs.len() - 1
    }

    /// Number of degrees including degree 0.
    pub fn num_degrees(&self) -> usize {
        self.costs.len()
    }

    pub fn max_cost(&self) -> u64 {
        *self.costs.last().expect("degree 0 always present")
    }

    /// Degree index whose cost equals `cost`, if any.
    pub fn degree_of_cost(&self, cost: u64) -> Option<usize> {
        self.costs.binary_search(&cost).ok()
    }

    pub(crate) fn costs_mut(&mut self) -> &mut Vec<u64> {
        &mut self.costs
    }
}

/// A budgeting instance: voters, projects with their permissible costs, the
/// budget, and each voter's per-project cost range.
///
/// `lower[i][j]` and `upper[i][j]` are voter `i`'s bounds for project `j`.
/// Both are always permissible costs of that project and `lower <= upper`.
/// Instances are immutable once built and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    num_voters: usize,
    projects: Vec<ProjectDegrees>,
    budget: u64,
    lower: Vec<Vec<u64>>,
    upper: Vec<Vec<u64>>,
}

impl Instance {
    /// Validates raw data and builds an instance, collecting every violated
    /// invariant rather than stopping at the first.
    pub fn new(
        projects: Vec<ProjectDegrees>,
        budget: u64,
        lower: Vec<Vec<u64>>,
        upper: Vec<Vec<u64>>,
    ) -> Result<Self, Vec<ValidationError>> {
        let num_voters = lower.len();
        let instance = Self {
            num_voters,
            projects,
            budget,
            lower,
            upper,
        };
        let errors = instance.validate();
        if errors.is_empty() {
            Ok(instance)
        } else {
            Err(errors)
        }
    }

    /// Convenience constructor from plain cost lists.
    pub fn from_costs(
        project_costs: Vec<Vec<u64>>,
        budget: u64,
        lower: Vec<Vec<u64>>,
        upper: Vec<Vec<u64>>,
    ) -> Result<Self, Vec<ValidationError>> {
        let projects = project_costs
            .into_iter()
            .map(ProjectDegrees::new_unchecked)
            .collect();
        Self::new(projects, budget, lower, upper)
    }

    pub(crate) fn new_unchecked(
        num_voters: usize,
        projects: Vec<ProjectDegrees>,
        budget: u64,
        lower: Vec<Vec<u64>>,
        upper: Vec<Vec<u64>>,
    ) -> Self {
        Self {
            num_voters,
            projects,
            budget,
            lower,
            upper,
        }
    }

    fn validate(&self) -> Vec<ValidationError> {
        let mut errors = Vec::new();
        let m = self.projects.len();
        for (j, project) in self.projects.iter().enumerate() {
            errors.extend(project.check(j));
        }
        if self.upper.len() != self.num_voters {
            errors.push(ValidationError::RowCountMismatch {
                matrix: BoundSide::Upper,
                expected: self.num_voters,
                found: self.upper.len(),
            });
            return errors;
        }
        for (matrix, side) in [
            (&self.lower, BoundSide::Lower),
            (&self.upper, BoundSide::Upper),
        ] {
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != m {
                    errors.push(ValidationError::DimensionMismatch {
                        matrix: side,
                        expected: self.num_voters,
                        width: m,
                        row: i,
                        found: row.len(),
                    });
                    return errors;
                }
            }
        }
        for i in 0..self.num_voters {
            for j in 0..m {
                let project = &self.projects[j];
                let l = self.lower[i][j];
                let u = self.upper[i][j];
                for (value, side) in [(l, BoundSide::Lower), (u, BoundSide::Upper)] {
                    if project.degree_of_cost(value).is_none() {
                        errors.push(ValidationError::BoundNotPermissible {
                            voter: i,
                            project: j,
                            side,
                            value,
                        });
                    }
                }
                if l > u {
                    errors.push(ValidationError::BoundOrderViolation {
                        voter: i,
                        project: j,
                        lower: l,
                        upper: u,
                    });
                }
            }
        }
        errors
    }

    pub fn num_voters(&self) -> usize {
        self.num_voters
    }

    pub fn num_projects(&self) -> usize {
        self.projects.len()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn projects(&self) -> &[ProjectDegrees] {
        &self.projects
    }

    pub fn project(&self, j: usize) -> &ProjectDegrees {
        &self.projects[j]
    }

    pub fn lower_bound(&self, voter: usize, project: usize) -> u64 {
        self.lower[voter][project]
    }

    pub fn upper_bound(&self, voter: usize, project: usize) -> u64 {
        self.upper[voter][project]
    }

    pub fn lower_bounds(&self) -> &[Vec<u64>] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[Vec<u64>] {
        &self.upper
    }

    /// Largest permissible cost over all projects and degrees.
    pub fn max_cost(&self) -> u64 {
        self.projects
            .iter()
            .map(|p| p.max_cost())
            .max()
            .unwrap_or(0)
    }

    /// Sum over projects of their most expensive degree.
    pub fn total_max_cost(&self) -> u64 {
        self.projects.iter().map(|p| p.max_cost()).sum()
    }

    /// Largest degree count over all projects (`t* + 1` entries per project).
    pub fn max_degree(&self) -> usize {
        self.projects
            .iter()
            .map(|p| p.top_degree())
            .max()
            .unwrap_or(0)
    }

    /// Number of allocations, `prod_j (t_j + 1)`, as a u128 so it never wraps.
    pub fn allocation_space(&self) -> u128 {
        self.projects
            .iter()
            .map(|p| p.num_degrees() as u128)
            .product()
    }

    pub(crate) fn with_budget(&self, budget: u64) -> Instance {
        let mut out = self.clone();
        out.budget = budget;
        out
    }

    pub(crate) fn set_bound(&mut self, voter: usize, project: usize, side: BoundSide, value: u64) {
        match side {
            BoundSide::Lower => self.lower[voter][project] = value,
            BoundSide::Upper => self.upper[voter][project] = value,
        }
    }

    pub(crate) fn projects_mut(&mut self) -> &mut Vec<ProjectDegrees> {
        &mut self.projects
    }

    pub(crate) fn bounds_mut(&mut self) -> (&mut Vec<Vec<u64>>, &mut Vec<Vec<u64>>) {
        (&mut self.lower, &mut self.upper)
    }

    /// Re-runs full validation; used after applying mutations.
    pub fn revalidate(&self) -> Result<(), Vec<ValidationError>> {
        let errors = self.validate();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }
}
