//! JSON interchange documents. Everything is integer-valued; parsing always
//! re-validates against the model invariants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, ValidationError};
use crate::reduce::{ApprovalError, ApprovalInstance};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {}", format_errors(.0))]
    Invalid(Vec<ValidationError>),
    #[error("invalid approval instance: {0}")]
    Approval(#[from] ApprovalError),
    #[error("voter {voter} approves unknown project name `{name}`")]
    UnknownProjectName { voter: usize, name: String },
    #[error("duplicate project name `{0}`")]
    DuplicateProjectName(String),
}

fn format_errors(errors: &[ValidationError]) -> String {
    errors
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProjectDoc {
    pub name: String,
    pub costs: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VoterDoc {
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

/// On-disk form of an [`Instance`]; project names are the external identity
/// of projects and survive a round trip unchanged.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceDocument {
    pub budget: u64,
    pub projects: Vec<ProjectDoc>,
    pub voters: Vec<VoterDoc>,
}

impl InstanceDocument {
    pub fn from_json(json: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    /// Validates and splits the document into an instance plus its names.
    pub fn into_instance(self) -> Result<(Instance, Vec<String>), DocError> {
        let mut names = Vec::with_capacity(self.projects.len());
        for p in &self.projects {
            if names.contains(&p.name) {
                return Err(DocError::DuplicateProjectName(p.name.clone()));
            }
            names.push(p.name.clone());
        }
        let costs = self.projects.into_iter().map(|p| p.costs).collect();
        let lower = self.voters.iter().map(|v| v.lower.clone()).collect();
        let upper = self.voters.into_iter().map(|v| v.upper).collect();
        let instance =
            Instance::from_costs(costs, self.budget, lower, upper).map_err(DocError::Invalid)?;
        Ok((instance, names))
    }

    /// Document form of an instance; `names` defaults to `P1..Pm`.
    pub fn from_instance(instance: &Instance, names: Option<&[String]>) -> Self {
        let projects = instance
            .projects()
            .iter()
            .enumerate()
            .map(|(j, p)| ProjectDoc {
                name: names
                    .map(|ns| ns[j].clone())
                    .unwrap_or_else(|| default_name(j)),
                costs: p.costs().to_vec(),
            })
            .collect();
        let voters = (0..instance.num_voters())
            .map(|i| VoterDoc {
                lower: instance.lower_bounds()[i].clone(),
                upper: instance.upper_bounds()[i].clone(),
            })
            .collect();
        Self {
            budget: instance.budget(),
            projects,
            voters,
        }
    }
}

pub fn default_name(project: usize) -> String {
    format!("P{}", project + 1)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ApprovalProjectDoc {
    pub name: String,
    pub cost: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ApprovalVoterDoc {
    pub approves: Vec<String>,
}

/// On-disk form of an [`ApprovalInstance`]; approvals reference projects by
/// name.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ApprovalDocument {
    pub budget: u64,
    pub projects: Vec<ApprovalProjectDoc>,
    pub voters: Vec<ApprovalVoterDoc>,
}

impl ApprovalDocument {
    pub fn from_json(json: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn into_approval_instance(self) -> Result<(ApprovalInstance, Vec<String>), DocError> {
        let mut names = Vec::with_capacity(self.projects.len());
        for p in &self.projects {
            if names.contains(&p.name) {
                return Err(DocError::DuplicateProjectName(p.name.clone()));
            }
            names.push(p.name.clone());
        }
        let costs: Vec<u64> = self.projects.iter().map(|p| p.cost).collect();
        let approvals = self
            .voters
            .iter()
            .enumerate()
            .map(|(voter, v)| {
                v.approves
                    .iter()
                    .map(|name| {
                        names.iter().position(|n| n == name).ok_or_else(|| {
                            DocError::UnknownProjectName {
                                voter,
                                name: name.clone(),
                            }
                        })
                    })
                    .collect::<Result<Vec<usize>, DocError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let approval = ApprovalInstance::new(costs, approvals, self.budget)?;
        Ok((approval, names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_json() -> &'static str {
        r#"{
            "budget": 5,
            "projects": [
                {"name": "bridge", "costs": [0, 2, 4]},
                {"name": "park", "costs": [0, 3]}
            ],
            "voters": [
                {"lower": [2, 0], "upper": [4, 3]},
                {"lower": [4, 3], "upper": [4, 3]}
            ]
        }"#
    }

    #[test]
    fn parse_and_round_trip() {
        let doc = InstanceDocument::from_json(sample_json()).unwrap();
        let (instance, names) = doc.clone().into_instance().unwrap();
        assert_eq!(names, vec!["bridge", "park"]);
        assert_eq!(instance.budget(), 5);
        let back = InstanceDocument::from_instance(&instance, Some(&names));
        assert_eq!(back, doc);
        let reparsed = InstanceDocument::from_json(&back.to_json_pretty()).unwrap();
        assert_eq!(reparsed, doc);
    }

    #[test]
    fn invalid_documents_carry_coordinates() {
        let doc = InstanceDocument {
            budget: 5,
            projects: vec![ProjectDoc {
                name: "p".into(),
                costs: vec![0, 5],
            }],
            voters: vec![VoterDoc {
                lower: vec![3],
                upper: vec![5],
            }],
        };
        let err = doc.into_instance().unwrap_err();
        assert!(err.to_string().contains("voter 0, project 0"));
    }

    #[test]
    fn approval_documents_resolve_names() {
        let json = r#"{
            "budget": 3,
            "projects": [{"name": "a", "cost": 2}, {"name": "b", "cost": 3}],
            "voters": [{"approves": ["a"]}]
        }"#;
        let (approval, names) = ApprovalDocument::from_json(json)
            .unwrap()
            .into_approval_instance()
            .unwrap();
        assert_eq!(names, vec!["a", "b"]);
        assert_eq!(approval.approvals, vec![vec![0]]);
    }

    #[test]
    fn unknown_approval_names_fail() {
        let json = r#"{
            "budget": 3,
            "projects": [{"name": "a", "cost": 2}],
            "voters": [{"approves": ["zzz"]}]
        }"#;
        assert!(matches!(
            ApprovalDocument::from_json(json)
                .unwrap()
                .into_approval_instance(),
            Err(DocError::UnknownProjectName { voter: 0, .. })
        ));
    }
}
