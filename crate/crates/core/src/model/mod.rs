//! Instances, allocations, the four rules, score tables, and derived
//! instance statistics.

mod allocation;
mod instance;
mod rule;
mod score;
mod stats;

pub use allocation::Allocation;
pub use instance::{BoundSide, Instance, ProjectDegrees, ValidationError};
pub use rule::{total_value, utility, Orientation, Rule, WelfareRule};
pub use score::{score_table, ScoreTable};
pub use stats::{
    consensus_ranges, scalable_limit, variance_coefficient, ConsensusRanges, ScaledInstance,
    VarianceCoefficient,
};
