//! Exact and approximate solvers: a brute-force oracle over all valid
//! allocations, the shared score-table DP, scaled FPT solving, and the
//! rounding-based approximation schemes.

mod brute;
mod dp;
mod exact;
mod fptas;

use serde::Serialize;
use thiserror::Error;

use crate::model::Allocation;

pub use brute::{brute_force, brute_force_by, brute_force_capped, winners};
pub use dp::dp_solve;
pub use exact::{solve_exact, solve_scaled};
pub use fptas::{
    eliminate_infeasible, fptas_max, fptas_max_detailed, fptas_min_distance,
    fptas_min_distance_detailed, solve_approx, Epsilon, ReducedInstance, RoundedScores,
};

/// Default ceiling on `prod_j (t_j + 1)` for exhaustive enumeration.
pub const DEFAULT_ALLOCATION_CAP: u128 = 10_000_000;

/// Default ceiling on DP table columns.
pub const DEFAULT_COLUMN_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search space of {size} allocations exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("DP table would need {columns} columns, more than the cap of {cap}")]
    TableTooLarge { columns: u64, cap: u64 },
    #[error("no project has a positive permissible cost")]
    AllCostsZero,
    #[error("every project has a zero-disutility degree; rounding is undefined")]
    DegenerateVarianceCoefficient,
    #[error("epsilon {0} outside the admissible range")]
    InvalidEpsilon(String),
}

/// Which algorithm produced a [`SolveResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Algorithm {
    BruteForce,
    Dp,
    ScaledDp,
    Fptas { epsilon: Epsilon },
    ParamFptas { epsilon: Epsilon },
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::BruteForce => write!(f, "bruteforce"),
            Algorithm::Dp => write!(f, "dp"),
            Algorithm::ScaledDp => write!(f, "scaled-dp"),
            Algorithm::Fptas { epsilon } => write!(f, "fptas({epsilon})"),
            Algorithm::ParamFptas { epsilon } => write!(f, "param-fptas({epsilon})"),
        }
    }
}

/// Size of the table a solver filled, for runtime assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TableStats {
    pub rows: usize,
    pub columns: usize,
    pub cells_touched: u64,
}

/// Extra context attached to approximate results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveNote {
    /// No affordable degree earns any score; the all-unfunded allocation is
    /// returned and the approximation guarantee is vacuous.
    ZeroMaxScore,
    /// The distance rounding was undefined and the exact DP answered instead.
    DegenerateFallback,
}

/// An optimal (or guaranteed-near-optimal) allocation with its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    /// Total utility, or total disutility for the distance rule.
    pub optimal_value: u64,
    pub allocation: Allocation,
    pub algorithm: Algorithm,
    pub table_stats: TableStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<SolveNote>,
}
