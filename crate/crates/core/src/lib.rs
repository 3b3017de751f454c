//! Indivisible participatory budgeting where every project comes with a menu
//! of permissible costs and each voter approves a per-project cost range.
//!
//! The crate provides:
//!
//! * the instance model with four utilitarian selection rules — coverage
//!   count, funded cost, capped cost, and range distance ([`model`]);
//! * exact solvers (a shared score-table DP plus a brute-force oracle),
//!   scaled FPT solving, and rounding-based approximation schemes with
//!   per-run table statistics ([`solve`]);
//! * executable checkers for eight budgeting axioms, reference
//!   counterexample instances, and seeded random counterexample search
//!   ([`axioms`]);
//! * deterministic instance generation, reductions from single-cost approval
//!   budgeting, and JSON interchange documents ([`gen`], [`reduce`],
//!   [`io`]).
//!
//! Instances are immutable and every solver is a pure function, so anything
//! here can be shared freely across threads.

pub mod axioms;
pub mod gen;
pub mod io;
pub mod model;
pub mod reduce;
pub mod solve;

pub use model::{
    consensus_ranges, scalable_limit, score_table, total_value, utility, variance_coefficient,
    Allocation, BoundSide, ConsensusRanges, Instance, Orientation, ProjectDegrees, Rule,
    ScaledInstance, ScoreTable, ValidationError, VarianceCoefficient, WelfareRule,
};
pub use solve::{
    brute_force, dp_solve, eliminate_infeasible, fptas_max, fptas_max_detailed, fptas_min_distance,
    fptas_min_distance_detailed, solve_approx, solve_exact, solve_scaled, winners, Algorithm,
    Epsilon, SolveError, SolveNote, SolveResult, TableStats,
};
