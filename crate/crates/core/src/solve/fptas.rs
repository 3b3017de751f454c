use serde::Serialize;

use crate::model::{
    score_table, total_value, Allocation, Instance, ProjectDegrees, Rule, ScoreTable,
};

use super::dp::dp_solve_capped;
use super::exact::solve_exact;
use super::{Algorithm, SolveError, SolveNote, SolveResult, DEFAULT_COLUMN_CAP};

/// An exact approximation parameter `num/den`. All roundings with it stay in
/// integer arithmetic, so runs are reproducible bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, SolveError> {
        if num == 0 || den == 0 {
            return Err(SolveError::InvalidEpsilon(format!("{num}/{den}")));
        }
        Ok(Self { num, den })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// `num/den < 1`.
    pub fn is_below_one(&self) -> bool {
        self.num < self.den
    }

    /// `num/den <= 1`.
    pub fn is_at_most_one(&self) -> bool {
        self.num <= self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Epsilon {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| SolveError::InvalidEpsilon(format!("`{s}` is not of the form P/Q")))?;
        let num = num
            .trim()
            .parse()
            .map_err(|_| SolveError::InvalidEpsilon(s.to_string()))?;
        let den = den
            .trim()
            .parse()
            .map_err(|_| SolveError::InvalidEpsilon(s.to_string()))?;
        Epsilon::new(num, den)
    }
}

impl Serialize for Epsilon {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An instance with every unaffordable degree removed, plus the translation
/// back to the caller's degree indices.
///
/// Only degrees are dropped, never projects, so allocations of the reduced
/// instance have the caller's shape. Voter bounds are carried over verbatim:
/// a bound may refer to a removed cost, which is harmless because scores
/// depend only on bound values.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub instance: Instance,
    /// `degree_map[j][t]` is the original degree index of reduced degree `t`.
    pub degree_map: Vec<Vec<usize>>,
}

impl ReducedInstance {
    /// Maps an allocation of the reduced instance back to original indices.
    pub fn translate(&self, alloc: &Allocation) -> Allocation {
        Allocation::new(
            alloc
                .degrees()
                .iter()
                .enumerate()
                .map(|(j, &t)| self.degree_map[j][t])
                .collect(),
        )
    }
}

/// Drops every degree whose cost alone exceeds the budget. Any such degree
/// can never be funded, and removing it guarantees that the largest
/// remaining score is attainable by some valid allocation.
pub fn eliminate_infeasible(instance: &Instance) -> ReducedInstance {
    let mut degree_map = Vec::with_capacity(instance.num_projects());
    let projects = instance
        .projects()
        .iter()
        .map(|project| {
            let mut map = vec![0usize];
            let mut costs = vec![0u64];
            for (t, &cost) in project.costs().iter().enumerate().skip(1) {
                if cost <= instance.budget() {
                    map.push(t);
                    costs.push(cost);
                }
            }
            degree_map.push(map);
            ProjectDegrees::new_unchecked(costs)
        })
        .collect();
    let reduced = Instance::new_unchecked(
        instance.num_voters(),
        projects,
        instance.budget(),
        instance.lower_bounds().to_vec(),
        instance.upper_bounds().to_vec(),
    );
    ReducedInstance {
        instance: reduced,
        degree_map,
    }
}

/// The score rounding behind an approximation run, kept around so the
/// defining inequalities can be checked entry by entry.
#[derive(Debug, Clone, Serialize)]
pub struct RoundedScores {
    pub base: ScoreTable,
    pub rounded: ScoreTable,
    pub epsilon: Epsilon,
    /// `M` (largest base score) when maximizing, `q_sigma` when minimizing.
    pub scale_anchor: u64,
}

impl RoundedScores {
    /// Checks `rounded <= base*m/(eps*anchor)` and
    /// `base <= eps*anchor*(rounded+1)/m` for every entry, exactly.
    pub fn rounding_bounds_hold(&self, num_projects: usize) -> bool {
        let m = num_projects as u128;
        let num = self.epsilon.numer() as u128;
        let den = self.epsilon.denom() as u128;
        let anchor = self.scale_anchor as u128;
        self.base
            .entries()
            .iter()
            .zip(self.rounded.entries())
            .all(|(base_row, rounded_row)| {
                base_row.iter().zip(rounded_row).all(|(&base, &rounded)| {
                    let scaled = base as u128 * m * den;
                    let step = num * anchor;
                    rounded as u128 * step <= scaled && scaled < (rounded as u128 + 1) * step
                })
            })
    }
}

fn round_table(base: &ScoreTable, epsilon: Epsilon, anchor: u64, m: usize) -> ScoreTable {
    let num = epsilon.numer() as u128;
    let den = epsilon.denom() as u128;
    let entries = base
        .entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&s| {
                    let value = s as u128 * m as u128 * den / (num * anchor as u128);
                    u64::try_from(value).expect("rounded score fits in 64 bits")
                })
                .collect()
        })
        .collect();
    ScoreTable::new(entries, base.orientation())
}

/// Rounding FPTAS for the cost and capped-cost rules.
///
/// Returns a valid allocation whose value is at least `(1 - eps)` of the
/// optimum; the rounded DP has at most `m^2/eps` score columns.
pub fn fptas_max(
    rule: Rule,
    instance: &Instance,
    epsilon: Epsilon,
) -> Result<SolveResult, SolveError> {
    fptas_max_detailed(rule, instance, epsilon).map(|(result, _)| result)
}

/// [`fptas_max`] that also returns the rounding used, when one was needed.
pub fn fptas_max_detailed(
    rule: Rule,
    instance: &Instance,
    epsilon: Epsilon,
) -> Result<(SolveResult, Option<RoundedScores>), SolveError> {
    assert!(
        matches!(rule, Rule::Cost | Rule::CostCapped),
        "score rounding applies to the cost and capped-cost rules"
    );
    if !epsilon.is_below_one() {
        return Err(SolveError::InvalidEpsilon(format!(
            "{epsilon} must be below 1"
        )));
    }

    let reduced = eliminate_infeasible(instance);
    let base = score_table(rule, &reduced.instance);
    let max_score = base.max_entry();
    if max_score == 0 {
        // Nothing affordable earns a score; the guarantee is vacuous.
        let m = instance.num_projects();
        return Ok((
            SolveResult {
                optimal_value: 0,
                allocation: Allocation::zeros(m),
                algorithm: Algorithm::Fptas { epsilon },
                table_stats: Default::default(),
                note: Some(SolveNote::ZeroMaxScore),
            },
            None,
        ));
    }

    let m = instance.num_projects();
    let rounded = round_table(&base, epsilon, max_score, m);
    let dp = dp_solve_capped(&rounded, &reduced.instance, None, DEFAULT_COLUMN_CAP)?;
    let allocation = reduced.translate(&dp.allocation);
    let optimal_value = total_value(rule, instance, &allocation);
    Ok((
        SolveResult {
            optimal_value,
            allocation,
            algorithm: Algorithm::Fptas { epsilon },
            table_stats: dp.table_stats,
            note: None,
        },
        Some(RoundedScores {
            base,
            rounded,
            epsilon,
            scale_anchor: max_score,
        }),
    ))
}

/// Disutility-rounding scheme for the distance rule, parameterized by the
/// spread of the disutility contributions.
///
/// Returns a valid allocation with total disutility at most `(1 + eps)` of
/// the optimum; the rounded DP has at most `m^2 * q_max / (q_sigma * eps)`
/// columns. Fails with [`SolveError::DegenerateVarianceCoefficient`] when
/// every project has a zero-disutility degree, in which case callers run the
/// exact DP on the raw contributions instead (see [`solve_approx`]).
pub fn fptas_min_distance(
    instance: &Instance,
    epsilon: Epsilon,
) -> Result<SolveResult, SolveError> {
    fptas_min_distance_detailed(instance, epsilon).map(|(result, _)| result)
}

/// [`fptas_min_distance`] that also returns the rounding used.
pub fn fptas_min_distance_detailed(
    instance: &Instance,
    epsilon: Epsilon,
) -> Result<(SolveResult, RoundedScores), SolveError> {
    if !epsilon.is_at_most_one() {
        return Err(SolveError::InvalidEpsilon(format!(
            "{epsilon} must be at most 1"
        )));
    }
    let base = score_table(Rule::Distance, instance);
    let q_sigma = base.min_total();
    if q_sigma == 0 {
        return Err(SolveError::DegenerateVarianceCoefficient);
    }

    let m = instance.num_projects();
    let rounded = round_table(&base, epsilon, q_sigma, m);
    let dp = dp_solve_capped(&rounded, instance, None, DEFAULT_COLUMN_CAP)?;
    let optimal_value = total_value(Rule::Distance, instance, &dp.allocation);
    Ok((
        SolveResult {
            optimal_value,
            allocation: dp.allocation,
            algorithm: Algorithm::ParamFptas { epsilon },
            table_stats: dp.table_stats,
            note: None,
        },
        RoundedScores {
            base,
            rounded,
            epsilon,
            scale_anchor: q_sigma,
        },
    ))
}

/// Approximation entry point used by the CLI: score rounding for the two
/// cost rules, disutility rounding for the distance rule with an exact
/// fallback when the rounding is undefined.
pub fn solve_approx(
    rule: Rule,
    instance: &Instance,
    epsilon: Epsilon,
) -> Result<SolveResult, SolveError> {
    match rule {
        Rule::Cost | Rule::CostCapped => fptas_max(rule, instance, epsilon),
        Rule::Distance => match fptas_min_distance(instance, epsilon) {
            Ok(result) => Ok(result),
            Err(SolveError::DegenerateVarianceCoefficient) => {
                let mut result = solve_exact(Rule::Distance, instance)?;
                result.algorithm = Algorithm::ParamFptas { epsilon };
                result.note = Some(SolveNote::DegenerateFallback);
                Ok(result)
            }
            Err(other) => Err(other),
        },
        Rule::Cardinal => {
            // The polynomial exact DP makes rounding pointless here.
            solve_exact(Rule::Cardinal, instance)
        }
    }
}
