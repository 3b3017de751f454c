use std::collections::BTreeMap;

use crate::model::{consensus_ranges, Allocation, BoundSide, Instance, WelfareRule};
use crate::solve::SolveError;

use super::{optima, AxiomId, AxiomReport, Mutation, MutationError, WitnessDetail};

/// Default budget increases for the convergence checker: every step up to
/// the point where the whole instance is affordable.
pub fn default_budget_increments(instance: &Instance) -> Vec<u64> {
    let slack = instance.total_max_cost().saturating_sub(instance.budget());
    (1..=slack.max(1)).collect()
}

/// Runs one axiom checker with its default parameters.
pub fn check_axiom<R: WelfareRule + ?Sized>(
    axiom: AxiomId,
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    match axiom {
        AxiomId::ShrinkResistant => check_shrink_resistant(rule, instance),
        AxiomId::RangeAbiding => check_range_abiding(rule, instance),
        AxiomId::RangeConverging => {
            check_range_converging(rule, instance, &default_budget_increments(instance))
        }
        AxiomId::RangeUnanimous => check_range_unanimous(rule, instance),
        AxiomId::DegreeEfficient => check_degree_efficient(rule, instance),
        AxiomId::LowerBoundSensitive => check_lower_bound_sensitive(rule, instance),
        AxiomId::UpperBoundSensitive => check_upper_bound_sensitive(rule, instance),
        AxiomId::DiscountProof => check_discount_proof(rule, instance),
    }
}

/// Narrowing a voter's range toward a winning cost must not dethrone it.
///
/// For every optimal allocation, voter, and project, the lower bound is
/// moved up one permissible cost toward the chosen cost and, independently,
/// the upper bound down one; steps that would cross the chosen cost or leave
/// `lower > upper` do not exist as mutations. The allocation must stay
/// optimal in every mutated instance.
pub fn check_shrink_resistant<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::ShrinkResistant;
    let selected = optima(rule, instance)?;

    // Many optima share a mutation; solve each mutated instance once.
    let mut groups: BTreeMap<(usize, usize, bool, u64), Vec<&Allocation>> = BTreeMap::new();
    for alloc in &selected {
        for j in 0..instance.num_projects() {
            let choc = alloc.chosen_cost(instance, j);
            let costs = instance.project(j).costs();
            for i in 0..instance.num_voters() {
                let lower = instance.lower_bound(i, j);
                let upper = instance.upper_bound(i, j);
                if lower < choc {
                    let pos = costs.binary_search(&lower).expect("bounds are permissible");
                    let stepped = costs[pos + 1];
                    debug_assert!(stepped <= choc);
                    if stepped <= upper {
                        groups
                            .entry((i, j, false, stepped))
                            .or_default()
                            .push(alloc);
                    }
                }
                if upper > choc {
                    let pos = costs.binary_search(&upper).expect("bounds are permissible");
                    let stepped = costs[pos - 1];
                    debug_assert!(stepped >= choc);
                    if stepped >= lower {
                        groups.entry((i, j, true, stepped)).or_default().push(alloc);
                    }
                }
            }
        }
    }

    for ((voter, project, is_upper, new_value), allocs) in groups {
        let mutation = Mutation::ShrinkBound {
            voter,
            project,
            side: if is_upper {
                BoundSide::Upper
            } else {
                BoundSide::Lower
            },
            new_value,
        };
        let mutated = mutation
            .apply(instance)
            .expect("narrowing preserves validity");
        let after = optima(rule, &mutated)?;
        for alloc in allocs {
            if after.binary_search(alloc).is_err() {
                return Ok(AxiomReport::violated(
                    axiom,
                    instance,
                    WitnessDetail::Shrink {
                        allocation: alloc.clone(),
                        mutation,
                        optima_after: after,
                    },
                ));
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// No selected allocation may fund a project beyond the most expensive cost
/// every voter accepts, whenever such a unanimous cost exists.
pub fn check_range_abiding<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::RangeAbiding;
    let tau = consensus_ranges(instance);
    for alloc in optima(rule, instance)? {
        for j in tau.nonempty_projects() {
            let chosen_cost = alloc.chosen_cost(instance, j);
            let tau_max = tau.tau_max(j).expect("nonempty consensus");
            if chosen_cost > tau_max {
                return Ok(AxiomReport::violated(
                    axiom,
                    instance,
                    WitnessDetail::RangeAbiding {
                        allocation: alloc,
                        project: j,
                        chosen_cost,
                        tau_max,
                    },
                ));
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// Raising the budget must move some consensus project's funding closer to
/// (or into) its consensus range whenever the selection changes.
///
/// For each increment, each optimal allocation `S` of the base instance and
/// each different optimal allocation `S'` of the raised instance, some
/// project with a nonempty consensus set must either already be funded
/// inside it by `S`, or sit strictly farther from the consensus minimum
/// under `S` than under `S'`.
pub fn check_range_converging<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
    budget_increments: &[u64],
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::RangeConverging;
    let tau = consensus_ranges(instance);
    let consensus_projects: Vec<usize> = tau.nonempty_projects().collect();
    if consensus_projects.is_empty() {
        return Ok(AxiomReport::satisfied(axiom));
    }
    let anchors: Vec<u64> = consensus_projects
        .iter()
        .map(|&j| tau.tau_min(j).expect("nonempty consensus"))
        .collect();
    let distances = |alloc: &Allocation| -> Vec<u64> {
        consensus_projects
            .iter()
            .zip(&anchors)
            .map(|(&j, &anchor)| alloc.chosen_cost(instance, j).abs_diff(anchor))
            .collect()
    };

    // Only allocations funding every consensus project outside its set can
    // take part in a violation; the distance vector is all that matters, so
    // deduplicate and keep two representatives for the S != S' check.
    let mut candidates: BTreeMap<Vec<u64>, Vec<Allocation>> = BTreeMap::new();
    for alloc in optima(rule, instance)? {
        let in_consensus = consensus_projects
            .iter()
            .any(|&j| tau.contains(j, alloc.chosen_cost(instance, j)));
        if in_consensus {
            continue;
        }
        let entry = candidates.entry(distances(&alloc)).or_default();
        if entry.len() < 2 {
            entry.push(alloc);
        }
    }
    if candidates.is_empty() {
        return Ok(AxiomReport::satisfied(axiom));
    }

    for &delta in budget_increments {
        let bumped = instance.with_budget(instance.budget() + delta);
        let mut successors: BTreeMap<Vec<u64>, Vec<Allocation>> = BTreeMap::new();
        for alloc in optima(rule, &bumped)? {
            let entry = successors.entry(distances(&alloc)).or_default();
            if entry.len() < 2 {
                entry.push(alloc);
            }
        }
        for (dist_before, before) in &candidates {
            for (dist_after, after) in &successors {
                let nothing_converged = dist_before.iter().zip(dist_after).all(|(b, a)| b <= a);
                if !nothing_converged {
                    continue;
                }
                let pair = before
                    .iter()
                    .flat_map(|s| after.iter().map(move |s2| (s, s2)))
                    .find(|(s, s2)| s != s2);
                if let Some((allocation, successor)) = pair {
                    return Ok(AxiomReport::violated(
                        axiom,
                        instance,
                        WitnessDetail::RangeConverging {
                            delta,
                            allocation: allocation.clone(),
                            successor: successor.clone(),
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// When funding every project at its consensus maximum fits the budget,
/// that allocation must be among the selected ones. Holds vacuously when
/// some project has no unanimous cost at all.
pub fn check_range_unanimous<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::RangeUnanimous;
    let tau = consensus_ranges(instance);
    let mut degrees = Vec::with_capacity(instance.num_projects());
    let mut total = 0u64;
    for j in 0..instance.num_projects() {
        match tau.tau_max(j) {
            None => return Ok(AxiomReport::satisfied(axiom)),
            Some(cost) => {
                total += cost;
                degrees.push(
                    instance
                        .project(j)
                        .degree_of_cost(cost)
                        .expect("consensus costs are permissible"),
                );
            }
        }
    }
    if total > instance.budget() {
        return Ok(AxiomReport::satisfied(axiom));
    }
    let consensus_allocation = Allocation::new(degrees);
    let selected = optima(rule, instance)?;
    if selected.binary_search(&consensus_allocation).is_ok() {
        Ok(AxiomReport::satisfied(axiom))
    } else {
        Ok(AxiomReport::violated(
            axiom,
            instance,
            WitnessDetail::RangeUnanimous {
                consensus_allocation,
                optima: selected,
            },
        ))
    }
}

/// A selected allocation must leave no room to raise any project's degree:
/// swapping in any higher degree has to blow the budget.
pub fn check_degree_efficient<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::DegreeEfficient;
    for alloc in optima(rule, instance)? {
        let cost = alloc.cost(instance);
        for j in 0..instance.num_projects() {
            let project = instance.project(j);
            let chosen = alloc.degree_of(j);
            for degree in chosen + 1..=project.top_degree() {
                if cost - project.cost(chosen) + project.cost(degree) <= instance.budget() {
                    return Ok(AxiomReport::violated(
                        axiom,
                        instance,
                        WitnessDetail::DegreeEfficient {
                            allocation: alloc,
                            project: j,
                            degree,
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// Of two valid allocations differing only at one project and both funding
/// it strictly below every voter's lower bound, the lower one must not be
/// selected.
pub fn check_lower_bound_sensitive<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::LowerBoundSensitive;
    let min_lower: Vec<u64> = (0..instance.num_projects())
        .map(|j| {
            (0..instance.num_voters())
                .map(|i| instance.lower_bound(i, j))
                .min()
                .unwrap_or(u64::MAX)
        })
        .collect();
    for alloc in optima(rule, instance)? {
        let cost = alloc.cost(instance);
        for (j, &lower_floor) in min_lower.iter().enumerate() {
            let project = instance.project(j);
            let chosen = alloc.degree_of(j);
            for degree in chosen + 1..=project.top_degree() {
                let raised = project.cost(degree);
                if raised < lower_floor && cost - project.cost(chosen) + raised <= instance.budget()
                {
                    return Ok(AxiomReport::violated(
                        axiom,
                        instance,
                        WitnessDetail::LowerBound {
                            counter: alloc.with_degree(j, degree),
                            allocation: alloc,
                            project: j,
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// Of two valid allocations differing only at one project and both funding
/// it strictly above every voter's upper bound, the higher one must not be
/// selected.
pub fn check_upper_bound_sensitive<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::UpperBoundSensitive;
    let max_upper: Vec<u64> = (0..instance.num_projects())
        .map(|j| {
            (0..instance.num_voters())
                .map(|i| instance.upper_bound(i, j))
                .max()
                .unwrap_or(0)
        })
        .collect();
    for alloc in optima(rule, instance)? {
        for (j, &upper_ceiling) in max_upper.iter().enumerate() {
            let project = instance.project(j);
            let chosen = alloc.degree_of(j);
            for degree in 0..chosen {
                // the lowered swap only gets cheaper, so it stays valid
                if project.cost(degree) > upper_ceiling {
                    return Ok(AxiomReport::violated(
                        axiom,
                        instance,
                        WitnessDetail::UpperBound {
                            counter: alloc.with_degree(j, degree),
                            allocation: alloc,
                            project: j,
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::satisfied(axiom))
}

/// A selected allocation must survive a one-unit discount on any of its
/// funded degrees. Voter bounds equal to the discounted cost move with it;
/// discounts that would collide with the next lower cost are skipped and
/// reported.
pub fn check_discount_proof<R: WelfareRule + ?Sized>(
    rule: &R,
    instance: &Instance,
) -> Result<AxiomReport, SolveError> {
    let axiom = AxiomId::DiscountProof;
    let selected = optima(rule, instance)?;
    let mut skipped = Vec::new();

    let mut funded: Vec<(usize, usize)> = selected
        .iter()
        .flat_map(|alloc| alloc.funded().collect::<Vec<_>>())
        .collect();
    funded.sort_unstable();
    funded.dedup();

    for (project, degree) in funded {
        let mutation = Mutation::CostDiscount { project, degree };
        let mutated = match mutation.apply(instance) {
            Ok(mutated) => mutated,
            Err(MutationError::Collision { .. }) => {
                skipped.push(mutation);
                continue;
            }
            Err(MutationError::InvalidResult(errors)) => {
                unreachable!("discount produced an invalid instance: {errors:?}")
            }
        };
        let after = optima(rule, &mutated)?;
        for alloc in selected.iter().filter(|a| a.degree_of(project) == degree) {
            if after.binary_search(alloc).is_err() {
                let mut report = AxiomReport::violated(
                    axiom,
                    instance,
                    WitnessDetail::Discount {
                        allocation: alloc.clone(),
                        mutation,
                        optima_after: after,
                    },
                );
                report.skipped = skipped;
                return Ok(report);
            }
        }
    }
    let mut report = AxiomReport::satisfied(axiom);
    report.skipped = skipped;
    Ok(report)
}
