//! Property tests for the model layer: separability of every rule into its
//! score table, utility bounds, consensus-range soundness, and invariance of
//! optima under scaling.

use proptest::prelude::*;

use rangepb_core::gen::{generate_instance, GeneratorConfig};
use rangepb_core::{
    brute_force, consensus_ranges, scalable_limit, score_table, total_value, utility, Allocation,
    Instance, Rule,
};

fn small_instance() -> impl Strategy<Value = Instance> {
    (
        1usize..=4,
        1usize..=3,
        0usize..=4,
        2u64..=8,
        0u64..=12,
        any::<u64>(),
    )
        .prop_map(|(m, degrees, n, max_cost, budget, seed)| {
            let config = GeneratorConfig {
                num_projects: m,
                max_degrees: degrees.min(max_cost as usize),
                num_voters: n,
                max_cost,
                budget_range: (budget, budget),
            };
            generate_instance(&config, seed).unwrap()
        })
}

fn arbitrary_allocation(instance: &Instance, picks: &[u8]) -> Allocation {
    Allocation::new(
        (0..instance.num_projects())
            .map(|j| picks[j % picks.len()] as usize % instance.project(j).num_degrees())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Every rule's total over any allocation equals its score-table sum.
    #[test]
    fn separability(instance in small_instance(), picks in proptest::collection::vec(any::<u8>(), 4)) {
        let alloc = arbitrary_allocation(&instance, &picks);
        for rule in Rule::ALL {
            let table = score_table(rule, &instance);
            prop_assert_eq!(table.total(&alloc), total_value(rule, &instance, &alloc));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Cardinal utility counts at most one per project; cost-based per-voter
    /// utilities never exceed the allocation's cost.
    #[test]
    fn utility_bounds(instance in small_instance(), picks in proptest::collection::vec(any::<u8>(), 4)) {
        let alloc = arbitrary_allocation(&instance, &picks);
        let cost = alloc.cost(&instance);
        for voter in 0..instance.num_voters() {
            prop_assert!(utility(Rule::Cardinal, &instance, voter, &alloc) <= instance.num_projects() as u64);
            prop_assert!(utility(Rule::Cost, &instance, voter, &alloc) <= cost);
            prop_assert!(utility(Rule::CostCapped, &instance, voter, &alloc) <= cost);
        }
    }

    /// Consensus sets contain exactly the costs inside every voter's range.
    #[test]
    fn consensus_soundness(instance in small_instance()) {
        let tau = consensus_ranges(&instance);
        for j in 0..instance.num_projects() {
            for &cost in instance.project(j).costs() {
                let unanimous = (0..instance.num_voters()).all(|i| {
                    instance.lower_bound(i, j) <= cost && cost <= instance.upper_bound(i, j)
                });
                prop_assert_eq!(tau.contains(j, cost), unanimous);
            }
        }
    }

    /// Scaling the instance down never changes the set of optimal
    /// allocations, for any rule.
    #[test]
    fn scaling_preserves_optima(instance in small_instance()) {
        let scaled = match scalable_limit(&instance) {
            Ok(scaled) => scaled,
            Err(_) => return Ok(()), // no positive cost anywhere
        };
        for rule in Rule::ALL {
            let (_, original) = brute_force(rule, &instance).unwrap();
            let (_, rescaled) = brute_force(rule, &scaled.instance).unwrap();
            prop_assert_eq!(original, rescaled, "{}", rule);
        }
    }
}

#[test]
fn serialization_round_trips_on_1000_instances() {
    use rangepb_core::io::InstanceDocument;
    let config = GeneratorConfig {
        num_projects: 4,
        max_degrees: 3,
        num_voters: 4,
        max_cost: 9,
        budget_range: (0, 15),
    };
    for seed in 0..1000 {
        let instance = generate_instance(&config, seed).unwrap();
        let doc = InstanceDocument::from_instance(&instance, None);
        let parsed = InstanceDocument::from_json(&doc.to_json_pretty()).unwrap();
        let (back, _) = parsed.into_instance().unwrap();
        assert_eq!(back, instance, "seed {seed}");
    }
}

#[test]
fn optimal_value_is_monotone_in_budget() {
    let config = GeneratorConfig {
        num_projects: 3,
        max_degrees: 3,
        num_voters: 3,
        max_cost: 8,
        budget_range: (0, 0),
    };
    for seed in 0..150 {
        let base = generate_instance(&config, seed).unwrap();
        let mut last: Option<[u64; 4]> = None;
        for budget in 0..=14 {
            let mut doc = rangepb_core::io::InstanceDocument::from_instance(&base, None);
            doc.budget = budget;
            let (instance, _) = doc.into_instance().unwrap();
            let values = [
                brute_force(Rule::Cardinal, &instance)
                    .unwrap()
                    .0
                    .optimal_value,
                brute_force(Rule::Cost, &instance).unwrap().0.optimal_value,
                brute_force(Rule::CostCapped, &instance)
                    .unwrap()
                    .0
                    .optimal_value,
                brute_force(Rule::Distance, &instance)
                    .unwrap()
                    .0
                    .optimal_value,
            ];
            if let Some(prev) = last {
                for k in 0..3 {
                    assert!(values[k] >= prev[k], "seed {seed} budget {budget}");
                }
                assert!(values[3] <= prev[3], "seed {seed} budget {budget}");
            }
            last = Some(values);
        }
    }
}
