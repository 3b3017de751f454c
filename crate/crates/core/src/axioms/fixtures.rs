//! Small hand-built instances that exercise each axiom's failure modes.
//! They double as regression anchors for the verdict matrix tests.

use crate::model::Instance;

/// Two voters over projects `[0,2,4]` and `[0,3]` with budget 5; mixed
/// ranges with a unanimous cost on each project. The general-purpose demo.
pub fn ranged_pair() -> Instance {
    Instance::from_costs(
        vec![vec![0, 2, 4], vec![0, 3]],
        5,
        vec![vec![2, 0], vec![4, 3]],
        vec![vec![4, 3], vec![4, 3]],
    )
    .unwrap()
}

/// One project with costs `[0,5,11]` and budget 11. Everyone accepts 5;
/// a single enthusiast also accepts 11, which outweighs the unanimous cost
/// under value-proportional rules.
pub fn cost_outlier_single_project() -> Instance {
    Instance::from_costs(
        vec![vec![0, 5, 11]],
        11,
        vec![vec![5], vec![5]],
        vec![vec![11], vec![5]],
    )
    .unwrap()
}

/// One project with costs `[0,3,6]` and budget 10; both voters want exactly
/// 3. The upgrade to 6 stays affordable yet earns nothing.
pub fn affordable_upgrade_single_project() -> Instance {
    Instance::from_costs(
        vec![vec![0, 3, 6]],
        10,
        vec![vec![3], vec![3]],
        vec![vec![3], vec![3]],
    )
    .unwrap()
}

/// Projects `[0,1,2,7]` and `[0,8]` with budget 10; both voters want (7, 8).
/// Funding the first project at 1 or 2 undershoots everyone equally, so
/// both variants tie among the optima.
pub fn undershoot_tie_pair() -> Instance {
    Instance::from_costs(
        vec![vec![0, 1, 2, 7], vec![0, 8]],
        10,
        vec![vec![7, 8], vec![7, 8]],
        vec![vec![7, 8], vec![7, 8]],
    )
    .unwrap()
}

/// Projects `[0,1,2,3]` and `[0,7]` with budget 10; both voters want (1, 7).
/// Under the capped rule every overshoot of the first project earns the
/// same capped value, so the overshoots tie with the exact fit.
pub fn overshoot_tie_pair() -> Instance {
    Instance::from_costs(
        vec![vec![0, 1, 2, 3], vec![0, 7]],
        10,
        vec![vec![1, 7], vec![1, 7]],
        vec![vec![1, 7], vec![1, 7]],
    )
    .unwrap()
}

/// Two identical projects `[0,2]` with budget 2; both voters want cost 2 on
/// each. Only one project fits, so the optima tie, and a one-unit discount
/// breaks the tie against the discounted project under cost-based rules.
pub fn discount_tie_pair() -> Instance {
    Instance::from_costs(
        vec![vec![0, 2], vec![0, 2]],
        2,
        vec![vec![2, 2], vec![2, 2]],
        vec![vec![2, 2], vec![2, 2]],
    )
    .unwrap()
}

/// All reference instances with stable labels.
pub fn all() -> Vec<(&'static str, Instance)> {
    vec![
        ("ranged-pair", ranged_pair()),
        ("cost-outlier", cost_outlier_single_project()),
        ("affordable-upgrade", affordable_upgrade_single_project()),
        ("undershoot-tie", undershoot_tie_pair()),
        ("overshoot-tie", overshoot_tie_pair()),
        ("discount-tie", discount_tie_pair()),
    ]
}
