use std::cmp::Ordering;

use super::FeasibleInterval;
use crate::metrics::Multiplier;

/// One chosen multiplier and the intervals it stabs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stab {
    pub lambda: Multiplier,
    /// Demand whose interval endpoint defines `lambda`.
    pub owner: usize,
    /// True when `lambda` is the left end of the owner's interval
    /// (stabs of unbounded intervals); otherwise it is the right end.
    pub at_left_end: bool,
    /// Covered demand ids in interval order, owner first.
    pub demands: Vec<usize>,
}

fn by_deadline(a: &FeasibleInterval, b: &FeasibleInterval) -> Ordering {
    let hi = match (a.lambda_max, b.lambda_max) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => b.lambda_min.cmp(&a.lambda_min),
    };
    hi.then(a.lambda_min.cmp(&b.lambda_min))
        .then(a.demand.cmp(&b.demand))
}

/// Minimum set of multipliers stabbing every interval.
///
/// Earliest-deadline greedy: the smallest right end among uncovered
/// intervals is chosen and stabs every uncovered interval containing it.
/// Unbounded intervals come last; they are all stabbed together at the
/// largest remaining left end.
pub fn min_multiplier_cover(intervals: &[FeasibleInterval]) -> Vec<Stab> {
    let mut order: Vec<&FeasibleInterval> = intervals.iter().collect();
    order.sort_by(|a, b| by_deadline(a, b));
    let mut covered = vec![false; order.len()];
    let mut stabs = Vec::new();

    for i in 0..order.len() {
        if covered[i] {
            continue;
        }
        let owner = order[i];
        let (lambda, at_left_end) = match owner.lambda_max {
            Some(hi) => (hi, false),
            // every uncovered interval is unbounded and the owner has the
            // largest left end among them
            None => (owner.lambda_min, true),
        };
        let mut demands = Vec::new();
        for j in i..order.len() {
            if !covered[j] && order[j].contains(&lambda) {
                covered[j] = true;
                demands.push(order[j].demand);
            }
        }
        stabs.push(Stab {
            lambda,
            owner: owner.demand,
            at_left_end,
            demands,
        });
    }
    stabs
}
