use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    feasible_interval, min_multiplier_cover, perturbations, simplest_between, validate_lambda,
    FeasibleInterval, Side, Stab,
};
use crate::error::{Error, Result};
use crate::metrics::{Demand, MetricSet, Multiplier};
use crate::mtr::{greedy_mtr, RealTopology, SearchConfig};
use crate::network::Network;

/// Where a virtual topology's multiplier is placed inside its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaPlacement {
    /// The stab point itself (right end of the earliest deadline), ties
    /// resolved by stepping into the interval.
    #[default]
    Max,
    /// The simplest fraction in the middle half of the common part of the
    /// covered intervals.
    Midpoint,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmtrConfig {
    pub placement: LambdaPlacement,
    /// Configuration of the MTR fallback for demands left without a virtual topology.
    pub mtr: SearchConfig,
}

/// Virtual topology with weights `r¹ + λ·r²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualTopology {
    /// Deployed multiplier, after tie resolution.
    pub lambda: Multiplier,
    /// Multiplier chosen by the cover before tie resolution.
    pub stab: Multiplier,
    pub assigned: Vec<usize>,
}

impl VirtualTopology {
    /// Coefficient vector `(1, λ)` over the base metrics.
    pub fn coefficients(&self) -> [Multiplier; 2] {
        [Multiplier::one(), self.lambda]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VmtrPlan {
    pub virtual_topologies: Vec<VirtualTopology>,
    pub real: Vec<RealTopology>,
    /// Demands routed by the MTR fallback, ascending.
    pub discarded_to_mtr: Vec<usize>,
    /// Subset of `discarded_to_mtr` that had an interval but failed tie resolution.
    pub demoted: Vec<usize>,
}

/// Wall-clock split of a vMTR design run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VmtrTimings {
    pub intervals: Duration,
    pub cover: Duration,
    pub mtr_fallback: Duration,
}

/// Designs virtual topologies for all demands with a usable multiplier
/// interval and routes the rest on real topologies.
pub fn design_vmtr(
    net: &Network,
    metrics: &MetricSet,
    demands: &[Demand],
    cfg: &VmtrConfig,
) -> Result<VmtrPlan> {
    design_vmtr_timed(net, metrics, demands, cfg).map(|(plan, _)| plan)
}

pub fn design_vmtr_timed(
    net: &Network,
    metrics: &MetricSet,
    demands: &[Demand],
    cfg: &VmtrConfig,
) -> Result<(VmtrPlan, VmtrTimings)> {
    if metrics.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "virtual topology design supports exactly two base metrics, got {}; \
             the multi-metric cover problem is NP-hard and not implemented",
            metrics.len()
        )));
    }
    metrics.check_network(net)?;
    let mut timings = VmtrTimings::default();

    let started = Instant::now();
    let intervals: Vec<Option<FeasibleInterval>> = demands
        .par_iter()
        .map(|k| {
            k.validate(net, metrics)?;
            feasible_interval(net, metrics, k)
        })
        .collect::<Result<_>>()?;
    timings.intervals = started.elapsed();

    let started = Instant::now();
    let by_id = |id: usize| demands.iter().find(|k| k.id == id).expect("known demand");
    let mut pool: Vec<usize> = Vec::new();
    let mut demoted = Vec::new();
    let mut pending: Vec<FeasibleInterval> = Vec::new();
    for (k, iv) in demands.iter().zip(intervals) {
        match iv {
            Some(iv) => pending.push(iv),
            None => pool.push(k.id),
        }
    }

    let mut virtual_topologies = Vec::new();
    while !pending.is_empty() {
        let mut requeue = Vec::new();
        for stab in min_multiplier_cover(&pending) {
            let group: Vec<&FeasibleInterval> = stab
                .demands
                .iter()
                .map(|id| pending.iter().find(|iv| iv.demand == *id).unwrap())
                .collect();
            match deploy(net, metrics, &stab, &group, cfg.placement, &by_id) {
                Some((lambda, assigned)) => {
                    for iv in &group {
                        if assigned.binary_search(&iv.demand).is_err() {
                            requeue.push((*iv).clone());
                        }
                    }
                    virtual_topologies.push(VirtualTopology {
                        lambda,
                        stab: stab.lambda,
                        assigned,
                    });
                }
                None => {
                    demoted.push(stab.owner);
                    requeue.extend(group.iter().filter(|iv| iv.demand != stab.owner).map(|iv| (*iv).clone()));
                }
            }
        }
        pending = requeue;
    }
    timings.cover = started.elapsed();

    let started = Instant::now();
    pool.extend(&demoted);
    pool.sort_unstable();
    demoted.sort_unstable();
    let fallback: Vec<Demand> = pool.iter().map(|&id| by_id(id).clone()).collect();
    let real = greedy_mtr(net, metrics, &fallback, &cfg.mtr)?;
    timings.mtr_fallback = started.elapsed();

    Ok((
        VmtrPlan {
            virtual_topologies,
            real,
            discarded_to_mtr: pool,
            demoted,
        },
        timings,
    ))
}

/// Picks the deployed multiplier for a stab: the first ε-perturbation at
/// which the owner validates, preferring one that validates the whole group.
/// Returns `None` when the owner never validates.
fn deploy<'a>(
    net: &Network,
    metrics: &MetricSet,
    stab: &Stab,
    group: &[&FeasibleInterval],
    placement: LambdaPlacement,
    by_id: &impl Fn(usize) -> &'a Demand,
) -> Option<(Multiplier, Vec<usize>)> {
    let (base, order) = match placement {
        LambdaPlacement::Max if stab.at_left_end => (stab.lambda, [Side::Right, Side::Left]),
        LambdaPlacement::Max => (stab.lambda, [Side::Left, Side::Right]),
        LambdaPlacement::Midpoint => {
            let lo = group.iter().map(|iv| iv.lambda_min).max().unwrap();
            let mid = if stab.at_left_end {
                lo + lo.max(Multiplier::one())
            } else if lo == stab.lambda {
                lo
            } else {
                // a short fraction in the middle half keeps the weights' denominators small
                let quarter = (stab.lambda - lo) / Multiplier::from_integer(4);
                simplest_between(lo + quarter, stab.lambda - quarter)
            };
            (mid, [Side::Right, Side::Left])
        }
    };
    let owner = by_id(stab.owner);
    let mut best: Option<(Multiplier, Vec<usize>)> = None;
    for lambda in perturbations(base, order) {
        if validate_lambda(net, metrics, owner, &lambda).is_none() {
            continue;
        }
        let mut assigned: Vec<usize> = group
            .iter()
            .map(|iv| iv.demand)
            .filter(|&id| id == stab.owner || validate_lambda(net, metrics, by_id(id), &lambda).is_some())
            .collect();
        assigned.sort_unstable();
        if assigned.len() == group.len() {
            return Some((lambda, assigned));
        }
        if best.as_ref().is_none_or(|(_, b)| assigned.len() > b.len()) {
            best = Some((lambda, assigned));
        }
    }
    best
}
