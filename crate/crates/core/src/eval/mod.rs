//! Plan evaluation and the experiment driver.

mod experiment;

pub use experiment::{
    load_suite, run_experiment, ExperimentConfig, ExperimentSummary, RunError, SuiteEntry,
    RESULTS_COLUMNS, TIMINGS_COLUMNS,
};

use serde::{Deserialize, Serialize};

use crate::csp::consumption;
use crate::error::{Error, Result};
use crate::instance::InstanceSpec;
use crate::metrics::from_fixed;
use crate::plan::{DesignPlan, Method};

/// Per-metric ratio of consumption to bound for one provisioned demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Robustness {
    pub demand: usize,
    /// Index of the serving topology in the plan.
    pub topology: usize,
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEvaluation {
    pub method: Method,
    pub demands: usize,
    pub topologies: usize,
    pub virtual_topologies: usize,
    pub real_topologies: usize,
    pub avg_demands_per_topology: f64,
    /// `None` when the plan has no topology of that kind.
    pub avg_demands_per_virtual: Option<f64>,
    pub avg_demands_per_real: Option<f64>,
    pub discarded_to_mtr: usize,
    pub robustness: Vec<Robustness>,
}

impl PlanEvaluation {
    /// Mean robustness ratio of metric `t` over all demands; 0 without demands.
    pub fn mean_robustness(&self, t: usize) -> f64 {
        if self.robustness.is_empty() {
            return 0.0;
        }
        self.robustness.iter().map(|r| r.ratios[t]).sum::<f64>() / self.robustness.len() as f64
    }
}

fn average(total: usize, count: usize) -> Option<f64> {
    (count > 0).then(|| total as f64 / count as f64)
}

/// Re-routes every demand on its topology and checks all bounds.
///
/// Each demand must be assigned to exactly one topology. Routes are
/// recomputed from the plan's weights or multipliers.
pub fn evaluate_plan(inst: &InstanceSpec, plan: &DesignPlan) -> Result<PlanEvaluation> {
    let mut serving: Vec<Option<usize>> = vec![None; inst.demands.len()];
    let position = |id: usize| inst.demands.iter().position(|k| k.id == id);
    for (t, topo) in plan.topologies.iter().enumerate() {
        for &id in topo.demands() {
            let i = position(id).ok_or_else(|| Error::InvalidPlan(format!("unknown demand {id}")))?;
            if let Some(other) = serving[i].replace(t) {
                return Err(Error::InvalidPlan(format!(
                    "demand {id} is assigned to topologies {other} and {t}"
                )));
            }
        }
    }
    let mut robustness = Vec::with_capacity(inst.demands.len());
    for (k, t) in inst.demands.iter().zip(&serving) {
        let t = t.ok_or_else(|| Error::InvalidPlan(format!("demand {} is not assigned", k.id)))?;
        let path = plan.topologies[t]
            .route(&inst.network, &inst.metrics, k.src, k.dst)
            .map_err(|e| Error::InvalidPlan(format!("demand {}: {e}", k.id)))?;
        let used = consumption(&inst.metrics, &path);
        if !k.admits(&used) {
            return Err(Error::InvalidPlan(format!(
                "demand {} violates its bounds on topology {t}",
                k.id
            )));
        }
        robustness.push(Robustness {
            demand: k.id,
            topology: t,
            ratios: used
                .iter()
                .zip(&k.bounds)
                .map(|(&c, &b)| from_fixed(c) / from_fixed(b))
                .collect(),
        });
    }

    let assigned_to = |virt: bool| -> usize {
        plan.topologies
            .iter()
            .filter(|t| t.is_virtual() == virt)
            .map(|t| t.demands().len())
            .sum()
    };
    let (virtual_topologies, real_topologies) = (plan.virtual_count(), plan.real_count());
    Ok(PlanEvaluation {
        method: plan.method,
        demands: inst.demands.len(),
        topologies: plan.topologies.len(),
        virtual_topologies,
        real_topologies,
        avg_demands_per_topology: average(inst.demands.len(), plan.topologies.len()).unwrap_or(0.0),
        avg_demands_per_virtual: average(assigned_to(true), virtual_topologies),
        avg_demands_per_real: average(assigned_to(false), real_topologies),
        discarded_to_mtr: plan.discarded_to_mtr.len(),
        robustness,
    })
}
