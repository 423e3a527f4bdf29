//! Serializable design plans shared by the designers, the evaluator and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{route_for_demand, Path};
use crate::metrics::{multiplier_to_f64, ExactMultiplier, MetricSet, Multiplier};
use crate::mtr::RealTopology;
use crate::network::{NodeId, Network};
use crate::vmtr::VmtrPlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mtr,
    Vmtr,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mtr => "mtr",
            Method::Vmtr => "vmtr",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlannedTopology {
    Real {
        weights: Vec<u64>,
        demands: Vec<usize>,
    },
    Virtual {
        /// Coefficients over the base metrics, for display.
        lambda: Vec<f64>,
        /// The same coefficients as exact fractions; authoritative.
        lambda_exact: Vec<ExactMultiplier>,
        demands: Vec<usize>,
    },
}

impl PlannedTopology {
    pub fn demands(&self) -> &[usize] {
        match self {
            PlannedTopology::Real { demands, .. } | PlannedTopology::Virtual { demands, .. } => demands,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, PlannedTopology::Virtual { .. })
    }

    /// Hop-by-hop route of `src → dst` on this topology.
    pub fn route(&self, net: &Network, metrics: &MetricSet, src: NodeId, dst: NodeId) -> Result<Path> {
        match self {
            PlannedTopology::Real { weights, .. } => {
                if weights.len() != net.arc_count() {
                    return Err(Error::InvalidPlan(format!(
                        "{} weights for {} arcs",
                        weights.len(),
                        net.arc_count()
                    )));
                }
                route_for_demand(net, weights, src, dst)
            }
            PlannedTopology::Virtual { lambda_exact, .. } => {
                let lambda = virtual_lambda(lambda_exact)?;
                route_for_demand(net, &metrics.combined(0, 1, &lambda), src, dst)
            }
        }
    }
}

/// The multiplier of a two-metric coefficient vector `(1, λ)`.
fn virtual_lambda(coefficients: &[ExactMultiplier]) -> Result<Multiplier> {
    match coefficients {
        [one, lambda] if one.0 == Multiplier::from_integer(1) => Ok(lambda.0),
        _ => Err(Error::InvalidPlan(
            "virtual topologies need coefficients of the form (1, λ)".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignPlan {
    pub method: Method,
    pub topologies: Vec<PlannedTopology>,
    /// Demands the virtual designer handed to the real-topology fallback.
    #[serde(default)]
    pub discarded_to_mtr: Vec<usize>,
}

impl DesignPlan {
    pub fn from_mtr(topologies: &[RealTopology]) -> Self {
        DesignPlan {
            method: Method::Mtr,
            topologies: topologies.iter().map(real).collect(),
            discarded_to_mtr: Vec::new(),
        }
    }

    pub fn from_vmtr(plan: &VmtrPlan) -> Self {
        let mut topologies: Vec<PlannedTopology> = plan
            .virtual_topologies
            .iter()
            .map(|vt| {
                let coefficients = vt.coefficients();
                PlannedTopology::Virtual {
                    lambda: coefficients.iter().map(multiplier_to_f64).collect(),
                    lambda_exact: coefficients.into_iter().map(ExactMultiplier).collect(),
                    demands: vt.assigned.clone(),
                }
            })
            .collect();
        topologies.extend(plan.real.iter().map(real));
        DesignPlan {
            method: Method::Vmtr,
            topologies,
            discarded_to_mtr: plan.discarded_to_mtr.clone(),
        }
    }

    pub fn virtual_count(&self) -> usize {
        self.topologies.iter().filter(|t| t.is_virtual()).count()
    }

    pub fn real_count(&self) -> usize {
        self.topologies.len() - self.virtual_count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn real(t: &RealTopology) -> PlannedTopology {
    PlannedTopology::Real {
        weights: t.weights.clone(),
        demands: t.assigned.clone(),
    }
}
