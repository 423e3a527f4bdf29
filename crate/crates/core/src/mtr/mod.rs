//! Real (MTR) topology design: greedy stacking of locally searched weight vectors.

mod delta;
mod greedy;
mod search;

use std::collections::BTreeMap;

pub use delta::{compute_delta_weights, DeltaWeights};
pub use greedy::{greedy_mtr, seed_from_path, seed_from_path_random};
pub use search::{generate_neighborhood, local_search};

use serde::{Deserialize, Serialize};

use crate::csp::{consumption, DEFAULT_K_PATHS};
use crate::graph::{reverse_shortest_path_tree, route_in_tree};
use crate::metrics::{Demand, MetricSet};
use crate::network::Network;

/// Largest OSPF link weight.
pub const MAX_WEIGHT: u64 = 65535;

/// Direction of the move built from a down delta-weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DownMove {
    /// `w − δ↓ − ε`: the decrease that inserts the arc into a tree.
    #[default]
    Subtract,
    /// `w + δ↓ + ε`, the update exactly as the algorithm listing prints it.
    LiteralAdd,
}

/// Off-path weights used when seeding a topology from a fallback path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackWeights {
    /// Off-path arcs at the maximum weight; the path is always the route.
    #[default]
    Saturate,
    /// Fresh uniform random off-path weights. When the path is then not the
    /// route, the saturated vector is used instead.
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_iterations: usize,
    pub rng_seed: u64,
    /// Upper end of the weight range; the lower end is 0.
    pub max_weight: u64,
    /// Added beyond each delta threshold so the move strictly changes a tree.
    pub step_epsilon: u64,
    pub down_move: DownMove,
    pub fallback_weights: FallbackWeights,
    pub tamcra_k_paths: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_iterations: 50,
            rng_seed: 0,
            max_weight: MAX_WEIGHT,
            step_epsilon: 1,
            down_move: DownMove::Subtract,
            fallback_weights: FallbackWeights::Saturate,
            tamcra_k_paths: DEFAULT_K_PATHS,
        }
    }
}

/// A designed real topology and the demands routed on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealTopology {
    pub weights: Vec<u64>,
    pub assigned: Vec<usize>,
}

/// Ids of the demands whose hop-by-hop route under `w` meets every bound.
pub fn accepted_demands(
    net: &Network,
    metrics: &MetricSet,
    w: &[u64],
    demands: &[Demand],
) -> Vec<usize> {
    let mut by_dst: BTreeMap<usize, Vec<&Demand>> = BTreeMap::new();
    for k in demands {
        by_dst.entry(k.dst).or_default().push(k);
    }
    let mut accepted = Vec::new();
    for (dst, ks) in by_dst {
        let tree = reverse_shortest_path_tree(net, w, dst);
        for k in ks {
            if let Ok(path) = route_in_tree(net, &tree, k.src) {
                if k.admits(&consumption(metrics, &path)) {
                    accepted.push(k.id);
                }
            }
        }
    }
    accepted.sort_unstable();
    accepted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::tests::{diamond, diamond_metrics};
    use crate::metrics::{pair_coefficients, virtual_weights, Multiplier};

    #[test]
    fn acceptance_examples() {
        let (net, ms) = (diamond(), diamond_metrics());
        let k0 = Demand::from_f64(0, 0, 3, &[9.0, 9.0]).unwrap();
        let delay: Vec<u64> = ms.metric(0).to_vec();
        assert!(accepted_demands(&net, &ms, &delay, std::slice::from_ref(&k0)).is_empty());

        let vw = virtual_weights(&ms, &pair_coefficients(Multiplier::from_integer(1))).unwrap();
        let w: Vec<u64> = vw.scaled.iter().map(|&x| (x / 1_000_000_000) as u64).collect();
        assert_eq!(accepted_demands(&net, &ms, &w, &[k0]), vec![0]);
        assert!(accepted_demands(&net, &ms, &w, &[]).is_empty());
    }
}
