use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{accepted_demands, local_search, FallbackWeights, RealTopology, SearchConfig};
use crate::csp::{exact_csp, tamcra};
use crate::error::{Error, Result};
use crate::graph::Path;
use crate::metrics::{Demand, MetricSet};
use crate::network::Network;

/// Weight 1 on the arcs of `path`, the maximum weight elsewhere. Any route
/// leaving the path pays at least the maximum weight, so `path` is the
/// unique shortest route between its endpoints.
pub fn seed_from_path(net: &Network, path: &Path) -> Vec<u64> {
    let mut w = vec![super::MAX_WEIGHT; net.arc_count()];
    for &a in &path.arcs {
        w[a] = 1;
    }
    w
}

/// Weight 1 on the arcs of `path`, uniform random weights elsewhere.
pub fn seed_from_path_random<R: Rng>(net: &Network, path: &Path, max_weight: u64, rng: &mut R) -> Vec<u64> {
    let mut w = random_weights(net, max_weight, rng);
    for &a in &path.arcs {
        w[a] = 1;
    }
    w
}

fn random_weights<R: Rng>(net: &Network, max_weight: u64, rng: &mut R) -> Vec<u64> {
    (0..net.arc_count()).map(|_| rng.gen_range(0..=max_weight)).collect()
}

/// Greedy MTR design: stack locally searched topologies until every demand
/// is accepted by one of them.
///
/// Each round starts from uniform random weights drawn from a ChaCha8 stream
/// seeded with `cfg.rng_seed`. When the search accepts nothing, the first
/// remaining demand is routed by TAMCRA (exact search as a backstop) and the
/// topology is seeded from that path, so every round removes a demand.
pub fn greedy_mtr(
    net: &Network,
    metrics: &MetricSet,
    demands: &[Demand],
    cfg: &SearchConfig,
) -> Result<Vec<RealTopology>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut remaining: Vec<Demand> = demands.to_vec();
    remaining.sort_by_key(|k| k.id);
    let mut topologies = Vec::new();

    while !remaining.is_empty() {
        let w0 = random_weights(net, cfg.max_weight, &mut rng);
        let mut weights = local_search(net, metrics, &w0, &remaining, cfg);
        let mut accepted = accepted_demands(net, metrics, &weights, &remaining);

        if accepted.is_empty() {
            let first = &remaining[0];
            let path = tamcra(net, metrics, first, cfg.tamcra_k_paths)
                .or_else(|| exact_csp(net, metrics, first))
                .ok_or(Error::InfeasibleDemand(first.id))?;
            log::debug!("demand {} seeds a topology from a fallback path", first.id);
            weights = match cfg.fallback_weights {
                FallbackWeights::Saturate => seed_from_path(net, &path),
                FallbackWeights::Random => {
                    seed_from_path_random(net, &path, cfg.max_weight, &mut rng)
                }
            };
            accepted = accepted_demands(net, metrics, &weights, &remaining);
            if !accepted.contains(&first.id) {
                weights = seed_from_path(net, &path);
                accepted = accepted_demands(net, metrics, &weights, &remaining);
            }
            if accepted.is_empty() {
                return Err(Error::InfeasibleDemand(first.id));
            }
        }

        remaining.retain(|k| accepted.binary_search(&k.id).is_err());
        topologies.push(RealTopology {
            weights,
            assigned: accepted,
        });
    }
    Ok(topologies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::tests::{diamond, diamond_metrics};
    use crate::graph::route_for_demand;

    #[test]
    fn seeding_makes_path_the_route() {
        let net = diamond();
        let direct = Path { src: 0, dst: 3, arcs: vec![4] };
        let w = seed_from_path(&net, &direct);
        assert_eq!(w, vec![65535, 65535, 65535, 65535, 1]);
        assert_eq!(route_for_demand(&net, &w, 0, 3).unwrap(), direct);

        let upper = Path { src: 0, dst: 3, arcs: vec![0, 1] };
        let w = seed_from_path(&net, &upper);
        assert_eq!(route_for_demand(&net, &w, 0, 3).unwrap(), upper);

        let single = Path { src: 0, dst: 1, arcs: vec![0] };
        assert_eq!(seed_from_path(&net, &single)[0], 1);
    }

    #[test]
    fn empty_demand_set() {
        let (net, ms) = (diamond(), diamond_metrics());
        assert!(greedy_mtr(&net, &ms, &[], &SearchConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn single_demand_single_topology() {
        let (net, ms) = (diamond(), diamond_metrics());
        let k0 = Demand::from_f64(0, 0, 3, &[9.0, 9.0]).unwrap();
        let plan = greedy_mtr(&net, &ms, std::slice::from_ref(&k0), &SearchConfig::default()).unwrap();
        assert_eq!(plan.len(), 1);
        assert_eq!(plan[0].assigned, vec![0]);
    }

    #[test]
    fn incompatible_demands_need_one_topology_each() {
        let (net, ms) = (diamond(), diamond_metrics());
        let ks = vec![
            Demand::from_f64(0, 0, 3, &[2.0, 20.0]).unwrap(),
            Demand::from_f64(1, 0, 3, &[20.0, 2.0]).unwrap(),
            Demand::from_f64(2, 0, 3, &[5.0, 5.0]).unwrap(),
        ];
        for cfg in [
            SearchConfig::default(),
            SearchConfig {
                fallback_weights: FallbackWeights::Random,
                rng_seed: 3,
                ..SearchConfig::default()
            },
        ] {
            let plan = greedy_mtr(&net, &ms, &ks, &cfg).unwrap();
            assert_eq!(plan.len(), 3);
            let mut all: Vec<usize> = plan.iter().flat_map(|t| t.assigned.clone()).collect();
            all.sort();
            assert_eq!(all, vec![0, 1, 2]);
        }
    }

    #[test]
    fn infeasible_demand_is_reported() {
        let (net, ms) = (diamond(), diamond_metrics());
        let k = Demand::from_f64(7, 0, 3, &[1.0, 1.0]).unwrap();
        assert!(matches!(
            greedy_mtr(&net, &ms, &[k], &SearchConfig::default()),
            Err(Error::InfeasibleDemand(7))
        ));
    }
}
