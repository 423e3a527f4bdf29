//! All-pairs demand generation with tightened bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csp::{consumption, exact_csp};
use crate::graph::route_for_demand;
use crate::metrics::{Demand, MetricSet};
use crate::network::{Network, NodeId};

/// How the two bounds of a generated demand are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsMode {
    /// Loss bound from the delay-shortest route, delay bound from the
    /// loss-shortest route. Neither basic route is then admissible.
    #[default]
    Cross,
    /// Each bound from its own metric's shortest route. The bound lies below
    /// the metric's minimum, so every demand is infeasible and dropped.
    Literal,
}

/// `(1 − ε)·value`, rounded down and kept strictly below `value`.
fn tighten(value: u64, epsilon_b: f64) -> u64 {
    let t = ((1.0 - epsilon_b) * value as f64).floor() as u64;
    t.min(value.saturating_sub(1))
}

fn demand_for_pair(
    net: &Network,
    metrics: &MetricSet,
    src: NodeId,
    dst: NodeId,
    epsilon_b: f64,
    mode: BoundsMode,
) -> Option<Vec<u64>> {
    let by_delay = route_for_demand(net, metrics.metric(0), src, dst).ok()?;
    let by_loss = route_for_demand(net, metrics.metric(1), src, dst).ok()?;
    let (delay_route, loss_route) = (consumption(metrics, &by_delay), consumption(metrics, &by_loss));
    let bounds = match mode {
        BoundsMode::Cross => vec![tighten(loss_route[0], epsilon_b), tighten(delay_route[1], epsilon_b)],
        BoundsMode::Literal => vec![tighten(delay_route[0], epsilon_b), tighten(loss_route[1], epsilon_b)],
    };
    if bounds.contains(&0) {
        return None;
    }
    let probe = Demand::new(0, src, dst, bounds.clone()).ok()?;
    exact_csp(net, metrics, &probe)?;
    debug_assert!(!probe.admits(&delay_route) && !probe.admits(&loss_route));
    Some(bounds)
}

/// One demand per ordered node pair whose tightened bounds still admit a
/// path, numbered in `(src, dst)` order.
pub fn generate_demands(
    net: &Network,
    metrics: &MetricSet,
    epsilon_b: f64,
    mode: BoundsMode,
) -> Vec<Demand> {
    let n = net.node_count();
    let pairs: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|s| (0..n).filter(move |&d| d != s).map(move |d| (s, d)))
        .collect();
    let kept: Vec<(NodeId, NodeId, Vec<u64>)> = pairs
        .par_iter()
        .filter_map(|&(s, d)| demand_for_pair(net, metrics, s, d, epsilon_b, mode).map(|b| (s, d, b)))
        .collect();
    kept.into_iter()
        .enumerate()
        .map(|(id, (src, dst, bounds))| Demand { id, src, dst, bounds })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::tests::{diamond, diamond_metrics};
    use crate::metrics::to_fixed;

    #[test]
    fn diamond_keeps_compromise_demand() {
        let (net, ms) = (diamond(), diamond_metrics());
        let ks = generate_demands(&net, &ms, 0.05, BoundsMode::Cross);
        let k = ks.iter().find(|k| (k.src, k.dst) == (0, 3)).unwrap();
        assert_eq!(k.bounds, vec![to_fixed(19.0).unwrap(); 2]);
        assert_eq!(exact_csp(&net, &ms, k).unwrap().arcs, vec![4]);
        // single-arc pairs have a single route and cannot be tightened feasibly
        assert_eq!(ks.len(), 1);
        assert_eq!(k.id, 0);
    }

    #[test]
    fn literal_bounds_drop_everything() {
        let (net, ms) = (diamond(), diamond_metrics());
        assert!(generate_demands(&net, &ms, 0.05, BoundsMode::Literal).is_empty());
    }

    #[test]
    fn no_compromise_path_is_dropped() {
        let net = Network::from_arcs(4, &[(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let ms = MetricSet::from_f64(
            &["delay", "loss"],
            &[vec![1.0, 1.0, 10.0, 10.0], vec![10.0, 10.0, 1.0, 1.0]],
        )
        .unwrap();
        assert!(generate_demands(&net, &ms, 0.05, BoundsMode::Cross).is_empty());
    }

    #[test]
    fn single_node() {
        let net = Network::from_arcs(1, &[]).unwrap();
        let ms = MetricSet::from_f64(&["delay", "loss"], &[vec![], vec![]]).unwrap();
        assert!(generate_demands(&net, &ms, 0.05, BoundsMode::Cross).is_empty());
    }

    #[test]
    fn tightening_is_strict() {
        assert_eq!(tighten(20, 0.05), 19);
        assert_eq!(tighten(10, 0.0), 9);
        assert_eq!(tighten(1, 0.05), 0);
    }
}
