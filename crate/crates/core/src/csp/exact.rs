use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Path;
use crate::metrics::{Demand, MetricSet};
use crate::network::{ArcId, Network, NodeId};

/// Resource sums in search order, arcs so far, current node.
type Label = (Vec<u64>, Vec<ArcId>, NodeId);

/// Minimum-`objective` path from `src` to `dst` whose per-metric sums stay
/// within `bounds` (`u64::MAX` = unbounded).
///
/// Label-setting over Pareto labels. Labels pop in order of
/// `(objective, remaining metrics, arc sequence)` and a label weakly dominated
/// by a settled label at the same node is dropped, so the first label that
/// reaches `dst` is optimal, ties broken by the other metrics and then by the
/// lexicographically smallest arc sequence. Cycles are always dominated, so
/// the result is simple.
pub fn exact_csp_with_bounds(
    net: &Network,
    metrics: &MetricSet,
    src: NodeId,
    dst: NodeId,
    bounds: &[u64],
    objective: usize,
) -> Option<Path> {
    let order: Vec<usize> = std::iter::once(objective)
        .chain((0..metrics.len()).filter(|&t| t != objective))
        .collect();
    // key: resources in `order`, then the arc sequence
    let mut heap: BinaryHeap<Reverse<Label>> = BinaryHeap::new();
    let mut settled: Vec<Vec<Vec<u64>>> = vec![Vec::new(); net.node_count()];
    heap.push(Reverse((vec![0; metrics.len()], Vec::new(), src)));

    while let Some(Reverse((key, arcs, v))) = heap.pop() {
        if settled[v]
            .iter()
            .any(|s| s.iter().zip(&key).all(|(a, b)| a <= b))
        {
            continue;
        }
        if v == dst {
            return Some(Path { src, dst, arcs });
        }
        settled[v].push(key.clone());
        for &a in net.out_arcs(v) {
            let next: Vec<u64> = order
                .iter()
                .zip(&key)
                .map(|(&t, &k)| k + metrics.value(t, a))
                .collect();
            if order.iter().zip(&next).any(|(&t, &r)| r > bounds[t]) {
                continue;
            }
            let mut path = arcs.clone();
            path.push(a);
            heap.push(Reverse((next, path, net.head(a))));
        }
    }
    None
}

/// Exact constrained shortest path for a demand: satisfies all bounds and
/// minimizes metric 0 (ties: metric 1, then lexicographic arc ids).
pub fn exact_csp(net: &Network, metrics: &MetricSet, demand: &Demand) -> Option<Path> {
    exact_csp_with_bounds(net, metrics, demand.src, demand.dst, &demand.bounds, 0)
}
