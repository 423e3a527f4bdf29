use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::graph::Path;
use crate::metrics::{Demand, MetricSet};
use crate::network::{ArcId, Network, NodeId};

pub const DEFAULT_K_PATHS: usize = 8;

/// `max_t sum_t / bound_t` held as a fraction for exact comparison.
#[derive(Debug, Clone, Copy)]
struct Length {
    num: u64,
    den: u64,
}

impl Length {
    fn of(sums: &[u64], bounds: &[u64]) -> Length {
        sums.iter()
            .zip(bounds)
            .map(|(&num, &den)| Length { num, den })
            .max()
            .expect("at least one metric")
    }

    fn within_one(&self) -> bool {
        self.num <= self.den
    }
}

impl PartialEq for Length {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Length {}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    length: Length,
    sums: Vec<u64>,
    arcs: Vec<ArcId>,
    node: NodeId,
}

/// TAMCRA: k-shortest label search under the nonlinear length
/// `ℓ(p) = max_t (Σ_{a∈p} r_a^t / r_k^t)`.
///
/// Keeps at most `k_paths` settled, mutually non-dominated labels per node
/// and returns the first path reaching the destination with `ℓ ≤ 1`.
pub fn tamcra(net: &Network, metrics: &MetricSet, demand: &Demand, k_paths: usize) -> Option<Path> {
    let k_paths = k_paths.max(1);
    let mut settled: Vec<Vec<Vec<u64>>> = vec![Vec::new(); net.node_count()];
    let mut heap = BinaryHeap::new();
    let zero = vec![0; metrics.len()];
    heap.push(Reverse(Label {
        length: Length::of(&zero, &demand.bounds),
        sums: zero,
        arcs: Vec::new(),
        node: demand.src,
    }));

    while let Some(Reverse(label)) = heap.pop() {
        let v = label.node;
        if settled[v].len() >= k_paths
            || settled[v]
                .iter()
                .any(|s| s.iter().zip(&label.sums).all(|(a, b)| a <= b))
        {
            continue;
        }
        if v == demand.dst {
            return Some(Path {
                src: demand.src,
                dst: demand.dst,
                arcs: label.arcs,
            });
        }
        for &a in net.out_arcs(v) {
            let sums: Vec<u64> = label
                .sums
                .iter()
                .enumerate()
                .map(|(t, &s)| s + metrics.value(t, a))
                .collect();
            let length = Length::of(&sums, &demand.bounds);
            if !length.within_one() {
                continue;
            }
            let mut arcs = label.arcs.clone();
            arcs.push(a);
            heap.push(Reverse(Label {
                length,
                sums,
                arcs,
                node: net.head(a),
            }));
        }
        settled[v].push(label.sums);
    }
    None
}
