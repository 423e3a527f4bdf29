use rayon::prelude::*;

use super::{accepted_demands, compute_delta_weights, DeltaWeights, DownMove, SearchConfig};
use crate::metrics::{Demand, MetricSet};
use crate::network::Network;

/// Single-arc moves of `w` that cross a delta threshold, down move first,
/// in arc order. Moves that leave the weight unchanged after clamping are
/// dropped.
pub fn generate_neighborhood(
    net: &Network,
    w: &[u64],
    deltas: &DeltaWeights,
    cfg: &SearchConfig,
) -> Vec<Vec<u64>> {
    let mut neighbors = Vec::new();
    for a in 0..net.arc_count() {
        let lowered = deltas.down[a].map(|d| match cfg.down_move {
            DownMove::Subtract => w[a].saturating_sub(d.saturating_add(cfg.step_epsilon)),
            DownMove::LiteralAdd => w[a].saturating_add(d).saturating_add(cfg.step_epsilon),
        });
        let raised = deltas.up[a].map(|d| w[a].saturating_add(d).saturating_add(cfg.step_epsilon));
        for value in [lowered, raised].into_iter().flatten() {
            let value = value.min(cfg.max_weight);
            if value != w[a] {
                let mut next = w.to_vec();
                next[a] = value;
                neighbors.push(next);
            }
        }
    }
    neighbors
}

/// Local search maximizing the number of accepted demands.
///
/// Each iteration moves to the best neighbor (first in neighborhood order on
/// ties) even when it is worse than the current point, and remembers the
/// best vector seen. Neighbors are scored in parallel; the reduction is
/// sequential so results do not depend on the thread count.
pub fn local_search(
    net: &Network,
    metrics: &MetricSet,
    w0: &[u64],
    demands: &[Demand],
    cfg: &SearchConfig,
) -> Vec<u64> {
    let score = |w: &[u64]| accepted_demands(net, metrics, w, demands).len();
    let mut best = w0.to_vec();
    let mut best_score = score(w0);
    let mut current = w0.to_vec();
    for _ in 0..cfg.max_iterations {
        if best_score == demands.len() {
            break;
        }
        let deltas = compute_delta_weights(net, &current);
        let neighbors = generate_neighborhood(net, &current, &deltas, cfg);
        if neighbors.is_empty() {
            break;
        }
        let scores: Vec<usize> = neighbors.par_iter().map(|w| score(w)).collect();
        let (idx, &top) = scores
            .iter()
            .enumerate()
            .fold(None, |acc: Option<(usize, &usize)>, (i, s)| match acc {
                Some((_, b)) if b >= s => acc,
                _ => Some((i, s)),
            })
            .expect("non-empty neighborhood");
        current = neighbors.into_iter().nth(idx).unwrap();
        if top > best_score {
            best_score = top;
            best = current.clone();
        }
    }
    best
}
