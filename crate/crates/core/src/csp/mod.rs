//! Constrained shortest path solvers: an exact Pareto search, LARAC and TAMCRA.

mod exact;
mod larac;
mod tamcra;

pub use exact::{exact_csp, exact_csp_with_bounds};
pub use larac::{larac, LaracResult};
pub use tamcra::{tamcra, DEFAULT_K_PATHS};

use crate::error::Result;
use crate::graph::{all_shortest_paths, Path, DEFAULT_PATH_CAP};
use crate::metrics::{MetricSet, Multiplier};
use crate::network::{Network, NodeId};

/// All shortest `src → dst` paths under `r¹_a + λ·r²_a` (metrics 0 and 1).
pub fn lambda_shortest(
    net: &Network,
    metrics: &MetricSet,
    lambda: &Multiplier,
    src: NodeId,
    dst: NodeId,
) -> Result<Vec<Path>> {
    let w = metrics.combined(0, 1, lambda);
    all_shortest_paths(net, &w, src, dst, DEFAULT_PATH_CAP)
}

/// Per-metric consumption of a path.
pub fn consumption(metrics: &MetricSet, path: &Path) -> Vec<u64> {
    (0..metrics.len())
        .map(|t| crate::graph::path_resource(path, metrics.metric(t)))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::metrics::Demand;

    /// Canonical diamond: nodes 1..4 mapped to 0..3.
    /// arcs: 0: 1→2, 1: 2→4 (delay 1, loss 10); 2: 1→3, 3: 3→4 (delay 10, loss 1);
    /// 4: 1→4 (delay 5, loss 5).
    pub fn diamond() -> Network {
        Network::from_arcs(
            4,
            &[(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)],
        )
        .unwrap()
    }

    pub fn diamond_metrics() -> MetricSet {
        MetricSet::from_f64(
            &["delay", "loss"],
            &[vec![1.0, 1.0, 10.0, 10.0, 5.0], vec![10.0, 10.0, 1.0, 1.0, 5.0]],
        )
        .unwrap()
    }

    #[test]
    fn exact_examples() {
        let (net, ms) = (diamond(), diamond_metrics());
        let k0 = Demand::from_f64(0, 0, 3, &[9.0, 9.0]).unwrap();
        assert_eq!(exact_csp(&net, &ms, &k0).unwrap().arcs, vec![4]);
        let k = Demand::from_f64(1, 0, 3, &[2.0, 20.0]).unwrap();
        assert_eq!(exact_csp(&net, &ms, &k).unwrap().arcs, vec![0, 1]);
        let k = Demand::from_f64(2, 0, 3, &[1.0, 1.0]).unwrap();
        assert_eq!(exact_csp(&net, &ms, &k), None);
    }

    #[test]
    fn exact_tie_break_prefers_second_metric_then_arcs() {
        // Two parallel arcs with equal delay; the lower-loss one must win,
        // and between identical arcs the smaller id.
        let net = Network::from_arcs(2, &[(0, 1, 1.0), (0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        let ms = MetricSet::from_f64(&["d", "l"], &[vec![1.0, 1.0, 1.0], vec![3.0, 2.0, 2.0]])
            .unwrap();
        let k = Demand::from_f64(0, 0, 1, &[5.0, 5.0]).unwrap();
        assert_eq!(exact_csp(&net, &ms, &k).unwrap().arcs, vec![1]);
    }

    #[test]
    fn lambda_shortest_examples() {
        let (net, ms) = (diamond(), diamond_metrics());
        let one = lambda_shortest(&net, &ms, &Multiplier::from_integer(1), 0, 3).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].arcs, vec![4]);
        let zero = lambda_shortest(&net, &ms, &Multiplier::from_integer(0), 0, 3).unwrap();
        assert_eq!(zero[0].arcs, vec![0, 1]);
        let fifth = lambda_shortest(&net, &ms, &Multiplier::new(1, 5), 0, 3).unwrap();
        let arcs: Vec<_> = fifth.iter().map(|p| p.arcs.clone()).collect();
        assert_eq!(arcs, vec![vec![0, 1], vec![4]]);
    }
}
