use crate::graph::{lowest_common_ancestor, shortest_path_tree};
use crate::network::Network;

/// Per-arc thresholds: the smallest weight decrease (`down`) or increase
/// (`up`) that makes some shortest-path tree tie with a different parent.
/// `None` means no such change exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaWeights {
    pub up: Vec<Option<u64>>,
    pub down: Vec<Option<u64>>,
}

fn lower(slot: &mut Option<u64>, value: u64) {
    *slot = Some(slot.map_or(value, |cur| cur.min(value)));
}

/// Delta weights aggregated over the shortest-path trees of every root.
///
/// For each root and each non-tree arc `(s, t)` with slack
/// `dist(s) + w − dist(t)`: the arc itself and every tree arc from
/// `lca(s, t)` down to `s` may decrease by the slack, and every tree arc from
/// `lca(s, t)` down to `t` may increase by it, before `(s, t)` ties with the
/// tree. Each threshold is the minimum over all candidates and roots.
pub fn compute_delta_weights(net: &Network, w: &[u64]) -> DeltaWeights {
    let mut up = vec![None; net.arc_count()];
    let mut down = vec![None; net.arc_count()];
    for root in 0..net.node_count() {
        let tree = shortest_path_tree(net, w, root);
        for arc in net.arcs() {
            let (s, t) = (arc.tail, arc.head);
            let Some(ds) = tree.dist[s] else { continue };
            if tree.is_tree_arc(arc.id, net) {
                continue;
            }
            let dt = tree.dist[t].expect("head of a reachable tail is reachable");
            let slack = ds + w[arc.id] - dt;
            lower(&mut down[arc.id], slack);
            let lca = lowest_common_ancestor(net, &tree, s, t).expect("both endpoints reachable");
            for a in tree.arcs_up_to(net, s, lca) {
                lower(&mut down[a], slack);
            }
            for a in tree.arcs_up_to(net, t, lca) {
                lower(&mut up[a], slack);
            }
        }
    }
    DeltaWeights { up, down }
}
