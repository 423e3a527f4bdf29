//! Deterministic shortest-path primitives.
//!
//! Dijkstra pops nodes by `(distance, node id)`. A node's parent arc is the
//! smallest-id arc among the minimum-distance candidates relaxed before the
//! node is settled, so trees and routes are reproducible bit for bit.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::network::{ArcId, Network, NodeId};

/// Default bound on the number of enumerated shortest paths.
pub const DEFAULT_PATH_CAP: usize = 1000;

/// Additive, totally ordered arc weight.
pub trait Cost: Copy + Ord + Add<Output = Self> + Debug + Send + Sync {
    const ZERO: Self;
}

impl Cost for u64 {
    const ZERO: Self = 0;
}

impl Cost for u128 {
    const ZERO: Self = 0;
}

/// Pair of costs compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lex2(pub u64, pub u64);

impl Add for Lex2 {
    type Output = Lex2;

    fn add(self, rhs: Lex2) -> Lex2 {
        Lex2(self.0 + rhs.0, self.1 + rhs.1)
    }
}

impl Cost for Lex2 {
    const ZERO: Self = Lex2(0, 0);
}

/// Orientation of a shortest-path tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Distances from the root; `parent_arc[v]` enters `v`.
    FromRoot,
    /// Distances to the root over reversed arcs; `parent_arc[v]` leaves `v`
    /// and is the next hop towards the root.
    ToRoot,
}

/// Rooted shortest-path tree with distances (`None` = unreachable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree<W> {
    pub root: NodeId,
    pub direction: Direction,
    pub parent_arc: Vec<Option<ArcId>>,
    pub dist: Vec<Option<W>>,
    depth: Vec<usize>,
}

impl<W: Cost> SpTree<W> {
    pub fn is_reachable(&self, v: NodeId) -> bool {
        self.dist[v].is_some()
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    /// Node one step closer to the root.
    pub fn parent_node(&self, net: &Network, v: NodeId) -> Option<NodeId> {
        self.parent_arc[v].map(|a| match self.direction {
            Direction::FromRoot => net.tail(a),
            Direction::ToRoot => net.head(a),
        })
    }

    pub fn is_tree_arc(&self, a: ArcId, net: &Network) -> bool {
        let child = match self.direction {
            Direction::FromRoot => net.head(a),
            Direction::ToRoot => net.tail(a),
        };
        self.parent_arc[child] == Some(a)
    }

    /// Tree arcs between `ancestor` and `v`, ordered from `v` upwards.
    pub fn arcs_up_to(&self, net: &Network, v: NodeId, ancestor: NodeId) -> Vec<ArcId> {
        let mut arcs = Vec::new();
        let mut cur = v;
        while cur != ancestor {
            let a = self.parent_arc[cur].expect("ancestor must lie on the parent chain");
            arcs.push(a);
            cur = self.parent_node(net, cur).unwrap();
        }
        arcs
    }
}

/// Shortest-path tree rooted at `root` (Dijkstra).
pub fn shortest_path_tree<W: Cost>(net: &Network, w: &[W], root: NodeId) -> SpTree<W> {
    dijkstra(net, w, root, Direction::FromRoot)
}

/// Shortest-path tree towards `root` on the reversed graph.
pub fn reverse_shortest_path_tree<W: Cost>(net: &Network, w: &[W], root: NodeId) -> SpTree<W> {
    dijkstra(net, w, root, Direction::ToRoot)
}

fn dijkstra<W: Cost>(net: &Network, w: &[W], root: NodeId, direction: Direction) -> SpTree<W> {
    assert_eq!(w.len(), net.arc_count(), "one weight per arc");
    let n = net.node_count();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent_arc: Vec<Option<ArcId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[root] = Some(W::ZERO);
    heap.push(Reverse((W::ZERO, root)));

    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u] || dist[u] != Some(d) {
            continue;
        }
        settled[u] = true;
        if let Some(a) = parent_arc[u] {
            let p = match direction {
                Direction::FromRoot => net.tail(a),
                Direction::ToRoot => net.head(a),
            };
            depth[u] = depth[p] + 1;
        }
        let arcs = match direction {
            Direction::FromRoot => net.out_arcs(u),
            Direction::ToRoot => net.in_arcs(u),
        };
        for &a in arcs {
            let v = match direction {
                Direction::FromRoot => net.head(a),
                Direction::ToRoot => net.tail(a),
            };
            if settled[v] {
                continue;
            }
            let nd = d + w[a];
            match dist[v] {
                Some(cur) if nd > cur => {}
                Some(cur) if nd == cur => {
                    if parent_arc[v].is_none_or(|p| a < p) {
                        parent_arc[v] = Some(a);
                    }
                }
                _ => {
                    dist[v] = Some(nd);
                    parent_arc[v] = Some(a);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }

    SpTree {
        root,
        direction,
        parent_arc,
        dist,
        depth,
    }
}

/// A simple directed path given by its arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: NodeId,
    pub dst: NodeId,
    pub arcs: Vec<ArcId>,
}

impl Path {
    pub fn nodes(&self, net: &Network) -> Vec<NodeId> {
        let mut nodes = vec![self.src];
        nodes.extend(self.arcs.iter().map(|&a| net.head(a)));
        nodes
    }

    /// Chains head to tail, starts at `src`, ends at `dst`, repeats no node.
    pub fn is_valid(&self, net: &Network) -> bool {
        let mut cur = self.src;
        let mut seen = vec![false; net.node_count()];
        seen[cur] = true;
        for &a in &self.arcs {
            if a >= net.arc_count() || net.tail(a) != cur {
                return false;
            }
            cur = net.head(a);
            if std::mem::replace(&mut seen[cur], true) {
                return false;
            }
        }
        cur == self.dst
    }

    pub fn weight<W: Cost>(&self, w: &[W]) -> W {
        self.arcs.iter().fold(W::ZERO, |acc, &a| acc + w[a])
    }
}

/// Sum of an additive per-arc metric along `p`.
pub fn path_resource(p: &Path, metric: &[u64]) -> u64 {
    p.arcs.iter().map(|&a| metric[a]).sum()
}

/// Follows next hops from `src` in a destination-rooted tree.
pub fn route_in_tree<W: Cost>(net: &Network, tree: &SpTree<W>, src: NodeId) -> Result<Path> {
    debug_assert_eq!(tree.direction, Direction::ToRoot);
    if !tree.is_reachable(src) {
        return Err(Error::Unreachable {
            src,
            dst: tree.root,
        });
    }
    let mut arcs = Vec::with_capacity(tree.depth(src));
    let mut cur = src;
    while cur != tree.root {
        let a = tree.parent_arc[cur].expect("reachable nodes have a next hop");
        arcs.push(a);
        cur = net.head(a);
    }
    Ok(Path {
        src,
        dst: tree.root,
        arcs,
    })
}

/// Hop-by-hop route: next hops of the `dst`-rooted reversed-graph tree.
pub fn route_for_demand<W: Cost>(net: &Network, w: &[W], src: NodeId, dst: NodeId) -> Result<Path> {
    let tree = reverse_shortest_path_tree(net, w, dst);
    route_in_tree(net, &tree, src)
}

/// Every minimum-weight simple `src → dst` path, in lexicographic arc order.
///
/// Fails with [`Error::CapExceeded`] when more than `cap` exist; never truncates.
pub fn all_shortest_paths<W: Cost>(
    net: &Network,
    w: &[W],
    src: NodeId,
    dst: NodeId,
    cap: usize,
) -> Result<Vec<Path>> {
    let from_src = shortest_path_tree(net, w, src);
    let Some(total) = from_src.dist[dst] else {
        return Err(Error::Unreachable { src, dst });
    };
    if src == dst {
        return Ok(vec![Path {
            src,
            dst,
            arcs: Vec::new(),
        }]);
    }
    let to_dst = reverse_shortest_path_tree(net, w, dst);
    let on_shortest = |a: ArcId| match (from_src.dist[net.tail(a)], to_dst.dist[net.head(a)]) {
        (Some(ds), Some(dt)) => ds + w[a] + dt == total,
        _ => false,
    };

    let mut paths = Vec::new();
    let mut visited = vec![false; net.node_count()];
    let mut arcs = Vec::new();
    visited[src] = true;
    // Stack of (node, next out-arc index).
    let mut stack = vec![(src, 0usize)];
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        let out = net.out_arcs(u);
        if *idx >= out.len() {
            stack.pop();
            visited[u] = false;
            arcs.pop();
            continue;
        }
        let a = out[*idx];
        *idx += 1;
        let v = net.head(a);
        if visited[v] || !on_shortest(a) {
            continue;
        }
        if v == dst {
            if paths.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            let mut full = arcs.clone();
            full.push(a);
            paths.push(Path { src, dst, arcs: full });
            continue;
        }
        visited[v] = true;
        arcs.push(a);
        stack.push((v, 0));
    }
    Ok(paths)
}

/// Deepest common ancestor of `u` and `v` in `tree`.
pub fn lowest_common_ancestor<W: Cost>(
    net: &Network,
    tree: &SpTree<W>,
    u: NodeId,
    v: NodeId,
) -> Result<NodeId> {
    for x in [u, v] {
        if !tree.is_reachable(x) {
            return Err(Error::NotInTree(x));
        }
    }
    let (mut a, mut b) = (u, v);
    while tree.depth(a) > tree.depth(b) {
        a = tree.parent_node(net, a).unwrap();
    }
    while tree.depth(b) > tree.depth(a) {
        b = tree.parent_node(net, b).unwrap();
    }
    while a != b {
        a = tree.parent_node(net, a).unwrap();
        b = tree.parent_node(net, b).unwrap();
    }
    Ok(a)
}
