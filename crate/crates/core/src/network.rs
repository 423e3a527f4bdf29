//! Directed network with node coordinates and arc capacities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub id: ArcId,
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: f64,
}

#[derive(Serialize, Deserialize)]
struct RawNetwork {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
}

/// A directed graph `G = (V, A)`.
///
/// Node and arc ids are dense and equal to their position. Adjacency lists
/// are kept sorted by arc id, which the shortest-path tie-break relies on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNetwork", into = "RawNetwork")]
pub struct Network {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl TryFrom<RawNetwork> for Network {
    type Error = Error;

    fn try_from(raw: RawNetwork) -> Result<Self> {
        Network::new(raw.nodes, raw.arcs)
    }
}

impl From<Network> for RawNetwork {
    fn from(net: Network) -> Self {
        RawNetwork {
            nodes: net.nodes,
            arcs: net.arcs,
        }
    }
}

impl Network {
    pub fn new(nodes: Vec<Node>, arcs: Vec<Arc>) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::InvalidInput(format!(
                    "node ids must be dense, found {} at position {i}",
                    n.id
                )));
            }
        }
        let mut out_arcs = vec![Vec::new(); nodes.len()];
        let mut in_arcs = vec![Vec::new(); nodes.len()];
        for (i, a) in arcs.iter().enumerate() {
            if a.id != i {
                return Err(Error::InvalidInput(format!(
                    "arc ids must be dense, found {} at position {i}",
                    a.id
                )));
            }
            if a.tail >= nodes.len() || a.head >= nodes.len() {
                return Err(Error::InvalidInput(format!("arc {i} has an unknown endpoint")));
            }
            if a.tail == a.head {
                return Err(Error::InvalidInput(format!("arc {i} is a self-loop")));
            }
            if a.capacity.is_nan() || a.capacity <= 0.0 {
                return Err(Error::InvalidInput(format!("arc {i} has non-positive capacity")));
            }
            out_arcs[a.tail].push(i);
            in_arcs[a.head].push(i);
        }
        Ok(Network {
            nodes,
            arcs,
            out_arcs,
            in_arcs,
        })
    }

    /// Builds a network from `(tail, head, capacity)` triples with nodes at the origin.
    pub fn from_arcs(node_count: usize, arcs: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let nodes = (0..node_count)
            .map(|id| Node {
                id,
                x: 0.0,
                y: 0.0,
                name: None,
            })
            .collect();
        let arcs = arcs
            .iter()
            .enumerate()
            .map(|(id, &(tail, head, capacity))| Arc {
                id,
                tail,
                head,
                capacity,
            })
            .collect();
        Network::new(nodes, arcs)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> &Arc {
        &self.arcs[a]
    }

    pub fn tail(&self, a: ArcId) -> NodeId {
        self.arcs[a].tail
    }

    pub fn head(&self, a: ArcId) -> NodeId {
        self.arcs[a].head
    }

    /// Outgoing arcs of `v` (ω⁺), ascending by id.
    pub fn out_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    /// Incoming arcs of `v` (ω⁻), ascending by id.
    pub fn in_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// True when every node reaches every other node.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                let arcs = if forward { &self.out_arcs[v] } else { &self.in_arcs[v] };
                for &a in arcs {
                    let u = if forward { self.head(a) } else { self.tail(a) };
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}
