//! Shortest-path trees, tie enumeration and hop-by-hop routes on a diamond
//! whose two branches have equal weight.

use topoforge::graph::{all_shortest_paths, lowest_common_ancestor, route_for_demand, shortest_path_tree};
use topoforge::Network;

fn main() -> topoforge::Result<()> {
    // 0→1→3 and 0→2→3 both weigh 3; 0→3 directly weighs 4
    let net = Network::from_arcs(4, &[(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)])?;
    let w = [1u64, 2, 2, 1, 4];

    let tree = shortest_path_tree(&net, &w, 0);
    println!("distances from 0: {:?}", tree.dist);
    println!("parent arcs:      {:?}", tree.parent_arc);
    println!("lca(1, 3) = {}", lowest_common_ancestor(&net, &tree, 1, 3)?);

    for p in all_shortest_paths(&net, &w, 0, 3, 10)? {
        println!("shortest 0→3: arcs {:?}, nodes {:?}", p.arcs, p.nodes(&net));
    }
    let route = route_for_demand(&net, &w, 0, 3)?;
    println!("hop-by-hop route 0→3: arcs {:?}", route.arcs);
    Ok(())
}
