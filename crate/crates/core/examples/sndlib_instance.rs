//! SNDlib ingestion: metrics from coordinates and capacities, then demands
//! that no single base metric can serve.
//!
//! `cargo run --example sndlib_instance -- path/to/network.txt`

use topoforge::instance::{sndlib_instance, InstanceParams};
use topoforge::metrics::from_fixed;

fn main() -> topoforge::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/abilene-style.txt").into());
    let inst = sndlib_instance(&std::fs::read_to_string(path)?, &InstanceParams::default())?;
    let p = &inst.provenance;
    println!(
        "{}: {} nodes, {} arcs, κ = {}, {:?} distances",
        p.source,
        inst.network.node_count(),
        inst.network.arc_count(),
        p.kappa,
        p.distance_mode
    );
    for k in inst.demands.iter().take(5) {
        let name = |v: usize| inst.network.nodes()[v].name.clone().unwrap_or_else(|| v.to_string());
        println!(
            "{} → {}: delay ≤ {:.1} km, loss ≤ {:.5}",
            name(k.src),
            name(k.dst),
            from_fixed(k.bounds[0]),
            from_fixed(k.bounds[1])
        );
    }
    println!("{} demands in total", inst.demands.len());
    Ok(())
}
