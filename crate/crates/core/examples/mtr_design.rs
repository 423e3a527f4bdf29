//! Greedy real-topology design on a random geometric instance.
//!
//! `cargo run --release --example mtr_design -- 12 3`

use topoforge::instance::synth_instance;
use topoforge::mtr::{greedy_mtr, SearchConfig};

fn main() -> topoforge::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(10) as usize;
    let seed = args.next().unwrap_or(1);
    let inst = synth_instance(n, 0.45, seed)?;
    println!("{} nodes, {} arcs, {} demands", n, inst.network.arc_count(), inst.demands.len());

    let cfg = SearchConfig {
        rng_seed: seed,
        ..SearchConfig::default()
    };
    let topologies = greedy_mtr(&inst.network, &inst.metrics, &inst.demands, &cfg)?;
    for (i, t) in topologies.iter().enumerate() {
        println!("topology {i}: {} demands {:?}", t.assigned.len(), t.assigned);
    }
    Ok(())
}
