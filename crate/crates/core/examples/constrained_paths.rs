//! Exact, Lagrangian and k-path solvers for one delay/loss-bounded demand.

use topoforge::csp::{consumption, exact_csp, larac, tamcra, DEFAULT_K_PATHS};
use topoforge::instance::InstanceSpec;
use topoforge::metrics::from_fixed;

fn main() -> topoforge::Result<()> {
    let inst = InstanceSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/diamond.json"))?;
    let (net, ms, k) = (&inst.network, &inst.metrics, &inst.demands[0]);
    let natural = |v: &[u64]| v.iter().map(|&x| from_fixed(x)).collect::<Vec<_>>();
    println!("demand {} → {} with bounds {:?}", k.src, k.dst, natural(&k.bounds));

    if let Some(p) = exact_csp(net, ms, k) {
        println!("exact:  arcs {:?}, consumption {:?}", p.arcs, natural(&consumption(ms, &p)));
    }
    if let Some(p) = tamcra(net, ms, k, DEFAULT_K_PATHS) {
        println!("TAMCRA: arcs {:?}", p.arcs);
    }
    // minimize delay under the loss bound, then loss under the delay bound
    let delay_first = larac(net, ms, 0, 1, k.bounds[1], k.src, k.dst)?;
    let loss_first = larac(net, ms, 1, 0, k.bounds[0], k.src, k.dst)?;
    println!(
        "LARAC multipliers: {:?} and {:?}",
        delay_first.lambda_star.map(|l| l.to_string()),
        loss_first.lambda_star.map(|l| l.to_string())
    );
    Ok(())
}
