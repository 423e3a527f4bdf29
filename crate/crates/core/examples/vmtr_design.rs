//! Feasible multiplier intervals, their minimum cover, and the resulting
//! virtual topologies.

use topoforge::eval::evaluate_plan;
use topoforge::instance::synth_instance;
use topoforge::metrics::multiplier_to_f64;
use topoforge::plan::DesignPlan;
use topoforge::vmtr::{design_vmtr, feasible_interval, min_multiplier_cover, VmtrConfig};

fn main() -> topoforge::Result<()> {
    let inst = synth_instance(10, 0.45, 1)?;
    let (net, ms) = (&inst.network, &inst.metrics);

    let mut intervals = Vec::new();
    for k in &inst.demands {
        if let Some(iv) = feasible_interval(net, ms, k)? {
            intervals.push(iv);
        }
    }
    println!("{} of {} demands have a multiplier interval", intervals.len(), inst.demands.len());
    for s in min_multiplier_cover(&intervals) {
        println!("stab λ = {:.4} covers {:?}", multiplier_to_f64(&s.lambda), s.demands);
    }

    let plan = design_vmtr(net, ms, &inst.demands, &VmtrConfig::default())?;
    for v in &plan.virtual_topologies {
        println!("virtual λ = {:.6}: {} demands", multiplier_to_f64(&v.lambda), v.assigned.len());
    }
    println!("{} real topologies for {:?}", plan.real.len(), plan.discarded_to_mtr);

    let ev = evaluate_plan(&inst, &DesignPlan::from_vmtr(&plan))?;
    println!("mean robustness: delay {:.3}, loss {:.3}", ev.mean_robustness(0), ev.mean_robustness(1));
    Ok(())
}
