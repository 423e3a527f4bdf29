//! A small MTR vs vMTR comparison written to a directory of CSV/JSON files.
//!
//! `cargo run --release --example experiment -- out/`

use std::path::PathBuf;

use topoforge::eval::{run_experiment, ExperimentConfig, SuiteEntry};
use topoforge::instance::synth_instance;

fn main() -> topoforge::Result<()> {
    let out: PathBuf = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("topoforge-experiment"), PathBuf::from);
    let suite = [(8, 1), (10, 1), (12, 1)]
        .into_iter()
        .map(|(n, seed)| {
            Ok(SuiteEntry {
                id: format!("synth{n}"),
                instance: synth_instance(n, 0.45, seed)?,
            })
        })
        .collect::<topoforge::Result<Vec<_>>>()?;
    let summary = run_experiment(&suite, &[1, 2], &ExperimentConfig::default(), &out)?;
    for r in &summary.runs {
        let e = &r.evaluation;
        println!(
            "{:7} seed {} {:4}: {:2} topologies ({} virtual), robustness {:.3}/{:.3}",
            r.instance,
            r.seed,
            e.method.as_str(),
            e.topologies,
            e.virtual_topologies,
            e.mean_robustness(0),
            e.mean_robustness(1)
        );
    }
    println!("results in {}", out.display());
    Ok(())
}
