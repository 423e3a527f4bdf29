//! CPLEX-LP models of the MTR and vMTR design problems for the diamond.
//! Solve them with `python3 scripts/solve_lp.py <file>` (needs `highspy`).

use topoforge::ilp::{export_mtr_ilp, export_vmtr_ilp, IlpConfig};
use topoforge::instance::InstanceSpec;

fn main() -> topoforge::Result<()> {
    let inst = InstanceSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/diamond.json"))?;
    let mtr = export_mtr_ilp(&inst, &IlpConfig::default())?;
    println!("MTR variables {:?}", mtr.variables);
    println!("MTR rows      {:?}", mtr.constraints);

    let cfg = IlpConfig {
        t_real_max: Some(1),
        ..IlpConfig::default()
    };
    let vmtr = export_vmtr_ilp(&inst, &cfg)?;
    let out = std::env::temp_dir().join("diamond_vmtr.lp");
    std::fs::write(&out, &vmtr.text)?;
    println!("vMTR model written to {}", out.display());
    print!("{}", vmtr.text.lines().take(6).map(|l| format!("{l}\n")).collect::<String>());
    Ok(())
}
