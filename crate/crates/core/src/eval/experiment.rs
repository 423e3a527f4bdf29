use std::fs;
use std::io::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{evaluate_plan, PlanEvaluation};
use crate::error::{Error, Result};
use crate::instance::{sndlib_instance, InstanceParams, InstanceSpec};
use crate::mtr::{greedy_mtr, SearchConfig};
use crate::plan::{DesignPlan, Method};
use crate::vmtr::{design_vmtr_timed, VmtrConfig, VmtrTimings};

/// Header of `results.csv`. Bump the version suffix when columns change.
pub const RESULTS_COLUMNS: [&str; 14] = [
    "instance",
    "seed",
    "method",
    "demands",
    "topologies",
    "virtual_topologies",
    "real_topologies",
    "avg_demands_per_topology",
    "avg_demands_per_virtual",
    "avg_demands_per_real",
    "discarded_to_mtr",
    "mean_robustness_0",
    "mean_robustness_1",
    "schema",
];
const SCHEMA: &str = "results-v1";

/// Header of `timings.csv`; wall-clock seconds per phase.
pub const TIMINGS_COLUMNS: [&str; 7] = [
    "instance",
    "seed",
    "method",
    "total_s",
    "intervals_s",
    "cover_s",
    "mtr_fallback_s",
];

#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub id: String,
    pub instance: InstanceSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Local search settings; `rng_seed` is replaced by each run's seed.
    pub search: SearchConfig,
    pub vmtr: VmtrConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunError {
    pub instance: String,
    pub seed: u64,
    pub method: Method,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub instance: String,
    pub seed: u64,
    pub evaluation: PlanEvaluation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub runs: Vec<RunResult>,
    pub errors: Vec<RunError>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a ExperimentConfig,
    seeds: &'a [u64],
    instances: Vec<ManifestInstance>,
    results_csv_sha256: String,
}

#[derive(Serialize)]
struct ManifestInstance {
    id: String,
    sha256: String,
}

struct Timed {
    plan: DesignPlan,
    total: f64,
    phases: Option<VmtrTimings>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &FsPath, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(FsPath::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn design(inst: &InstanceSpec, seed: u64, method: Method, cfg: &ExperimentConfig) -> Result<Timed> {
    let search = SearchConfig {
        rng_seed: seed,
        ..cfg.search.clone()
    };
    let started = Instant::now();
    match method {
        Method::Mtr => {
            let topologies = greedy_mtr(&inst.network, &inst.metrics, &inst.demands, &search)?;
            Ok(Timed {
                plan: DesignPlan::from_mtr(&topologies),
                total: started.elapsed().as_secs_f64(),
                phases: None,
            })
        }
        Method::Vmtr => {
            let vcfg = VmtrConfig {
                mtr: search,
                ..cfg.vmtr.clone()
            };
            let (plan, phases) = design_vmtr_timed(&inst.network, &inst.metrics, &inst.demands, &vcfg)?;
            Ok(Timed {
                plan: DesignPlan::from_vmtr(&plan),
                total: started.elapsed().as_secs_f64(),
                phases: Some(phases),
            })
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Runs MTR and vMTR on every `(instance, seed)` pair and writes
/// `results.csv`, `timings.csv`, `robustness.csv`, `results.json`,
/// `manifest.json` and one plan file per run into `out_dir`.
///
/// A failing run is recorded in `results.json` and the summary; the other
/// runs are still written. Everything except `timings.csv` is
/// byte-identical across reruns.
pub fn run_experiment(
    suite: &[SuiteEntry],
    seeds: &[u64],
    cfg: &ExperimentConfig,
    out_dir: &FsPath,
) -> Result<ExperimentSummary> {
    fs::create_dir_all(out_dir.join("plans"))?;
    let jobs: Vec<(&SuiteEntry, u64, Method)> = suite
        .iter()
        .flat_map(|e| {
            seeds
                .iter()
                .flat_map(move |&s| [Method::Mtr, Method::Vmtr].map(|m| (e, s, m)))
        })
        .collect();
    let outcomes: Vec<Result<(Timed, PlanEvaluation)>> = jobs
        .par_iter()
        .map(|(e, seed, method)| {
            let timed = design(&e.instance, *seed, *method, cfg)?;
            let evaluation = evaluate_plan(&e.instance, &timed.plan)?;
            Ok((timed, evaluation))
        })
        .collect();

    let mut results = csv::Writer::from_writer(Vec::new());
    results.write_record(RESULTS_COLUMNS)?;
    let mut timings = csv::Writer::from_writer(Vec::new());
    timings.write_record(TIMINGS_COLUMNS)?;
    let mut robustness = csv::Writer::from_writer(Vec::new());
    robustness.write_record(["instance", "seed", "method", "demand", "topology", "metric", "ratio"])?;
    let mut summary = ExperimentSummary {
        runs: Vec::new(),
        errors: Vec::new(),
    };

    for ((entry, seed, method), outcome) in jobs.iter().zip(outcomes) {
        let (id, seed, method) = (entry.id.as_str(), *seed, *method);
        let (timed, ev) = match outcome {
            Ok(x) => x,
            Err(e) => {
                log::error!("{id} seed {seed} {}: {e}", method.as_str());
                summary.errors.push(RunError {
                    instance: id.to_string(),
                    seed,
                    method,
                    error: e.to_string(),
                });
                continue;
            }
        };
        let plan_path = out_dir
            .join("plans")
            .join(format!("{id}_{}_s{seed}.json", method.as_str()));
        write_atomic(&plan_path, timed.plan.to_json()?.as_bytes())?;

        let names = entry.instance.metrics.names();
        results.write_record([
            id.to_string(),
            seed.to_string(),
            method.as_str().to_string(),
            ev.demands.to_string(),
            ev.topologies.to_string(),
            ev.virtual_topologies.to_string(),
            ev.real_topologies.to_string(),
            ev.avg_demands_per_topology.to_string(),
            fmt_opt(ev.avg_demands_per_virtual),
            fmt_opt(ev.avg_demands_per_real),
            ev.discarded_to_mtr.to_string(),
            ev.mean_robustness(0).to_string(),
            ev.mean_robustness(1).to_string(),
            SCHEMA.to_string(),
        ])?;
        let phases = timed.phases.unwrap_or_default();
        timings.write_record([
            id.to_string(),
            seed.to_string(),
            method.as_str().to_string(),
            timed.total.to_string(),
            phases.intervals.as_secs_f64().to_string(),
            phases.cover.as_secs_f64().to_string(),
            phases.mtr_fallback.as_secs_f64().to_string(),
        ])?;
        for r in &ev.robustness {
            for (t, ratio) in r.ratios.iter().enumerate() {
                robustness.write_record([
                    id.to_string(),
                    seed.to_string(),
                    method.as_str().to_string(),
                    r.demand.to_string(),
                    r.topology.to_string(),
                    names[t].clone(),
                    ratio.to_string(),
                ])?;
            }
        }
        summary.runs.push(RunResult {
            instance: id.to_string(),
            seed,
            evaluation: ev,
        });
    }

    let into_bytes = |w: csv::Writer<Vec<u8>>| w.into_inner().map_err(|e| Error::Io(e.into_error()));
    let results = into_bytes(results)?;
    write_atomic(&out_dir.join("results.csv"), &results)?;
    write_atomic(&out_dir.join("timings.csv"), &into_bytes(timings)?)?;
    write_atomic(&out_dir.join("robustness.csv"), &into_bytes(robustness)?)?;
    write_atomic(&out_dir.join("results.json"), serde_json::to_string_pretty(&summary)?.as_bytes())?;

    let instances = suite
        .iter()
        .map(|e| {
            Ok(ManifestInstance {
                id: e.id.clone(),
                sha256: sha256_hex(e.instance.to_json()?.as_bytes()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        seeds,
        instances,
        results_csv_sha256: sha256_hex(&results),
    };
    write_atomic(&out_dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?.as_bytes())?;
    Ok(summary)
}

/// Loads every `*.json` instance and every SNDlib `*.txt` network of `dir`,
/// sorted by file name; the id is the file stem.
pub fn load_suite(dir: &FsPath, params: &InstanceParams) -> Result<Vec<SuiteEntry>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.sort();
    let mut suite = Vec::new();
    for path in files {
        let instance = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => InstanceSpec::load(&path)?,
            Some("txt") => sndlib_instance(&fs::read_to_string(&path)?, params)?,
            _ => continue,
        };
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("instance")
            .to_string();
        suite.push(SuiteEntry { id, instance });
    }
    Ok(suite)
}
