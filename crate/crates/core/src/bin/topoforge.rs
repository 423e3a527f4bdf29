use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use topoforge::eval::{evaluate_plan, load_suite, run_experiment, ExperimentConfig, RESULTS_COLUMNS};
use topoforge::ilp::{export_mtr_ilp, export_vmtr_ilp, IlpConfig};
use topoforge::instance::{
    sndlib_instance, synth_instance_with, BoundsMode, DistanceMode, InstanceParams, InstanceSpec,
};
use topoforge::mtr::{greedy_mtr, DownMove, FallbackWeights, SearchConfig};
use topoforge::parallel::with_env_threads;
use topoforge::plan::DesignPlan;
use topoforge::vmtr::{design_vmtr, LambdaPlacement, VmtrConfig};

#[derive(Parser)]
#[command(name = "topoforge", version, about = "Topology design for MTR and virtual MTR")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Distance {
    Auto,
    Euclidean,
    Haversine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bounds {
    Cross,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Placement {
    Max,
    Midpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Down {
    Subtract,
    LiteralAdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fallback {
    Saturate,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum IlpMode {
    Mtr,
    Vmtr,
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Loss constant (default: 2.5% loss on the smallest capacity)
    #[arg(long)]
    kappa: Option<f64>,
    /// Relative bound tightening
    #[arg(long, default_value_t = 0.05)]
    epsilon_b: f64,
    #[arg(long, value_enum, default_value_t = Bounds::Cross)]
    bounds: Bounds,
    #[arg(long, value_enum, default_value_t = Distance::Auto)]
    distance_mode: Distance,
}

impl InstanceArgs {
    fn params(&self) -> InstanceParams {
        InstanceParams {
            kappa: self.kappa,
            epsilon_b: self.epsilon_b,
            distance_mode: match self.distance_mode {
                Distance::Auto => None,
                Distance::Euclidean => Some(DistanceMode::Euclidean),
                Distance::Haversine => Some(DistanceMode::Haversine),
            },
            bounds: match self.bounds {
                Bounds::Cross => BoundsMode::Cross,
                Bounds::Literal => BoundsMode::Literal,
            },
        }
    }
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    max_ite: usize,
    #[arg(long, value_enum, default_value_t = Down::Subtract)]
    down_move: Down,
    #[arg(long, value_enum, default_value_t = Fallback::Saturate)]
    fallback_weights: Fallback,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            rng_seed: self.seed,
            max_iterations: self.max_ite,
            down_move: match self.down_move {
                Down::Subtract => DownMove::Subtract,
                Down::LiteralAdd => DownMove::LiteralAdd,
            },
            fallback_weights: match self.fallback_weights {
                Fallback::Saturate => FallbackWeights::Saturate,
                Fallback::Random => FallbackWeights::Random,
            },
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance from an SNDlib native file or a random geometric graph
    GenInstance {
        #[arg(long, conflicts_with = "synthetic", required_unless_present = "synthetic")]
        sndlib: Option<PathBuf>,
        /// Node count of a synthetic instance
        #[arg(long)]
        synthetic: Option<usize>,
        /// Link radius of a synthetic instance, as a fraction of the square's diagonal
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Design real topologies by greedy local search
    DesignMtr {
        instance: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Design virtual topologies, with real topologies for the rest
    DesignVmtr {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Placement::Max)]
        lambda_placement: Placement,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the topology design ILP in CPLEX-LP format
    ExportIlp {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = IlpMode::Mtr)]
        mode: IlpMode,
        /// Topology budget (virtual topologies in vmtr mode); default: the heuristic count
        #[arg(long)]
        tbar_max: Option<usize>,
        /// Real topology budget in vmtr mode; default: the heuristic count
        #[arg(long)]
        treal_max: Option<usize>,
        #[arg(long)]
        big_m: Option<f64>,
        #[arg(long, default_value_t = 1000.0)]
        penalty_real: f64,
        /// Emit the activation constraint as sum_k y <= z
        #[arg(long)]
        literal_ct3: bool,
        /// Skip the heuristic run that checks the budget
        #[arg(long)]
        no_hint: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-route every demand of a plan and report counts and robustness
    Evaluate {
        instance: PathBuf,
        plan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run MTR and vMTR on every instance of a directory for several seeds
    Bench {
        #[arg(long)]
        suite: PathBuf,
        /// Seeds as `a..b` (inclusive), a comma list, or a single value
        #[arg(long, default_value = "1..5", value_parser = parse_seeds)]
        seeds: Seeds,
        #[arg(long, value_enum, default_value_t = Placement::Max)]
        lambda_placement: Placement,
        #[arg(long, default_value_t = 50)]
        max_ite: usize,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone)]
struct Seeds(Vec<u64>);

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| format!("bad seed `{a}`"))?;
        let b: u64 = b.trim().parse().map_err(|_| format!("bad seed `{b}`"))?;
        if a > b {
            return Err(format!("empty seed range `{s}`"));
        }
        return Ok(Seeds((a..=b).collect()));
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad seed `{t}`")))
        .collect::<Result<_, _>>()
        .map(Seeds)
}

fn placement(p: Placement) -> LambdaPlacement {
    match p {
        Placement::Max => LambdaPlacement::Max,
        Placement::Midpoint => LambdaPlacement::Midpoint,
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<InstanceSpec> {
    InstanceSpec::load(path).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenInstance {
            sndlib,
            synthetic,
            density,
            seed,
            instance,
            output,
        } => {
            let params = instance.params();
            let inst = match (sndlib, synthetic) {
                (Some(path), _) => sndlib_instance(&fs::read_to_string(&path)?, &params)?,
                (None, Some(n)) => synth_instance_with(n, density, seed, &params)?,
                (None, None) => bail!("pass --sndlib FILE or --synthetic N"),
            };
            eprintln!(
                "{} nodes, {} arcs, {} demands",
                inst.network.node_count(),
                inst.network.arc_count(),
                inst.demands.len()
            );
            emit(output.as_deref(), &inst.to_json()?)
        }
        Command::DesignMtr {
            instance,
            search,
            output,
        } => {
            let inst = load(&instance)?;
            let topologies = greedy_mtr(&inst.network, &inst.metrics, &inst.demands, &search.config())?;
            eprintln!("{} real topologies", topologies.len());
            emit(output.as_deref(), &DesignPlan::from_mtr(&topologies).to_json()?)
        }
        Command::DesignVmtr {
            instance,
            lambda_placement,
            search,
            output,
        } => {
            let inst = load(&instance)?;
            let cfg = VmtrConfig {
                placement: placement(lambda_placement),
                mtr: search.config(),
            };
            let plan = design_vmtr(&inst.network, &inst.metrics, &inst.demands, &cfg)?;
            eprintln!(
                "{} virtual and {} real topologies",
                plan.virtual_topologies.len(),
                plan.real.len()
            );
            emit(output.as_deref(), &DesignPlan::from_vmtr(&plan).to_json()?)
        }
        Command::ExportIlp {
            instance,
            mode,
            tbar_max,
            treal_max,
            big_m,
            penalty_real,
            literal_ct3,
            no_hint,
            output,
        } => {
            let inst = load(&instance)?;
            let heuristic = if no_hint && tbar_max.is_some() {
                None
            } else {
                let search = SearchConfig::default();
                Some(match mode {
                    IlpMode::Mtr => (greedy_mtr(&inst.network, &inst.metrics, &inst.demands, &search)?.len(), 0),
                    IlpMode::Vmtr => {
                        let cfg = VmtrConfig {
                            mtr: search,
                            ..VmtrConfig::default()
                        };
                        let plan = design_vmtr(&inst.network, &inst.metrics, &inst.demands, &cfg)?;
                        (plan.virtual_topologies.len(), plan.real.len())
                    }
                })
            };
            let hint = heuristic.map(|(main, _)| main.max(1));
            let cfg = IlpConfig {
                t_bar_max: tbar_max.or(hint).unwrap_or(1),
                t_real_max: treal_max.or(heuristic.map(|(_, real)| real)),
                big_m,
                penalty_real,
                literal_ct3,
                topology_hint: if no_hint { None } else { hint },
            };
            let model = match mode {
                IlpMode::Mtr => export_mtr_ilp(&inst, &cfg)?,
                IlpMode::Vmtr => export_vmtr_ilp(&inst, &cfg)?,
            };
            eprintln!("variables: {:?}\nconstraints: {:?}", model.variables, model.constraints);
            emit(output.as_deref(), &model.text)
        }
        Command::Evaluate {
            instance,
            plan,
            output,
        } => {
            let inst = load(&instance)?;
            let plan: DesignPlan = serde_json::from_str(&fs::read_to_string(&plan)?)
                .with_context(|| format!("reading {}", plan.display()))?;
            let ev = evaluate_plan(&inst, &plan)?;
            let id = instance.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(RESULTS_COLUMNS)?;
            w.write_record([
                id.to_string(),
                String::new(),
                ev.method.as_str().to_string(),
                ev.demands.to_string(),
                ev.topologies.to_string(),
                ev.virtual_topologies.to_string(),
                ev.real_topologies.to_string(),
                ev.avg_demands_per_topology.to_string(),
                opt(ev.avg_demands_per_virtual),
                opt(ev.avg_demands_per_real),
                ev.discarded_to_mtr.to_string(),
                ev.mean_robustness(0).to_string(),
                ev.mean_robustness(1).to_string(),
                "results-v1".to_string(),
            ])?;
            emit(output.as_deref(), &String::from_utf8(w.into_inner()?)?)
        }
        Command::Bench {
            suite,
            seeds,
            lambda_placement,
            max_ite,
            instance,
            output,
        } => {
            let entries = load_suite(&suite, &instance.params())?;
            if entries.is_empty() {
                bail!("no *.json or *.txt instances in {}", suite.display());
            }
            let cfg = ExperimentConfig {
                search: SearchConfig {
                    max_iterations: max_ite,
                    ..SearchConfig::default()
                },
                vmtr: VmtrConfig {
                    placement: placement(lambda_placement),
                    ..VmtrConfig::default()
                },
            };
            let summary = run_experiment(&entries, &seeds.0, &cfg, &output)?;
            eprintln!(
                "{} runs written to {}, {} failed",
                summary.runs.len(),
                output.display(),
                summary.errors.len()
            );
            if !summary.errors.is_empty() {
                bail!("{} runs failed; see results.json", summary.errors.len());
            }
            Ok(())
        }
    }
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    with_env_threads(|| run(cli))
}
