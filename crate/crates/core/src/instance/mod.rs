//! Instances: SNDlib ingestion, metric derivation, demand generation and
//! synthetic random geometric networks.

mod demands;
mod derive;
mod sndlib;

use std::path::Path as FsPath;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use demands::{generate_demands, BoundsMode};
pub use derive::{additive_loss, default_kappa, derive_metrics, loss_probabilities, DistanceMode};
pub use sndlib::{parse_sndlib, write_sndlib};

use crate::error::{Error, Result};
use crate::metrics::{Demand, MetricSet};
use crate::network::{Arc, Network, Node};

/// Capacities drawn for synthetic links.
pub const SYNTH_CAPACITIES: [f64; 3] = [10.0, 40.0, 100.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// SNDlib network name, or `synthetic`.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub kappa: f64,
    pub epsilon_b: f64,
    pub distance_mode: DistanceMode,
    pub bounds: BoundsMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub network: Network,
    pub metrics: MetricSet,
    pub demands: Vec<Demand>,
    pub provenance: Provenance,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        self.metrics.check_network(&self.network)?;
        for k in &self.demands {
            k.validate(&self.network, &self.metrics)?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: InstanceSpec = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Number of distinct demand destinations.
    pub fn destination_count(&self) -> usize {
        let mut d: Vec<usize> = self.demands.iter().map(|k| k.dst).collect();
        d.sort_unstable();
        d.dedup();
        d.len()
    }
}

/// Knobs of the instance construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceParams {
    /// Loss constant; `None` picks [`default_kappa`].
    pub kappa: Option<f64>,
    pub epsilon_b: f64,
    /// `None` detects the mode from the coordinates.
    pub distance_mode: Option<DistanceMode>,
    pub bounds: BoundsMode,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            kappa: None,
            epsilon_b: 0.05,
            distance_mode: None,
            bounds: BoundsMode::Cross,
        }
    }
}

/// Derives metrics and demands for `net`.
pub fn build_instance(net: Network, source: &str, seed: Option<u64>, params: &InstanceParams) -> Result<InstanceSpec> {
    if !(params.epsilon_b > 0.0 && params.epsilon_b < 1.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon_b must lie in (0, 1), got {}",
            params.epsilon_b
        )));
    }
    let kappa = params.kappa.unwrap_or_else(|| default_kappa(&net));
    let mode = params.distance_mode.unwrap_or_else(|| DistanceMode::detect(&net));
    let metrics = derive_metrics(&net, kappa, mode)?;
    let demands = generate_demands(&net, &metrics, params.epsilon_b, params.bounds);
    Ok(InstanceSpec {
        network: net,
        metrics,
        demands,
        provenance: Provenance {
            source: source.to_string(),
            seed,
            kappa,
            epsilon_b: params.epsilon_b,
            distance_mode: mode,
            bounds: params.bounds,
        },
    })
}

/// Instance from an SNDlib native file; the network name comes from the
/// `# network <name>` comment when present.
pub fn sndlib_instance(text: &str, params: &InstanceParams) -> Result<InstanceSpec> {
    let net = parse_sndlib(text)?;
    let name = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("# network "))
        .map(str::trim)
        .unwrap_or("sndlib");
    build_instance(net, name, None, params)
}

/// Random geometric network: `n` nodes uniform in the unit square, a link
/// between every pair closer than `density·√2`, capacities drawn from
/// [`SYNTH_CAPACITIES`].
pub fn synth_network(n: usize, density: f64, seed: u64) -> Result<Network> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("synthetic instances need n >= 4, got {n}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidInput(format!("density must lie in (0, 1], got {density}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<Node> = (0..n)
        .map(|id| Node {
            id,
            x: rng.gen(),
            y: rng.gen(),
            name: None,
        })
        .collect();
    let radius = density * std::f64::consts::SQRT_2;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = DistanceMode::Euclidean.distance(&nodes[i], &nodes[j]);
            if d <= radius {
                let capacity = SYNTH_CAPACITIES[rng.gen_range(0..SYNTH_CAPACITIES.len())];
                for (tail, head) in [(i, j), (j, i)] {
                    arcs.push(Arc {
                        id: arcs.len(),
                        tail,
                        head,
                        capacity,
                    });
                }
            }
        }
    }
    let net = Network::new(nodes, arcs)?;
    if !net.is_strongly_connected() {
        return Err(Error::Disconnected);
    }
    Ok(net)
}

pub fn synth_instance(n: usize, density: f64, seed: u64) -> Result<InstanceSpec> {
    synth_instance_with(n, density, seed, &InstanceParams::default())
}

pub fn synth_instance_with(n: usize, density: f64, seed: u64, params: &InstanceParams) -> Result<InstanceSpec> {
    let net = synth_network(n, density, seed)?;
    let params = InstanceParams {
        distance_mode: Some(params.distance_mode.unwrap_or(DistanceMode::Euclidean)),
        ..*params
    };
    build_instance(net, "synthetic", Some(seed), &params)
}
