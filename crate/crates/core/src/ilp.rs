//! CPLEX-LP export of the topology design ILPs. Variable and constraint
//! naming is described in `docs/ilp.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::InstanceSpec;
use crate::metrics::from_fixed;
use crate::mtr::MAX_WEIGHT;

/// Longest emitted line; longer expressions continue on the next line.
const LINE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IlpConfig {
    /// Number of designed topologies (virtual ones in the vMTR model).
    pub t_bar_max: usize,
    /// Real topologies available to the vMTR model; defaults to `t_bar_max`.
    pub t_real_max: Option<usize>,
    /// Big-M of the weight/potential coupling; defaults to `|V|·65536`.
    pub big_m: Option<f64>,
    /// Objective coefficient of real topologies in the vMTR model.
    pub penalty_real: f64,
    /// Emit the activation link as `Σ_k y ≤ z` instead of `Σ_k y ≤ |K|·z`.
    pub literal_ct3: bool,
    /// Topology count of a heuristic plan; a smaller budget is rejected.
    pub topology_hint: Option<usize>,
}

impl Default for IlpConfig {
    fn default() -> Self {
        IlpConfig {
            t_bar_max: 1,
            t_real_max: None,
            big_m: None,
            penalty_real: 1000.0,
            literal_ct3: false,
            topology_hint: None,
        }
    }
}

/// Emitted LP text and per-family tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct IlpModel {
    pub text: String,
    /// Variables per family (`x`, `u`, `y`, `z`, `w`, `pi`, `lambda`).
    pub variables: BTreeMap<&'static str, usize>,
    /// Constraints per family (`c3` .. `c12`).
    pub constraints: BTreeMap<&'static str, usize>,
}

struct LpWriter {
    out: String,
    constraints: BTreeMap<&'static str, usize>,
}

fn term(coef: f64, var: &str) -> String {
    if coef == 1.0 {
        format!("+ {var}")
    } else if coef == -1.0 {
        format!("- {var}")
    } else if coef < 0.0 {
        format!("- {} {var}", -coef)
    } else {
        format!("+ {coef} {var}")
    }
}

impl LpWriter {
    fn expr(&mut self, head: &str, terms: &[String], tail: &str) {
        let mut line = format!(" {head}");
        for t in terms.iter().map(String::as_str).chain([tail]) {
            if t.is_empty() {
                continue;
            }
            if line.len() + t.len() + 1 > LINE_LIMIT {
                self.out.push_str(&line);
                self.out.push('\n');
                line = String::from("   ");
            }
            line.push(' ');
            line.push_str(t);
        }
        self.out.push_str(&line);
        self.out.push('\n');
    }

    fn constraint(&mut self, family: &'static str, name: String, terms: &[String], rhs: &str) {
        *self.constraints.entry(family).or_default() += 1;
        if terms.is_empty() {
            // e.g. a node without outgoing arcs; keeps the row tallies closed-form
            self.expr(&format!("{name}:"), &[format!("0 {}", z(0))], rhs);
        } else {
            self.expr(&format!("{name}:"), terms, rhs);
        }
    }
}

struct Dims {
    nodes: usize,
    arcs: usize,
    demands: usize,
    destinations: Vec<usize>,
    metrics: usize,
    virtual_count: usize,
    topologies: usize,
}

fn x(a: usize, k: usize, t: usize) -> String {
    format!("x_a{a}_k{k}_t{t}")
}
fn u(a: usize, d: usize, t: usize) -> String {
    format!("u_a{a}_d{d}_t{t}")
}
fn y(k: usize, t: usize) -> String {
    format!("y_k{k}_t{t}")
}
fn z(t: usize) -> String {
    format!("z_t{t}")
}
fn w(a: usize, t: usize) -> String {
    format!("w_a{a}_t{t}")
}
fn pi(v: usize, d: usize, t: usize) -> String {
    format!("pi_v{v}_d{d}_t{t}")
}
fn lambda(q: usize, t: usize) -> String {
    format!("lambda_q{q}_t{t}")
}

/// MTR model: minimize the number of active topologies.
pub fn export_mtr_ilp(inst: &InstanceSpec, cfg: &IlpConfig) -> Result<IlpModel> {
    export(inst, cfg, false)
}

/// vMTR model: topologies `0..t_bar_max` are virtual with weights tied to
/// the base metrics by multipliers, the rest are real and penalized.
pub fn export_vmtr_ilp(inst: &InstanceSpec, cfg: &IlpConfig) -> Result<IlpModel> {
    export(inst, cfg, true)
}

fn export(inst: &InstanceSpec, cfg: &IlpConfig, virtual_model: bool) -> Result<IlpModel> {
    inst.validate()?;
    if cfg.t_bar_max == 0 {
        return Err(Error::InvalidInput("the topology budget must be at least 1".into()));
    }
    if let Some(hint) = cfg.topology_hint {
        if cfg.t_bar_max < hint {
            return Err(Error::BudgetTooSmall {
                budget: cfg.t_bar_max,
                hint,
            });
        }
    }
    let net = &inst.network;
    let n = net.node_count();
    let big_m = cfg.big_m.unwrap_or(n as f64 * (MAX_WEIGHT + 1) as f64);
    if big_m <= n as f64 * MAX_WEIGHT as f64 {
        return Err(Error::InvalidInput(format!(
            "big_m must exceed |V|·{MAX_WEIGHT} = {}",
            n as f64 * MAX_WEIGHT as f64
        )));
    }
    let mut destinations: Vec<usize> = inst.demands.iter().map(|k| k.dst).collect();
    destinations.sort_unstable();
    destinations.dedup();
    let virtual_count = if virtual_model { cfg.t_bar_max } else { 0 };
    let real_count = if virtual_model {
        cfg.t_real_max.unwrap_or(cfg.t_bar_max)
    } else {
        cfg.t_bar_max
    };
    let dims = Dims {
        nodes: n,
        arcs: net.arc_count(),
        demands: inst.demands.len(),
        destinations,
        metrics: inst.metrics.len(),
        virtual_count,
        topologies: virtual_count + real_count,
    };
    let topos = 0..dims.topologies;

    let mut lp = LpWriter {
        out: String::new(),
        constraints: BTreeMap::new(),
    };
    let _ = writeln!(
        lp.out,
        "\\ {} topology design: {} nodes, {} arcs, {} demands, {} topologies",
        if virtual_model { "vMTR" } else { "MTR" },
        dims.nodes,
        dims.arcs,
        dims.demands,
        dims.topologies
    );
    lp.out.push_str("Minimize\n");
    let objective: Vec<String> = topos
        .clone()
        .map(|t| {
            let c = if t < dims.virtual_count || !virtual_model { 1.0 } else { cfg.penalty_real };
            term(c, &z(t))
        })
        .collect();
    lp.expr("obj:", &objective, "");
    lp.out.push_str("Subject To\n");

    // (3) activation
    let ct3 = if cfg.literal_ct3 { 1.0 } else { dims.demands.max(1) as f64 };
    for t in topos.clone() {
        let mut terms: Vec<String> = (0..dims.demands).map(|k| term(1.0, &y(k, t))).collect();
        terms.push(term(-ct3, &z(t)));
        lp.constraint("c3", format!("c3_t{t}"), &terms, "<= 0");
    }
    // (4) assignment
    for k in 0..dims.demands {
        let terms: Vec<String> = topos.clone().map(|t| term(1.0, &y(k, t))).collect();
        lp.constraint("c4", format!("c4_k{k}"), &terms, ">= 1");
    }
    // (5) flow conservation
    for t in topos.clone() {
        for (k, dem) in inst.demands.iter().enumerate() {
            for v in 0..n {
                let mut terms: Vec<String> = net.out_arcs(v).iter().map(|&a| term(1.0, &x(a, k, t))).collect();
                terms.extend(net.in_arcs(v).iter().map(|&a| term(-1.0, &x(a, k, t))));
                if v == dem.src {
                    terms.push(term(-1.0, &y(k, t)));
                } else if v == dem.dst {
                    terms.push(term(1.0, &y(k, t)));
                }
                lp.constraint("c5", format!("c5_v{v}_k{k}_t{t}"), &terms, "= 0");
            }
        }
    }
    // (6) routing follows the tree
    for t in topos.clone() {
        for (k, dem) in inst.demands.iter().enumerate() {
            for a in 0..dims.arcs {
                let terms = [term(1.0, &x(a, k, t)), term(-1.0, &u(a, dem.dst, t))];
                lp.constraint("c6", format!("c6_a{a}_k{k}_t{t}"), &terms, "<= 0");
            }
        }
    }
    for t in topos.clone() {
        for &d in &dims.destinations {
            // (7) one next hop per node
            for v in 0..n {
                let terms: Vec<String> = net.out_arcs(v).iter().map(|&a| term(1.0, &u(a, d, t))).collect();
                lp.constraint("c7", format!("c7_v{v}_d{d}_t{t}"), &terms, "<= 1");
            }
            for a in 0..dims.arcs {
                let (tail, head) = (net.tail(a), net.head(a));
                // (8) tree arcs carry some demand
                let mut terms = vec![term(1.0, &u(a, d, t))];
                terms.extend(
                    inst.demands
                        .iter()
                        .enumerate()
                        .filter(|(_, k)| k.dst == d)
                        .map(|(k, _)| term(-1.0, &x(a, k, t))),
                );
                lp.constraint("c8", format!("c8_a{a}_d{d}_t{t}"), &terms, "<= 0");
                // (9), (10) potentials follow the weights
                let reduced = [term(1.0, &w(a, t)), term(-1.0, &pi(tail, d, t)), term(1.0, &pi(head, d, t))];
                let mut terms = reduced.to_vec();
                terms.push(term(1.0, &u(a, d, t)));
                lp.constraint("c9", format!("c9_a{a}_d{d}_t{t}"), &terms, ">= 1");
                let mut terms = reduced.to_vec();
                terms.push(term(big_m, &u(a, d, t)));
                lp.constraint("c10", format!("c10_a{a}_d{d}_t{t}"), &terms, &format!("<= {big_m}"));
            }
        }
    }
    // (11) resource bounds on the assigned path
    for t in topos.clone() {
        for (k, dem) in inst.demands.iter().enumerate() {
            for q in 0..dims.metrics {
                let terms: Vec<String> = (0..dims.arcs)
                    .filter(|&a| inst.metrics.value(q, a) > 0)
                    .map(|a| term(from_fixed(inst.metrics.value(q, a)), &x(a, k, t)))
                    .collect();
                lp.constraint("c11", format!("c11_k{k}_q{q}_t{t}"), &terms, &format!("<= {}", from_fixed(dem.bounds[q])));
            }
        }
    }
    // (12) virtual weights combine the base metrics
    for t in 0..dims.virtual_count {
        for a in 0..dims.arcs {
            let mut terms = vec![term(1.0, &w(a, t))];
            terms.extend(
                (0..dims.metrics)
                    .filter(|&q| inst.metrics.value(q, a) > 0)
                    .map(|q| term(-from_fixed(inst.metrics.value(q, a)), &lambda(q, t))),
            );
            lp.constraint("c12", format!("c12_a{a}_t{t}"), &terms, "= 0");
        }
    }

    let mut variables: BTreeMap<&'static str, usize> = BTreeMap::new();
    lp.out.push_str("Bounds\n");
    for t in topos.clone() {
        for a in 0..dims.arcs {
            let _ = writeln!(lp.out, " 0 <= {} <= {MAX_WEIGHT}", w(a, t));
        }
    }
    variables.insert("w", dims.arcs * dims.topologies);
    variables.insert("pi", n * dims.destinations.len() * dims.topologies);
    variables.insert("lambda", dims.metrics * dims.virtual_count);

    lp.out.push_str("Binaries\n");
    let mut binaries = Vec::new();
    for t in topos.clone() {
        for k in 0..dims.demands {
            binaries.extend((0..dims.arcs).map(|a| x(a, k, t)));
        }
    }
    variables.insert("x", binaries.len());
    let before = binaries.len();
    for t in topos.clone() {
        for &d in &dims.destinations {
            binaries.extend((0..dims.arcs).map(|a| u(a, d, t)));
        }
    }
    variables.insert("u", binaries.len() - before);
    let before = binaries.len();
    for t in topos.clone() {
        binaries.extend((0..dims.demands).map(|k| y(k, t)));
    }
    variables.insert("y", binaries.len() - before);
    binaries.extend(topos.clone().map(z));
    variables.insert("z", dims.topologies);
    for chunk in binaries.chunks(8) {
        let _ = writeln!(lp.out, " {}", chunk.join(" "));
    }
    lp.out.push_str("End\n");

    Ok(IlpModel {
        text: lp.out,
        variables,
        constraints: lp.constraints,
    })
}
