//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls into the solvers under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use topoforge::graph::Path;
use topoforge::network::{ArcId, NodeId};
use topoforge::{Demand, MetricSet, Network};

/// Random digraph on `2..=max_nodes` nodes with two integer metrics in `0..=20`
/// (zero with probability 1/10).
pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize, arc_prob: f64) -> (Network, MetricSet) {
    let n = rng.gen_range(2..=max_nodes);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(arc_prob) {
                arcs.push((u, v, 1.0));
            }
        }
    }
    let net = Network::from_arcs(n, &arcs).unwrap();
    let draw = |rng: &mut R| -> Vec<u64> {
        (0..arcs.len())
            .map(|_| if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=20) })
            .collect()
    };
    let delay = draw(rng);
    let loss = draw(rng);
    (net, MetricSet::delay_loss(delay, loss).unwrap())
}

/// Random weights in `1..=max` for every arc.
pub fn random_weights<R: Rng>(rng: &mut R, net: &Network, max: u64) -> Vec<u64> {
    (0..net.arc_count()).map(|_| rng.gen_range(1..=max)).collect()
}

/// Random demand between distinct nodes with bounds drawn around the
/// per-metric range over all simple paths, one in ten just below the minimum;
/// `None` when `dst` is unreachable.
pub fn random_demand<R: Rng>(rng: &mut R, net: &Network, ms: &MetricSet, id: usize) -> Option<Demand> {
    let n = net.node_count();
    let src = rng.gen_range(0..n);
    let dst = (src + rng.gen_range(1..n)) % n;
    let paths = simple_paths(net, src, dst);
    if paths.is_empty() {
        return None;
    }
    let sums: Vec<(u64, u64)> = paths.iter().map(|p| sums(ms, p)).collect();
    let bound = |pick: fn(&(u64, u64)) -> u64, rng: &mut R| -> u64 {
        let lo = sums.iter().map(pick).min().unwrap();
        let hi = sums.iter().map(pick).max().unwrap();
        if lo >= 2 && rng.gen_bool(0.1) {
            lo - 1
        } else {
            rng.gen_range(lo..=hi).max(1)
        }
    };
    let b0 = bound(|s| s.0, rng);
    let b1 = bound(|s| s.1, rng);
    Some(Demand::new(id, src, dst, vec![b0, b1]).unwrap())
}

/// Every simple `src → dst` path as an arc list (depth-first).
pub fn simple_paths(net: &Network, src: NodeId, dst: NodeId) -> Vec<Vec<ArcId>> {
    fn go(net: &Network, u: NodeId, dst: NodeId, seen: &mut Vec<bool>, cur: &mut Vec<ArcId>, out: &mut Vec<Vec<ArcId>>) {
        if u == dst {
            out.push(cur.clone());
            return;
        }
        for arc in net.arcs().iter().filter(|a| a.tail == u) {
            if seen[arc.head] {
                continue;
            }
            seen[arc.head] = true;
            cur.push(arc.id);
            go(net, arc.head, dst, seen, cur, out);
            cur.pop();
            seen[arc.head] = false;
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; net.node_count()];
    seen[src] = true;
    go(net, src, dst, &mut seen, &mut Vec::new(), &mut out);
    out
}

pub fn sums(ms: &MetricSet, arcs: &[ArcId]) -> (u64, u64) {
    arcs.iter()
        .fold((0, 0), |(d, l), &a| (d + ms.value(0, a), l + ms.value(1, a)))
}

/// Minimum metric-0 value over simple paths meeting both bounds.
pub fn brute_csp(net: &Network, ms: &MetricSet, k: &Demand) -> Option<u64> {
    simple_paths(net, k.src, k.dst)
        .iter()
        .map(|p| sums(ms, p))
        .filter(|&(d, l)| d <= k.bounds[0] && l <= k.bounds[1])
        .map(|(d, _)| d)
        .min()
}

/// Checks that `p` is a simple `src → dst` walk in `net`.
pub fn is_simple_path(net: &Network, p: &Path) -> bool {
    let mut cur = p.src;
    let mut seen = BTreeSet::from([cur]);
    for &a in &p.arcs {
        let arc = &net.arcs()[a];
        if arc.tail != cur || !seen.insert(arc.head) {
            return false;
        }
        cur = arc.head;
    }
    cur == p.dst
}

/// Bellman-Ford distances from `root`.
pub fn bellman_ford(net: &Network, w: &[u64], root: NodeId) -> Vec<Option<u64>> {
    let mut dist = vec![None; net.node_count()];
    dist[root] = Some(0);
    for _ in 0..net.node_count() {
        for arc in net.arcs() {
            if let Some(d) = dist[arc.tail] {
                let cand = d + w[arc.id];
                if dist[arc.head].is_none_or(|cur| cand < cur) {
                    dist[arc.head] = Some(cand);
                }
            }
        }
    }
    dist
}

/// Interval with integer endpoints; `None` on the right means unbounded.
pub type RawInterval = (i64, Option<i64>);

/// Minimum number of points stabbing every interval, by exhaustive search
/// over subsets of endpoints (DP over coverage masks).
pub fn brute_stabbing(intervals: &[RawInterval]) -> usize {
    let n = intervals.len();
    if n == 0 {
        return 0;
    }
    let mut points: Vec<i64> = intervals
        .iter()
        .flat_map(|&(lo, hi)| std::iter::once(lo).chain(hi))
        .collect();
    points.sort_unstable();
    points.dedup();
    let masks: Vec<usize> = points
        .iter()
        .map(|&x| {
            intervals
                .iter()
                .enumerate()
                .filter(|(_, &(lo, hi))| lo <= x && hi.is_none_or(|h| x <= h))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = (1usize << n) - 1;
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 0..=full {
        if best[mask] == usize::MAX {
            continue;
        }
        for &m in &masks {
            let next = mask | m;
            best[next] = best[next].min(best[mask] + 1);
        }
    }
    best[full]
}

/// Result of [`check_lp`]: constraint names per row and variable names seen.
#[derive(Debug, Default)]
pub struct LpSummary {
    pub constraints: Vec<String>,
    pub variables: BTreeSet<String>,
    pub binaries: BTreeSet<String>,
    pub bounded: BTreeSet<String>,
}

impl LpSummary {
    /// Distinct variable names per prefix before the first `_`.
    pub fn variables_by_family(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for v in &self.variables {
            *out.entry(v.split('_').next().unwrap().to_string()).or_insert(0) += 1;
        }
        out
    }

    /// Rows per family, the constraint-name prefix before the first `_`.
    pub fn constraints_by_family(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for c in &self.constraints {
            *out.entry(c.split('_').next().unwrap().to_string()).or_insert(0) += 1;
        }
        out
    }
}

fn is_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || "_!\"#$%&()/,;?@'`{}|~".contains(c))
        && tok.chars().all(|c| c.is_ascii_alphanumeric() || "_!\"#$%&()/,.;?@'`{}|~".contains(c))
        && tok.len() <= 255
}

fn is_number(tok: &str) -> bool {
    tok.parse::<f64>().is_ok_and(f64::is_finite) && !tok.contains(['i', 'n', 'I', 'N'])
}

/// Parses a linear expression `[+|-] [coef] name ...`; returns variable names.
fn parse_linear(tokens: &[&str]) -> Result<Vec<String>, String> {
    let mut vars = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = false;
        if tokens[i] == "+" || tokens[i] == "-" {
            sign = true;
            i += 1;
        }
        if !first && !sign {
            return Err(format!("missing sign before {:?}", tokens.get(i)));
        }
        first = false;
        if i < tokens.len() && is_number(tokens[i]) {
            i += 1;
        }
        match tokens.get(i) {
            Some(t) if is_name(t) => vars.push(t.to_string()),
            other => return Err(format!("expected a variable name, got {other:?}")),
        }
        i += 1;
    }
    if vars.is_empty() {
        return Err("empty expression".into());
    }
    Ok(vars)
}

/// Independent checker for the subset of the CPLEX LP grammar the exporter
/// uses: comment lines, `Minimize`/`Subject To`/`Bounds`/`Binaries`/`End`
/// sections, named rows with `<=`, `>=` or `=` and a numeric right-hand side,
/// `lo <= name <= hi` bounds, and whitespace-separated binaries.
pub fn check_lp(text: &str) -> Result<LpSummary, String> {
    #[derive(PartialEq, Clone, Copy)]
    enum Sec {
        Start,
        Objective,
        Rows,
        Bounds,
        Binaries,
        End,
    }
    let mut sec = Sec::Start;
    let mut summary = LpSummary::default();
    // Rows may continue across lines: gather statements first.
    let mut statement: Vec<String> = Vec::new();
    let mut statements: Vec<(Sec, Vec<String>)> = Vec::new();
    let mut names = BTreeSet::new();

    let flush = |sec: Sec, statement: &mut Vec<String>, statements: &mut Vec<(Sec, Vec<String>)>| {
        if !statement.is_empty() {
            statements.push((sec, std::mem::take(statement)));
        }
    };

    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('\\').next().unwrap();
        if line.len() > 560 {
            return Err(format!("line {} exceeds 560 characters", no + 1));
        }
        let keyword = line.trim().to_ascii_lowercase();
        let next = match keyword.as_str() {
            "minimize" | "minimum" | "min" | "maximize" | "maximum" | "max" => Some(Sec::Objective),
            "subject to" | "such that" | "st" | "s.t." => Some(Sec::Rows),
            "bounds" | "bound" => Some(Sec::Bounds),
            "binaries" | "binary" | "bin" => Some(Sec::Binaries),
            "end" => Some(Sec::End),
            _ => None,
        };
        if let Some(next) = next {
            let allowed = match next {
                Sec::Objective => sec == Sec::Start,
                Sec::Rows => sec == Sec::Objective,
                Sec::Bounds => sec == Sec::Rows,
                Sec::Binaries => matches!(sec, Sec::Rows | Sec::Bounds),
                Sec::End => sec != Sec::Start && sec != Sec::End,
                Sec::Start => false,
            };
            if !allowed {
                return Err(format!("line {}: section {keyword:?} out of order", no + 1));
            }
            flush(sec, &mut statement, &mut statements);
            sec = next;
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        match sec {
            Sec::Start => return Err(format!("line {}: text before the objective section", no + 1)),
            Sec::End => return Err(format!("line {}: text after End", no + 1)),
            Sec::Objective | Sec::Rows => {
                // a new statement starts with a `name:` label
                let first = line.split_whitespace().next().unwrap();
                if first.ends_with(':') {
                    flush(sec, &mut statement, &mut statements);
                } else if statement.is_empty() {
                    return Err(format!("line {}: continuation without a row", no + 1));
                }
                statement.extend(line.split_whitespace().map(String::from));
            }
            Sec::Bounds | Sec::Binaries => {
                statements.push((sec, line.split_whitespace().map(String::from).collect()));
            }
        }
    }
    if sec != Sec::End {
        return Err("missing End".into());
    }

    let mut objective_seen = false;
    for (sec, toks) in statements {
        let toks: Vec<&str> = toks.iter().map(String::as_str).collect();
        match sec {
            Sec::Objective => {
                if objective_seen {
                    return Err("more than one objective".into());
                }
                objective_seen = true;
                let label = toks[0].strip_suffix(':').ok_or("objective without a label")?;
                if !is_name(label) {
                    return Err(format!("bad objective label {label:?}"));
                }
                summary.variables.extend(parse_linear(&toks[1..])?);
            }
            Sec::Rows => {
                let label = toks[0].strip_suffix(':').ok_or("row without a label")?;
                if !is_name(label) || !names.insert(label.to_string()) {
                    return Err(format!("bad or duplicate row name {label:?}"));
                }
                let n = toks.len();
                if n < 4 {
                    return Err(format!("row {label}: too short"));
                }
                if !matches!(toks[n - 2], "<=" | ">=" | "=" | "=<" | "=>") {
                    return Err(format!("row {label}: missing sense"));
                }
                if !is_number(toks[n - 1]) {
                    return Err(format!("row {label}: right-hand side {:?} is not a number", toks[n - 1]));
                }
                summary.variables.extend(parse_linear(&toks[1..n - 2])?);
                summary.constraints.push(label.to_string());
            }
            Sec::Bounds => match toks.as_slice() {
                [lo, "<=", name, "<=", hi] if is_number(lo) && is_number(hi) && is_name(name) => {
                    if lo.parse::<f64>().unwrap() > hi.parse::<f64>().unwrap() {
                        return Err(format!("empty bound on {name}"));
                    }
                    summary.bounded.insert(name.to_string());
                }
                _ => return Err(format!("bad bound {toks:?}")),
            },
            Sec::Binaries => {
                for t in toks {
                    if !is_name(t) {
                        return Err(format!("bad binary name {t:?}"));
                    }
                    summary.binaries.insert(t.to_string());
                }
            }
            Sec::Start | Sec::End => unreachable!(),
        }
    }
    if !objective_seen {
        return Err("no objective".into());
    }
    // declarations may introduce variables that no row uses
    let declared: Vec<String> = summary.binaries.iter().chain(&summary.bounded).cloned().collect();
    summary.variables.extend(declared);
    Ok(summary)
}
