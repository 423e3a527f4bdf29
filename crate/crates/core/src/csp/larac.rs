use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{route_for_demand, Lex2, Path};
use crate::metrics::{MetricSet, Multiplier};
use crate::network::{Network, NodeId};

/// Outcome of a LARAC run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaracResult {
    /// Dual-optimal multiplier; `None` when the constraint cannot be met.
    pub lambda_star: Option<Multiplier>,
    /// Best feasible path found, or the constraint-minimal path when infeasible.
    pub path: Option<Path>,
    pub feasible: bool,
    pub iterations: usize,
}

/// Lagrangian relaxation for `min cost s.t. constrained ≤ bound`.
///
/// All comparisons of combined costs are exact: with `λ = p/q` the combined
/// length `cost + λ·constr` is compared as `q·cost + p·constr`.
pub fn larac(
    net: &Network,
    metrics: &MetricSet,
    cost_idx: usize,
    constr_idx: usize,
    bound: u64,
    src: NodeId,
    dst: NodeId,
) -> Result<LaracResult> {
    if cost_idx == constr_idx {
        return Err(Error::InvalidInput("LARAC needs two distinct metrics".into()));
    }
    let cost = metrics.metric(cost_idx);
    let constr = metrics.metric(constr_idx);
    let eval = |p: &Path| -> (u64, u64) {
        p.arcs
            .iter()
            .fold((0, 0), |(c, d), &a| (c + cost[a], d + constr[a]))
    };

    let by_cost: Vec<Lex2> = cost.iter().zip(constr).map(|(&c, &d)| Lex2(c, d)).collect();
    let mut pc = route_for_demand(net, &by_cost, src, dst)?;
    let (_, pc_d) = eval(&pc);
    if pc_d <= bound {
        return Ok(LaracResult {
            lambda_star: Some(Multiplier::zero()),
            path: Some(pc),
            feasible: true,
            iterations: 0,
        });
    }

    let by_constr: Vec<Lex2> = cost.iter().zip(constr).map(|(&c, &d)| Lex2(d, c)).collect();
    let mut pd = route_for_demand(net, &by_constr, src, dst)?;
    if eval(&pd).1 > bound {
        return Ok(LaracResult {
            lambda_star: None,
            path: Some(pd),
            feasible: false,
            iterations: 0,
        });
    }

    let cap = 10 * net.arc_count().max(1);
    for iteration in 1..=cap {
        let (c_c, d_c) = eval(&pc);
        let (c_d, d_d) = eval(&pd);
        // d_c > bound >= d_d and c_c <= c_d, so lambda >= 0.
        let lambda = Multiplier::new(c_d as i128 - c_c as i128, d_c as i128 - d_d as i128);
        let weights = metrics.combined(cost_idx, constr_idx, &lambda);
        let r = route_for_demand(net, &weights, src, dst)?;
        let combined = |(c, d): (u64, u64)| {
            *lambda.denom() as u128 * c as u128 + *lambda.numer() as u128 * d as u128
        };
        let (c_r, d_r) = eval(&r);
        if combined((c_r, d_r)) == combined((c_c, d_c)) {
            return Ok(LaracResult {
                lambda_star: Some(lambda),
                path: Some(pd),
                feasible: true,
                iterations: iteration,
            });
        }
        if d_r <= bound {
            pd = r;
        } else {
            pc = r;
        }
    }
    Err(Error::LaracNoConvergence(cap))
}
