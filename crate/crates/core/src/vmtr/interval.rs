use num_traits::{One, Signed, Zero};

use crate::csp::{consumption, lambda_shortest, larac};
use crate::error::Result;
use crate::graph::Path;
use crate::metrics::{Demand, MetricSet, Multiplier};
use crate::network::Network;

/// Number of ε steps tried on each side of a multiplier.
pub const EPSILON_STEPS: i128 = 64;
/// ε = max(1, λ) / 2^EPSILON_SHIFT.
pub const EPSILON_SHIFT: u32 = 20;

/// Multipliers `λ` whose `r¹ + λ·r²` shortest paths meet both bounds of a demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleInterval {
    pub demand: usize,
    pub lambda_min: Multiplier,
    /// `None` when the delay constraint is inactive (interval unbounded above).
    pub lambda_max: Option<Multiplier>,
}

impl FeasibleInterval {
    pub fn contains(&self, lambda: &Multiplier) -> bool {
        *lambda >= self.lambda_min && self.lambda_max.is_none_or(|hi| *lambda <= hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lambda_max == Some(self.lambda_min)
    }
}

/// Interval `[λ²*, 1/λ¹*]` from two LARAC runs, or `None` when either
/// orientation is infeasible or the interval is empty.
///
/// `λ²*` minimizes metric 0 under the metric-1 bound; `λ¹*` minimizes
/// metric 1 under the metric-0 bound. Dividing `r² + λ¹*·r¹` by `λ¹*`
/// gives the same path order as `r¹ + (1/λ¹*)·r²`.
pub fn feasible_interval(
    net: &Network,
    metrics: &MetricSet,
    demand: &Demand,
) -> Result<Option<FeasibleInterval>> {
    let min_delay = larac(net, metrics, 0, 1, demand.bounds[1], demand.src, demand.dst)?;
    let min_loss = larac(net, metrics, 1, 0, demand.bounds[0], demand.src, demand.dst)?;
    let (Some(lambda_min), Some(lambda_one)) = (min_delay.lambda_star, min_loss.lambda_star) else {
        return Ok(None);
    };
    let lambda_max = (!lambda_one.is_zero()).then(|| lambda_one.recip());
    if lambda_max.is_some_and(|hi| lambda_min > hi) {
        return Ok(None);
    }
    Ok(Some(FeasibleInterval {
        demand: demand.id,
        lambda_min,
        lambda_max,
    }))
}

/// Side on which a multiplier is perturbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// `λ` followed by `λ ± i·ε` for `i = 1..=64` on each side in `order`,
/// skipping negative values.
pub fn perturbations(lambda: Multiplier, order: [Side; 2]) -> impl Iterator<Item = Multiplier> {
    let eps = lambda.max(Multiplier::one()) / Multiplier::from_integer(1 << EPSILON_SHIFT);
    std::iter::once(lambda).chain(order.into_iter().flat_map(move |side| {
        (1..=EPSILON_STEPS).filter_map(move |i| {
            let step = eps * Multiplier::from_integer(i);
            let m = match side {
                Side::Right => lambda + step,
                Side::Left => lambda - step,
            };
            (!m.is_negative()).then_some(m)
        })
    }))
}

/// The fraction with the smallest denominator strictly between `a` and `b`
/// (`0 ≤ a < b`), found by walking the continued fraction expansion.
pub fn simplest_between(a: Multiplier, b: Multiplier) -> Multiplier {
    assert!(!a.is_negative() && a < b, "need 0 <= a < b");
    let n = a.floor();
    if n + Multiplier::one() < b {
        return n + Multiplier::one();
    }
    let (fa, fb) = (a - n, b - n);
    if fa.is_zero() {
        // 1/k < fb with the smallest k
        return n + Multiplier::new(1, (fb.recip().floor() + Multiplier::one()).to_integer());
    }
    n + simplest_between(fb.recip(), fa.recip()).recip()
}

/// The first `λ`-shortest path when every `λ`-shortest path meets both
/// bounds; `None` otherwise (including ties beyond the enumeration cap).
pub fn validate_lambda(
    net: &Network,
    metrics: &MetricSet,
    demand: &Demand,
    lambda: &Multiplier,
) -> Option<Path> {
    let paths = lambda_shortest(net, metrics, lambda, demand.src, demand.dst).ok()?;
    paths
        .iter()
        .all(|p| demand.admits(&consumption(metrics, p)))
        .then(|| paths.into_iter().next())
        .flatten()
}

/// Resolves shortest-path ties at `λ` by ε-perturbation in the given order.
pub fn resolve_lambda(
    net: &Network,
    metrics: &MetricSet,
    demand: &Demand,
    lambda: Multiplier,
    order: [Side; 2],
) -> Option<(Multiplier, Path)> {
    perturbations(lambda, order)
        .find_map(|m| validate_lambda(net, metrics, demand, &m).map(|p| (m, p)))
}

/// Validated route for `demand` at `λ`, perturbing rightward then leftward
/// until all shortest paths are feasible.
pub fn check_lambda(
    net: &Network,
    metrics: &MetricSet,
    demand: &Demand,
    lambda: Multiplier,
) -> Option<Path> {
    resolve_lambda(net, metrics, demand, lambda, [Side::Right, Side::Left]).map(|(_, p)| p)
}
