//! Additive per-arc resources, demands, and Lagrangian multipliers.
//!
//! Resource values are stored as fixed-point integers with [`FIXED_SCALE`]
//! units per natural unit so that path sums and tie detection are exact.
//! JSON files carry natural-unit floats.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::network::{ArcId, Network, NodeId};

/// Fixed-point units per natural unit (nano resolution).
pub const FIXED_SCALE: f64 = 1e9;

/// Largest accepted per-arc fixed-point value. Keeps combined weights of
/// the form `q·r¹ + p·r²` well inside `u128`.
pub const MAX_FIXED: u64 = 1 << 52;

/// Converts a natural-unit value to fixed point, rounding to nearest.
pub fn to_fixed(value: f64) -> Result<u64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidInput(format!(
            "resource values must be finite and nonnegative, got {value}"
        )));
    }
    let scaled = (value * FIXED_SCALE).round();
    if scaled > MAX_FIXED as f64 {
        return Err(Error::InvalidInput(format!("resource value {value} is too large")));
    }
    Ok(scaled as u64)
}

pub fn from_fixed(value: u64) -> f64 {
    value as f64 / FIXED_SCALE
}

/// Exact nonnegative rational multiplier λ.
pub type Multiplier = Ratio<i128>;

pub fn multiplier_to_f64(m: &Multiplier) -> f64 {
    *m.numer() as f64 / *m.denom() as f64
}

/// Per-arc additive resources for each base topology (`r_a^t`).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSet {
    names: Vec<String>,
    values: Vec<Vec<u64>>,
}

impl MetricSet {
    pub fn new(names: Vec<String>, values: Vec<Vec<u64>>) -> Result<Self> {
        if names.len() != values.len() || values.is_empty() {
            return Err(Error::InvalidInput(
                "metric set needs one name per metric and at least one metric".into(),
            ));
        }
        let arcs = values[0].len();
        if values.iter().any(|v| v.len() != arcs) {
            return Err(Error::InvalidInput("metrics must cover the same arcs".into()));
        }
        if values.iter().flatten().any(|&v| v > MAX_FIXED) {
            return Err(Error::InvalidInput("metric value out of range".into()));
        }
        Ok(MetricSet { names, values })
    }

    /// Builds a metric set from natural-unit values.
    pub fn from_f64(names: &[&str], values: &[Vec<f64>]) -> Result<Self> {
        let values = values
            .iter()
            .map(|m| m.iter().map(|&v| to_fixed(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MetricSet::new(names.iter().map(|s| s.to_string()).collect(), values)
    }

    /// Conventional two-metric set `(delay, loss)`.
    pub fn delay_loss(delay: Vec<u64>, loss: Vec<u64>) -> Result<Self> {
        MetricSet::new(vec!["delay".into(), "loss".into()], vec![delay, loss])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn arc_count(&self) -> usize {
        self.values[0].len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn metric(&self, t: usize) -> &[u64] {
        &self.values[t]
    }

    pub fn value(&self, t: usize, a: ArcId) -> u64 {
        self.values[t][a]
    }

    pub fn check_network(&self, net: &Network) -> Result<()> {
        if self.arc_count() != net.arc_count() {
            return Err(Error::InvalidInput(format!(
                "metric set covers {} arcs, network has {}",
                self.arc_count(),
                net.arc_count()
            )));
        }
        Ok(())
    }

    /// Integer weights proportional to `metric[cost] + λ·metric[other]`.
    ///
    /// With `λ = p/q` the returned weight is `q·r_cost + p·r_other`, which
    /// orders paths exactly like the rational combination.
    ///
    /// Panics when a weight would leave too little headroom for path sums;
    /// multipliers produced by this crate stay far below that limit.
    pub fn combined(&self, cost: usize, other: usize, lambda: &Multiplier) -> Vec<u128> {
        debug_assert!(!lambda.is_negative());
        let p = *lambda.numer() as u128;
        let q = *lambda.denom() as u128;
        self.values[cost]
            .iter()
            .zip(&self.values[other])
            .map(|(&c, &d)| {
                q.checked_mul(c as u128)
                    .zip(p.checked_mul(d as u128))
                    .and_then(|(x, y)| x.checked_add(y))
                    .filter(|&x| x <= u128::MAX >> 16)
                    .unwrap_or_else(|| panic!("multiplier {lambda} is too fine for exact combined weights"))
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawMetricSet {
    names: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl Serialize for MetricSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMetricSet {
            names: self.names.clone(),
            values: self
                .values
                .iter()
                .map(|m| m.iter().map(|&v| from_fixed(v)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MetricSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMetricSet::deserialize(d)?;
        let names: Vec<&str> = raw.names.iter().map(String::as_str).collect();
        MetricSet::from_f64(&names, &raw.values).map_err(serde::de::Error::custom)
    }
}

/// A demand with per-metric end-to-end bounds (`r_k^t`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub id: usize,
    pub src: NodeId,
    pub dst: NodeId,
    pub bounds: Vec<u64>,
}

impl Demand {
    pub fn new(id: usize, src: NodeId, dst: NodeId, bounds: Vec<u64>) -> Result<Self> {
        if src == dst {
            return Err(Error::InvalidInput(format!("demand {id} has src == dst")));
        }
        if bounds.contains(&0) {
            return Err(Error::InvalidInput(format!("demand {id} has a zero bound")));
        }
        Ok(Demand { id, src, dst, bounds })
    }

    /// Builds a demand from natural-unit bounds.
    pub fn from_f64(id: usize, src: NodeId, dst: NodeId, bounds: &[f64]) -> Result<Self> {
        let bounds = bounds.iter().map(|&b| to_fixed(b)).collect::<Result<Vec<_>>>()?;
        Demand::new(id, src, dst, bounds)
    }

    /// Whether the per-metric consumption vector respects every bound.
    pub fn admits(&self, consumption: &[u64]) -> bool {
        consumption.iter().zip(&self.bounds).all(|(c, b)| c <= b)
    }

    pub fn validate(&self, net: &Network, metrics: &MetricSet) -> Result<()> {
        if self.src >= net.node_count() || self.dst >= net.node_count() {
            return Err(Error::InvalidInput(format!("demand {} has an unknown endpoint", self.id)));
        }
        if self.bounds.len() != metrics.len() {
            return Err(Error::InvalidInput(format!(
                "demand {} has {} bounds for {} metrics",
                self.id,
                self.bounds.len(),
                metrics.len()
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawDemand {
    id: usize,
    src: NodeId,
    dst: NodeId,
    bounds: Vec<f64>,
}

impl Serialize for Demand {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawDemand {
            id: self.id,
            src: self.src,
            dst: self.dst,
            bounds: self.bounds.iter().map(|&b| from_fixed(b)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Demand {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDemand::deserialize(d)?;
        Demand::from_f64(raw.id, raw.src, raw.dst, &raw.bounds).map_err(serde::de::Error::custom)
    }
}

/// `{"demands":[...]}` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandList {
    pub demands: Vec<Demand>,
}

/// Multiplier that serializes as `"p/q"` text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactMultiplier(pub Multiplier);

impl fmt::Display for ExactMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ExactMultiplier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m: Multiplier = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad multiplier `{s}`")))?;
        if m.is_negative() {
            return Err(Error::InvalidInput(format!("negative multiplier `{s}`")));
        }
        Ok(ExactMultiplier(m))
    }
}

impl Serialize for ExactMultiplier {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactMultiplier {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer weights of a virtual topology: `Σ_t λ_t·r_a^t`, scaled by the
/// common denominator of the coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualWeights {
    pub denom: u128,
    pub scaled: Vec<u128>,
}

impl VirtualWeights {
    /// Natural-unit weight of arc `a`.
    pub fn value(&self, a: ArcId) -> f64 {
        self.scaled[a] as f64 / self.denom as f64 / FIXED_SCALE
    }
}

/// Per-arc linear combination of the base metrics.
pub fn virtual_weights(metrics: &MetricSet, coefficients: &[Multiplier]) -> Result<VirtualWeights> {
    if coefficients.len() != metrics.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients for {} metrics",
            coefficients.len(),
            metrics.len()
        )));
    }
    if coefficients.iter().any(|c| c.is_negative()) || coefficients.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput(
            "coefficients must be nonnegative and not all zero".into(),
        ));
    }
    let denom = coefficients
        .iter()
        .fold(1i128, |l, c| num_integer_lcm(l, *c.denom()));
    let factors: Vec<u128> = coefficients
        .iter()
        .map(|c| (c.numer() * (denom / c.denom())) as u128)
        .collect();
    let scaled = (0..metrics.arc_count())
        .map(|a| {
            factors
                .iter()
                .enumerate()
                .map(|(t, f)| f * metrics.value(t, a) as u128)
                .sum()
        })
        .collect();
    Ok(VirtualWeights {
        denom: denom as u128,
        scaled,
    })
}

fn num_integer_lcm(a: i128, b: i128) -> i128 {
    let g = gcd(a, b);
    a / g * b
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

/// Coefficient vector `(1, λ)` for the two-metric case.
pub fn pair_coefficients(lambda: Multiplier) -> [Multiplier; 2] {
    [Multiplier::one(), lambda]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond_metrics() -> MetricSet {
        MetricSet::from_f64(
            &["delay", "loss"],
            &[vec![1.0, 1.0, 10.0, 10.0, 5.0], vec![10.0, 10.0, 1.0, 1.0, 5.0]],
        )
        .unwrap()
    }

    #[test]
    fn fixed_point_roundtrip() {
        assert_eq!(to_fixed(9.0).unwrap(), 9_000_000_000);
        assert_eq!(from_fixed(to_fixed(0.025317807984).unwrap()), 0.025317808);
        assert!(to_fixed(-1.0).is_err());
        assert!(to_fixed(f64::NAN).is_err());
    }

    #[test]
    fn virtual_weight_examples() {
        let ms = diamond_metrics();
        let identity = virtual_weights(&ms, &[Multiplier::one(), Multiplier::zero()]).unwrap();
        for a in 0..5 {
            assert_eq!(identity.value(a), from_fixed(ms.value(0, a)));
        }
        let unit = virtual_weights(&ms, &pair_coefficients(Multiplier::one())).unwrap();
        assert_eq!(unit.value(4), 10.0);
        let fifth = virtual_weights(&ms, &pair_coefficients(Multiplier::new(1, 5))).unwrap();
        assert_eq!(fifth.value(0), 3.0);
        assert!(virtual_weights(&ms, &[Multiplier::zero(), Multiplier::zero()]).is_err());
    }

    #[test]
    fn combined_orders_like_rational_weights() {
        let ms = diamond_metrics();
        let w = ms.combined(0, 1, &Multiplier::new(1, 5));
        assert_eq!(w[0], 5 * 1_000_000_000 + 10_000_000_000);
    }

    #[test]
    fn demand_json() {
        let text = r#"{"demands":[{"id":0,"src":1,"dst":4,"bounds":[9.0,9.0]}]}"#;
        let list: DemandList = serde_json::from_str(text).unwrap();
        assert_eq!(list.demands[0].bounds, vec![9_000_000_000; 2]);
        assert!(serde_json::from_str::<DemandList>(
            r#"{"demands":[{"id":0,"src":1,"dst":1,"bounds":[9.0,9.0]}]}"#
        )
        .is_err());
    }

    #[test]
    fn exact_multiplier_text() {
        let m: ExactMultiplier = "1/5".parse().unwrap();
        assert_eq!(m.0, Multiplier::new(1, 5));
        assert_eq!(serde_json::to_string(&m).unwrap(), "\"1/5\"");
        assert!("-1/5".parse::<ExactMultiplier>().is_err());
    }
}
