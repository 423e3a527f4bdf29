//! Delay and loss metrics derived from geometry and capacity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{to_fixed, MetricSet};
use crate::network::{Network, Node};

const EARTH_RADIUS_KM: f64 = 6371.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Plane distance between `(x, y)` coordinates.
    Euclidean,
    /// Great-circle kilometers, `x` = longitude and `y` = latitude in degrees.
    Haversine,
}

impl DistanceMode {
    /// Haversine when every node looks like a longitude/latitude pair.
    pub fn detect(net: &Network) -> Self {
        if net.nodes().iter().all(|n| n.x.abs() <= 180.0 && n.y.abs() <= 90.0) {
            DistanceMode::Haversine
        } else {
            DistanceMode::Euclidean
        }
    }

    pub fn distance(self, a: &Node, b: &Node) -> f64 {
        match self {
            DistanceMode::Euclidean => (a.x - b.x).hypot(a.y - b.y),
            DistanceMode::Haversine => {
                let (lat1, lat2) = (a.y.to_radians(), b.y.to_radians());
                let dlat = lat2 - lat1;
                let dlon = (b.x - a.x).to_radians();
                let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
                2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
            }
        }
    }
}

/// Default loss constant: 2.5% loss probability on the smallest link.
pub fn default_kappa(net: &Network) -> f64 {
    0.5 * min_capacity(net) * 0.05
}

fn min_capacity(net: &Network) -> f64 {
    net.arcs().iter().map(|a| a.capacity).fold(f64::INFINITY, f64::min)
}

/// Loss probability `κ / capacity` of every arc.
pub fn loss_probabilities(net: &Network, kappa: f64) -> Result<Vec<f64>> {
    net.arcs()
        .iter()
        .map(|a| {
            let p = kappa / a.capacity;
            if !(0.0..1.0).contains(&p) {
                return Err(Error::InvalidKappa { kappa, arc: a.id });
            }
            Ok(p)
        })
        .collect()
}

/// Additive loss `−ln(1 − p)`.
pub fn additive_loss(p: f64) -> f64 {
    -(-p).ln_1p()
}

/// Metric 0 is the distance between the arc's endpoints, metric 1 the
/// additive loss of `κ / capacity`.
pub fn derive_metrics(net: &Network, kappa: f64, mode: DistanceMode) -> Result<MetricSet> {
    let probs = loss_probabilities(net, kappa)?;
    let mut delay = Vec::with_capacity(net.arc_count());
    for a in net.arcs() {
        let d = mode.distance(&net.nodes()[a.tail], &net.nodes()[a.head]);
        if d == 0.0 {
            log::warn!("arc {} joins nodes at identical coordinates; its delay is 0", a.id);
        }
        delay.push(to_fixed(d)?);
    }
    let loss = probs
        .iter()
        .map(|&p| to_fixed(additive_loss(p)))
        .collect::<Result<Vec<_>>>()?;
    MetricSet::delay_loss(delay, loss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::from_fixed;

    fn pair(cap: f64) -> Network {
        Network::from_arcs(2, &[(0, 1, cap), (1, 0, cap)]).unwrap()
    }

    #[test]
    fn loss_of_capacity_40() {
        let ms = derive_metrics(&pair(40.0), 1.0, DistanceMode::Euclidean).unwrap();
        let expected = -(0.975f64).ln();
        assert!((from_fixed(ms.value(1, 0)) - expected).abs() < 1e-9);
        assert!((expected - 0.02532).abs() < 1e-5);
        assert_eq!(ms.value(0, 0), 0);
    }

    #[test]
    fn kappa_at_min_capacity_is_rejected() {
        assert!(matches!(
            derive_metrics(&pair(40.0), 40.0, DistanceMode::Euclidean),
            Err(Error::InvalidKappa { arc: 0, .. })
        ));
        assert_eq!(default_kappa(&pair(40.0)), 1.0);
    }

    #[test]
    fn haversine_quarter_meridian() {
        let a = Node { id: 0, x: 0.0, y: 0.0, name: None };
        let b = Node { id: 1, x: 0.0, y: 90.0, name: None };
        let d = DistanceMode::Haversine.distance(&a, &b);
        assert!((d - EARTH_RADIUS_KM * std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        let c = Node { id: 2, x: 3.0, y: 4.0, name: None };
        assert_eq!(DistanceMode::Euclidean.distance(&a, &c), 5.0);
    }

    #[test]
    fn detect_mode() {
        let mut net = pair(1.0);
        assert_eq!(DistanceMode::detect(&net), DistanceMode::Haversine);
        let mut nodes = net.nodes().to_vec();
        nodes[1].x = 500.0;
        net = Network::new(nodes, net.arcs().to_vec()).unwrap();
        assert_eq!(DistanceMode::detect(&net), DistanceMode::Euclidean);
    }
}
