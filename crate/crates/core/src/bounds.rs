//! Explicit thresholds guaranteeing transfer fidelity above `1 - epsilon`
//! for the loop-perturbed model, and their translation to `k`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cospectral::cospectrality;
use crate::error::{Error, Result};
use crate::graph::{Extended, Graph};
use crate::hamiltonian::degree_classes;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdInput {
    pub epsilon: f64,
    /// maximum degree
    pub m: u64,
    /// cospectrality of the pair
    pub c: Extended,
    /// distance between the pair
    pub d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdExponents {
    /// `min(2, c - d + 1)`
    pub epsilon_root: f64,
    /// `max(1/2, d / (c - d + 1))`
    pub degree_excess: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub q_min: f64,
    pub k_min: Option<f64>,
    /// readout-time bound evaluated at `|Q| = q_min`
    pub t_bound: f64,
    pub exponents: ThresholdExponents,
}

/// `q_min = 16 eps^{-1/min(2, c-d+1)} m^{1 + max(1/2, d/(c-d+1))}`. Applies to
/// `|Q|`, so negative loop weights are covered by the same value.
pub fn q_threshold(input: ThresholdInput) -> Result<ThresholdResult> {
    let ThresholdInput { epsilon, m, c, d } = input;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if m == 0 {
        return Err(Error::Domain("maximum degree must be positive".into()));
    }
    if d == 0 {
        return Err(Error::Domain("distance must be at least 1".into()));
    }
    let exponents = match c {
        Extended::Infinite => ThresholdExponents {
            epsilon_root: 2.0,
            degree_excess: 0.5,
        },
        Extended::Finite(c) if c < d => {
            return Err(Error::Hypothesis { c: c.to_string(), d });
        }
        Extended::Finite(c) => {
            let span = (c - d + 1) as f64;
            ThresholdExponents {
                epsilon_root: span.min(2.0),
                degree_excess: (d as f64 / span).max(0.5),
            }
        }
    };
    let m_f = m as f64;
    let q_min = 16.0 * epsilon.powf(-1.0 / exponents.epsilon_root) * m_f.powf(1.0 + exponents.degree_excess);
    Ok(ThresholdResult {
        q_min,
        k_min: None,
        t_bound: readout_time_bound(q_min, m, d),
        exponents,
    })
}

/// `2 pi (|Q| + m)^{d - 1}`.
pub fn readout_time_bound(q: f64, m: u64, d: u64) -> f64 {
    2.0 * PI * (q.abs() + m as f64).powf(d.saturating_sub(1) as f64)
}

/// Threshold on `|k|` for a pair `u, v` sharing degree `d1` in a graph whose
/// other vertices all have degree `d2`: `k_min = q_min / |d1 - d2|`.
pub fn k_threshold_two_class(g: &Graph, u: usize, v: usize, epsilon: f64) -> Result<ThresholdResult> {
    let (d1, d2) = degree_classes(g, u, v)?;
    let c = cospectrality(g, u, v)?.order;
    let d = g.distance(u, v)?.finite().ok_or_else(|| {
        Error::Domain(format!("vertices {u} and {v} are disconnected"))
    })?;
    let m = g.max_degree() as u64;
    let mut result = q_threshold(ThresholdInput { epsilon, m, c, d })?;
    result.k_min = Some(result.q_min / (d1 as f64 - d2 as f64).abs());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn infinite(epsilon: f64, m: u64, d: u64) -> ThresholdResult {
        q_threshold(ThresholdInput {
            epsilon,
            m,
            c: Extended::Infinite,
            d,
        })
        .unwrap()
    }

    #[test]
    fn path_endpoint_threshold() {
        let r = infinite(0.1, 2, 5);
        let want = 32.0 * 2f64.sqrt() / 0.1f64.sqrt();
        assert!((r.q_min - want).abs() < 1e-10);
        assert!((r.q_min - 143.108).abs() < 1e-3);
        assert_eq!(r.exponents.epsilon_root, 2.0);
        assert_eq!(r.exponents.degree_excess, 0.5);
    }

    #[test]
    fn bipartite_threshold() {
        let r = infinite(0.1, 4, 2);
        assert!((r.q_min - 128.0 / 0.1f64.sqrt()).abs() < 1e-10);
        assert!((r.q_min - 404.77).abs() < 1e-2);
    }

    #[test]
    fn domain_and_hypothesis_errors() {
        for eps in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(matches!(
                q_threshold(ThresholdInput { epsilon: eps, m: 2, c: Extended::Infinite, d: 1 }),
                Err(Error::Domain(_))
            ));
        }
        assert!(matches!(
            q_threshold(ThresholdInput { epsilon: 0.1, m: 2, c: Extended::Finite(1), d: 2 }),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn finite_cospectrality_exponents() {
        // c = d: span 1 => eps^{-1}, m^{1 + d}
        let r = q_threshold(ThresholdInput { epsilon: 0.25, m: 3, c: Extended::Finite(2), d: 2 }).unwrap();
        assert_eq!(r.exponents.epsilon_root, 1.0);
        assert_eq!(r.exponents.degree_excess, 2.0);
        assert!((r.q_min - 16.0 * 4.0 * 27.0).abs() < 1e-9);
        // large c: exponents saturate at (2, 1/2)
        let r = q_threshold(ThresholdInput { epsilon: 0.25, m: 3, c: Extended::Finite(40), d: 2 }).unwrap();
        assert_eq!(r.exponents.epsilon_root, 2.0);
        assert_eq!(r.exponents.degree_excess, 0.5);
    }

    #[test]
    fn readout_bounds() {
        let t = readout_time_bound(143.0, 2, 5);
        assert!((t - 2.0 * PI * 145f64.powi(4)).abs() < 1e-3);
        assert!((t - 2.7767e9).abs() < 1e6);
        assert_eq!(readout_time_bound(143.0, 2, 5), readout_time_bound(-143.0, 2, 5));
        assert_eq!(readout_time_bound(50.0, 3, 1), 2.0 * PI);
    }

    #[test]
    fn k_thresholds() {
        let k24 = Graph::complete_bipartite(2, 4).unwrap();
        let r = k_threshold_two_class(&k24, 0, 1, 0.1).unwrap();
        let k = r.k_min.unwrap();
        assert!((k - 16.0 * 8.0 / (0.1f64.sqrt() * 2.0)).abs() < 1e-10);
        assert!((k - 202.39).abs() < 0.01);

        let p6 = Graph::path(6).unwrap();
        let k = k_threshold_two_class(&p6, 0, 5, 0.1).unwrap().k_min.unwrap();
        assert!((k - 143.108).abs() < 1e-3);
        let k = k_threshold_two_class(&p6, 0, 5, 0.4).unwrap().k_min.unwrap();
        assert!((k - 32.0 * 2f64.sqrt() / 0.4f64.sqrt()).abs() < 1e-10);
        assert!((k - 71.55).abs() < 0.01);

        assert!(matches!(
            k_threshold_two_class(&k24, 0, 2, 0.1),
            Err(Error::Structure { .. })
        ));
    }
}
