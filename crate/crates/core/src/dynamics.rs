//! Time evolution `U(t) = exp(-iHt)` evaluated through the eigendecomposition
//! of `H`, transfer probabilities, and peak-fidelity search.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::EigenDecomposition;

pub type Amplitude = Complex64;

/// Relative gap (against the spectral range) below which the two-level
/// beat period is considered undefined.
pub const DEGENERATE_GAP_REL: f64 = 1e-13;
/// Golden-section search stops once the bracket is this narrow relative to `t`.
pub const REFINE_REL_WIDTH: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// The `(u, v)` slice of the spectral sum, with eigenvalues stored relative
/// to the smallest one so that large `t` loses as little phase accuracy as
/// possible.
#[derive(Clone, Debug)]
pub struct PairEvolution {
    reference: f64,
    terms: Vec<(f64, f64)>,
}

impl PairEvolution {
    pub fn new(d: &EigenDecomposition, u: usize, v: usize) -> Result<Self> {
        let n = d.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::Bounds { index: x, n });
            }
        }
        let reference = d.eigenvalues().first().copied().unwrap_or(0.0);
        let terms = d
            .eigenvalues()
            .iter()
            .zip(d.vectors())
            .map(|(&lambda, psi)| (lambda - reference, psi[u] * psi[v]))
            .filter(|&(_, w)| w != 0.0)
            .collect();
        Ok(PairEvolution { reference, terms })
    }

    /// `U(t)_{u,v}` up to the global factor `exp(-i lambda_min t)`.
    fn relative(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(mu, w)| Complex64::from_polar(w, -mu * t))
            .sum()
    }

    pub fn amplitude(&self, t: f64) -> Amplitude {
        self.relative(t) * Complex64::from_polar(1.0, -self.reference * t)
    }

    /// `|U(t)_{u,v}|`.
    pub fn fidelity(&self, t: f64) -> f64 {
        self.relative(t).norm()
    }

    pub fn probability(&self, t: f64) -> f64 {
        self.relative(t).norm_sqr()
    }

    /// `d|U(t)|^2 / dt = 2 Re(conj(U) U')`, exact from the spectral sum.
    pub fn probability_slope(&self, t: f64) -> f64 {
        let (mut amp, mut deriv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &(mu, w) in &self.terms {
            let term = Complex64::from_polar(w, -mu * t);
            amp += term;
            deriv += term * Complex64::new(0.0, -mu);
        }
        2.0 * (amp.conj() * deriv).re
    }
}

/// `U(t)_{u,v} = sum_j exp(-i lambda_j t) psi_j(u) psi_j(v)` for `H` with
/// eigenpairs `(lambda_j, psi_j)`.
pub fn evolution_amplitude(d: &EigenDecomposition, t: f64, u: usize, v: usize) -> Result<Amplitude> {
    Ok(PairEvolution::new(d, u, v)?.amplitude(t))
}

pub fn transfer_probability(d: &EigenDecomposition, t: f64, u: usize, v: usize) -> Result<f64> {
    Ok(PairEvolution::new(d, u, v)?.probability(t))
}

/// Full `n x n` matrix `U(t)`, row-major.
pub fn evolution_matrix(d: &EigenDecomposition, t: f64) -> Vec<Vec<Amplitude>> {
    let n = d.n();
    let phases: Vec<Complex64> = d
        .eigenvalues()
        .iter()
        .map(|&l| Complex64::from_polar(1.0, -l * t))
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    phases
                        .iter()
                        .zip(d.vectors())
                        .map(|(p, psi)| p * (psi[i] * psi[j]))
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityCurve {
    pub u: usize,
    pub v: usize,
    pub times: Vec<f64>,
    pub probabilities: Vec<f64>,
}

/// Transfer probability on the uniform grid `t_i = t_max * i / (samples - 1)`.
pub fn fidelity_curve(
    d: &EigenDecomposition,
    u: usize,
    v: usize,
    t_max: f64,
    samples: usize,
) -> Result<FidelityCurve> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::Domain(format!("t_max must be positive, got {t_max}")));
    }
    if samples < 2 {
        return Err(Error::Domain("need at least 2 samples".into()));
    }
    let pair = PairEvolution::new(d, u, v)?;
    let times = uniform_grid(0.0, t_max, samples);
    let probabilities = times.par_iter().map(|&t| pair.probability(t)).collect();
    Ok(FidelityCurve {
        u,
        v,
        times,
        probabilities,
    })
}

fn uniform_grid(a: f64, b: f64, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                b
            } else {
                a + (b - a) * (i as f64 / last)
            }
        })
        .collect()
}

/// Per-group localization `(P_r)_{uu} + (P_r)_{vv}`.
pub(crate) fn group_masses(d: &EigenDecomposition, u: usize, v: usize) -> Vec<f64> {
    (0..d.groups().len())
        .map(|r| d.projector_entry(r, u, u) + d.projector_entry(r, v, v))
        .collect()
}

/// Beat period `pi / |lambda_r1 - lambda_r2|` of the two eigenvalue groups
/// carrying the most weight on `{u, v}`.
pub fn two_level_candidate_time(d: &EigenDecomposition, u: usize, v: usize) -> Result<f64> {
    let n = d.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::Bounds { index: x, n });
        }
    }
    if n < 2 {
        return Err(Error::Domain("two-level candidate needs n >= 2".into()));
    }
    let (r1, r2) = top_two_groups(d, u, v).ok_or(Error::DegenerateGap { gap: 0.0 })?;
    let gap = (d.group_eigenvalue(r1) - d.group_eigenvalue(r2)).abs();
    if gap < DEGENERATE_GAP_REL * d.spectral_range() || gap == 0.0 {
        return Err(Error::DegenerateGap { gap });
    }
    Ok(PI / gap)
}

/// Indices of the two most localized groups; ties go to the lower index.
pub(crate) fn top_two_groups(d: &EigenDecomposition, u: usize, v: usize) -> Option<(usize, usize)> {
    let masses = group_masses(d, u, v);
    let mut order: Vec<usize> = (0..masses.len()).collect();
    order.sort_by(|&a, &b| masses[b].total_cmp(&masses[a]).then(a.cmp(&b)));
    match order.as_slice() {
        [a, b, ..] => Some((*a, *b)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PeakStrategy {
    Grid { t_max: f64, samples: usize },
    TwoLevel { refine_window_fraction: f64, refine_samples: usize },
}

impl Default for PeakStrategy {
    fn default() -> Self {
        PeakStrategy::TwoLevel {
            refine_window_fraction: 0.5,
            refine_samples: 2000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakMethod {
    TwoLevel,
    Grid,
    Refined,
}

impl fmt::Display for PeakMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeakMethod::TwoLevel => "two-level",
            PeakMethod::Grid => "grid",
            PeakMethod::Refined => "refined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeakResult {
    pub t_star: f64,
    /// `|U(t_star)_{u,v}|`, not squared.
    pub fidelity: f64,
    pub method: PeakMethod,
}

pub fn peak_fidelity(
    d: &EigenDecomposition,
    u: usize,
    v: usize,
    strategy: PeakStrategy,
) -> Result<PeakResult> {
    let pair = PairEvolution::new(d, u, v)?;
    match strategy {
        PeakStrategy::TwoLevel {
            refine_window_fraction,
            refine_samples,
        } => {
            if !(refine_window_fraction > 0.0 && refine_window_fraction < 1.0) {
                return Err(Error::Domain(format!(
                    "refine window fraction must lie in (0, 1), got {refine_window_fraction}"
                )));
            }
            if refine_samples < 3 {
                return Err(Error::Domain("need at least 3 refinement samples".into()));
            }
            let t0 = two_level_candidate_time(d, u, v)?;
            let lo = t0 * (1.0 - refine_window_fraction);
            let hi = t0 * (1.0 + refine_window_fraction);
            let (t_star, _) = scan_and_refine(&pair, lo, hi, refine_samples);
            Ok(PeakResult {
                t_star,
                fidelity: pair.fidelity(t_star),
                method: PeakMethod::TwoLevel,
            })
        }
        PeakStrategy::Grid { t_max, samples } => {
            if !(t_max.is_finite() && t_max > 0.0) {
                return Err(Error::Domain(format!("t_max must be positive, got {t_max}")));
            }
            if samples < 2 {
                return Err(Error::Domain("need at least 2 samples".into()));
            }
            let (t_star, refined) = scan_and_refine(&pair, 0.0, t_max, samples);
            Ok(PeakResult {
                t_star,
                fidelity: pair.fidelity(t_star),
                method: if refined { PeakMethod::Refined } else { PeakMethod::Grid },
            })
        }
    }
}

/// Samples `[lo, hi]`, then refines between the neighbours of the best
/// sample. Returns the best time and whether the local search beat (or tied)
/// the raw sample.
fn scan_and_refine(pair: &PairEvolution, lo: f64, hi: f64, samples: usize) -> (f64, bool) {
    let grid = uniform_grid(lo, hi, samples);
    let values: Vec<f64> = grid.par_iter().map(|&t| pair.fidelity(t)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &f)| if f > values[best] { i } else { best });
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(samples - 1)];
    let (t_ref, f_ref) = refine_bracket(pair, a, b);
    if f_ref >= values[best] - f64::EPSILON {
        (t_ref, true)
    } else {
        (grid[best], false)
    }
}

/// Local maximization of `|U|` on `[a, b]`. Near a smooth peak `|U|` is flat
/// to within rounding over a width ~sqrt(eps), so when the slope changes sign
/// across the bracket its root is located by bisection instead; the better of
/// that and a golden-section search is returned.
fn refine_bracket(pair: &PairEvolution, a: f64, b: f64) -> (f64, f64) {
    let golden = golden_section_max(|t| pair.fidelity(t), a, b);
    let (mut lo, mut hi) = (a, b);
    if !(pair.probability_slope(lo) > 0.0 && pair.probability_slope(hi) < 0.0) {
        return golden;
    }
    for _ in 0..200 {
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        if hi - lo <= REFINE_REL_WIDTH * scale {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pair.probability_slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let f = pair.fidelity(t);
    if f >= golden.1 {
        (t, f)
    } else {
        golden
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        if b - a <= REFINE_REL_WIDTH * scale {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hamiltonian::{HamiltonianSpec, Model};
    use crate::spectral::eigendecompose;

    fn decomp(g: Graph, m: Model) -> EigenDecomposition {
        eigendecompose(&HamiltonianSpec::new(g, m).unwrap().matrix()).unwrap()
    }

    #[test]
    fn p2_perfect_transfer() {
        let d = decomp(Graph::path(2).unwrap(), Model::Adjacency);
        let a = evolution_amplitude(&d, PI / 2.0, 0, 1).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-14);
        // exp(iAt) for H = -A: U_01 = i sin t
        assert!((a.im - 1.0).abs() < 1e-14 && a.re.abs() < 1e-14, "{a}");
        assert!((transfer_probability(&d, PI / 2.0, 0, 1).unwrap() - 1.0).abs() < 1e-14);
        assert!(transfer_probability(&d, PI, 0, 1).unwrap() < 1e-14);
    }

    #[test]
    fn identity_at_time_zero() {
        let d = decomp(Graph::complete_bipartite(2, 3).unwrap(), Model::Laplacian);
        for u in 0..5 {
            for v in 0..5 {
                let a = evolution_amplitude(&d, 0.0, u, v).unwrap();
                let want = if u == v { 1.0 } else { 0.0 };
                assert!((a.re - want).abs() < 1e-13 && a.im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn curve_shape() {
        let d = decomp(Graph::path(2).unwrap(), Model::Adjacency);
        let c = fidelity_curve(&d, 0, 1, PI, 3).unwrap();
        assert_eq!(c.times, vec![0.0, PI / 2.0, PI]);
        assert!(c.probabilities[0].abs() < 1e-15);
        assert!((c.probabilities[1] - 1.0).abs() < 1e-14);
        assert!(c.probabilities[2] < 1e-14);
        let c = fidelity_curve(&d, 0, 1, 3.0, 2).unwrap();
        assert_eq!(c.times, vec![0.0, 3.0]);
        assert!(fidelity_curve(&d, 0, 1, 0.0, 10).is_err());
        assert!(fidelity_curve(&d, 0, 1, 1.0, 1).is_err());
    }

    #[test]
    fn p2_two_level() {
        let d = decomp(Graph::path(2).unwrap(), Model::Adjacency);
        assert!((two_level_candidate_time(&d, 0, 1).unwrap() - PI / 2.0).abs() < 1e-14);
        let peak = peak_fidelity(&d, 0, 1, PeakStrategy::default()).unwrap();
        assert_eq!(peak.method, PeakMethod::TwoLevel);
        assert!((peak.fidelity - 1.0).abs() < 1e-9);
        assert!((peak.t_star - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_gap_when_single_group() {
        let d = decomp(Graph::new(3, []).unwrap(), Model::Adjacency);
        assert!(matches!(
            two_level_candidate_time(&d, 0, 1),
            Err(Error::DegenerateGap { .. })
        ));
        assert!(matches!(
            peak_fidelity(&d, 0, 1, PeakStrategy::default()),
            Err(Error::DegenerateGap { .. })
        ));
    }

    #[test]
    fn peak_result_reevaluates() {
        let d = decomp(Graph::path(5).unwrap(), Model::Generalized(20.0));
        for strategy in [
            PeakStrategy::default(),
            PeakStrategy::Grid { t_max: 50.0, samples: 5000 },
        ] {
            let p = peak_fidelity(&d, 0, 4, strategy).unwrap();
            let again = evolution_amplitude(&d, p.t_star, 0, 4).unwrap().norm();
            assert!((p.fidelity - again).abs() <= 1e-12);
        }
    }

    #[test]
    fn slope_matches_finite_difference() {
        let d = decomp(Graph::path(4).unwrap(), Model::Generalized(1.7));
        let pair = PairEvolution::new(&d, 0, 3).unwrap();
        for t in [0.3, 1.0, 4.2, 11.0] {
            let h = 1e-6;
            let fd = (pair.probability(t + h) - pair.probability(t - h)) / (2.0 * h);
            assert!((pair.probability_slope(t) - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn golden_section_finds_parabola_top() {
        let (t, f) = golden_section_max(|t| 1.0 - (t - 0.3).powi(2), 0.0, 1.0);
        assert!((t - 0.3).abs() < 1e-6);
        assert!((f - 1.0).abs() < 1e-12);
    }
}
