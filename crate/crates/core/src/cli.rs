//! Command implementations behind the `qst` binary. Each command returns
//! its output as a string so it can be tested without spawning a process.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{k_threshold_two_class, q_threshold, ThresholdExponents, ThresholdInput, ThresholdResult};
use crate::cospectral::{
    cospectrality, find_involution_pairing, sign_pattern, verify_involution, CospectralityResult,
    Divergence, GroupSign, SignSummary,
};
use crate::dynamics::{fidelity_curve, peak_fidelity, top_two_groups, PeakMethod, PeakStrategy};
use crate::error::{Error, Result};
use crate::graph::{Extended, Graph};
use crate::hamiltonian::{degree_classes, HamiltonianSpec, Model};
use crate::spectral::{eigendecompose, spectral_projectors, EigenDecomposition};

pub const SCHEMA_VERSION: u32 = 1;

/// A graph together with the shorthand it was built from.
#[derive(Clone, Debug)]
pub struct GraphSource {
    pub descriptor: String,
    pub graph: Graph,
}

impl GraphSource {
    /// Accepts `path:<n>`, `cycle:<n>`, `bipartite:<a>,<b>` and `file:<path>`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("unrecognized graph source {text:?}"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let graph = if let Some(n) = text.strip_prefix("path:") {
            Graph::path(num(n)?)?
        } else if let Some(n) = text.strip_prefix("cycle:") {
            Graph::cycle(num(n)?)?
        } else if let Some(rest) = text.strip_prefix("bipartite:") {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            Graph::complete_bipartite(num(a)?, num(b)?)?
        } else if let Some(path) = text.strip_prefix("file:") {
            Graph::from_edge_list(&std::fs::read_to_string(path)?)?
        } else {
            return Err(bad());
        };
        Ok(GraphSource {
            descriptor: text.to_string(),
            graph,
        })
    }
}

/// Fixed-width numeric formatting for CSV output: 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn decompose(graph: &Graph, model: Model) -> Result<EigenDecomposition> {
    eigendecompose(&HamiltonianSpec::new(graph.clone(), model)?.matrix())
}

fn check_pair(graph: &Graph, u: usize, v: usize) -> Result<()> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)
}

/// CSV `t,probability` on a uniform grid over `[0, t_max]`.
pub fn fidelity_csv(graph: &Graph, model: Model, u: usize, v: usize, t_max: f64, samples: usize) -> Result<String> {
    check_pair(graph, u, v)?;
    let d = decompose(graph, model)?;
    let curve = fidelity_curve(&d, u, v, t_max, samples)?;
    let mut out = String::with_capacity(40 * samples + 16);
    out.push_str("t,probability\n");
    for (t, p) in curve.times.iter().zip(&curve.probabilities) {
        let _ = writeln!(out, "{},{}", fmt17(*t), fmt17(*p));
    }
    Ok(out)
}

pub fn fidelity_json(graph: &Graph, model: Model, u: usize, v: usize, t_max: f64, samples: usize) -> Result<String> {
    check_pair(graph, u, v)?;
    let d = decompose(graph, model)?;
    Ok(to_json(&fidelity_curve(&d, u, v, t_max, samples)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakSection {
    /// `|U(t_star)_{u,v}|`
    pub fidelity: f64,
    /// `|U(t_star)_{u,v}|^2`
    pub probability: f64,
    pub t_star: f64,
    pub method: PeakMethod,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdSection {
    pub epsilon: f64,
    pub q_min: f64,
    pub k_min: Option<f64>,
    pub t_bound: f64,
    pub exponents: ThresholdExponents,
}

impl ThresholdSection {
    fn new(epsilon: f64, r: ThresholdResult) -> Self {
        ThresholdSection {
            epsilon,
            q_min: r.q_min,
            k_min: r.k_min,
            t_bound: r.t_bound,
            exponents: r.exponents,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub schema_version: u32,
    pub graph: String,
    pub model: String,
    pub u: usize,
    pub v: usize,
    pub peak: PeakSection,
    /// guaranteed (sufficient, not necessary) threshold, when the model admits one
    pub threshold: Option<ThresholdSection>,
    pub cospectrality: Option<CospectralityResult>,
    pub sign_pattern: SignSummary,
    /// `(P_r)_{uu} + (P_r)_{vv}` of the two most localized eigenspaces of `H`
    pub localization_top: Vec<f64>,
}

/// Threshold applicable to the model on this pair, if any.
fn model_threshold(graph: &Graph, model: Model, u: usize, v: usize, epsilon: f64) -> Result<Option<ThresholdSection>> {
    match model {
        Model::Generalized(_) if u != v => {
            if degree_classes(graph, u, v).is_err() {
                return Ok(None);
            }
            Ok(Some(ThresholdSection::new(epsilon, k_threshold_two_class(graph, u, v, epsilon)?)))
        }
        Model::LoopPerturbed { u: a, v: b, .. } if (a, b) == (u, v) || (a, b) == (v, u) => {
            let Some(d) = graph.distance(u, v)?.finite() else {
                return Ok(None);
            };
            let c = cospectrality(graph, u, v)?.order;
            if c < Extended::Finite(d) {
                return Ok(None);
            }
            let r = q_threshold(ThresholdInput {
                epsilon,
                m: graph.max_degree().max(1) as u64,
                c,
                d,
            })?;
            Ok(Some(ThresholdSection::new(epsilon, r)))
        }
        _ => Ok(None),
    }
}

pub fn peak_report(
    source: &GraphSource,
    model: Model,
    u: usize,
    v: usize,
    strategy: PeakStrategy,
    epsilon: f64,
) -> Result<TransferReport> {
    let graph = &source.graph;
    check_pair(graph, u, v)?;
    let d = decompose(graph, model)?;
    let peak = peak_fidelity(&d, u, v, strategy)?;
    let projectors = spectral_projectors(&d);
    let sign = sign_pattern(&projectors, u, v)?;
    let localization_top = match top_two_groups(&d, u, v) {
        Some((a, b)) => [a, b]
            .iter()
            .map(|&r| d.projector_entry(r, u, u) + d.projector_entry(r, v, v))
            .collect(),
        None => vec![d.projector_entry(0, u, u) + d.projector_entry(0, v, v)],
    };
    let cospectral = if u != v { Some(cospectrality(graph, u, v)?) } else { None };
    Ok(TransferReport {
        schema_version: SCHEMA_VERSION,
        graph: source.descriptor.clone(),
        model: model.to_string(),
        u,
        v,
        peak: PeakSection {
            fidelity: peak.fidelity,
            probability: peak.fidelity * peak.fidelity,
            t_star: peak.t_star,
            method: peak.method,
        },
        threshold: model_threshold(graph, model, u, v, epsilon)?,
        cospectrality: cospectral,
        sign_pattern: sign.summary(),
        localization_top,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: f64,
    pub fidelity: f64,
    pub t_star: f64,
    pub method: PeakMethod,
    /// first row whose `|k|` exceeds the guaranteed threshold
    pub threshold_marker: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRange {
    pub k_min: f64,
    pub k_max: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.steps == 0 {
            return Err(Error::Validation("sweep needs at least one step".into()));
        }
        if !(self.k_min.is_finite() && self.k_max.is_finite()) {
            return Err(Error::Validation("sweep bounds must be finite".into()));
        }
        if self.steps == 1 {
            return Ok(vec![self.k_min]);
        }
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.k_max
                } else {
                    self.k_min + (self.k_max - self.k_min) * (i as f64 / last)
                }
            })
            .collect())
    }
}

/// Peak fidelity of `Generalized(k)` for each `k`. A degenerate two-level gap
/// falls back to `fallback` (a grid search).
pub fn sweep_rows(
    graph: &Graph,
    u: usize,
    v: usize,
    range: SweepRange,
    strategy: PeakStrategy,
    fallback: PeakStrategy,
    threshold_epsilon: Option<f64>,
) -> Result<Vec<SweepRow>> {
    check_pair(graph, u, v)?;
    let ks = range.values()?;
    let k_star = match threshold_epsilon {
        Some(eps) => k_threshold_two_class(graph, u, v, eps)?.k_min,
        None => None,
    };
    let mut rows = ks
        .par_iter()
        .map(|&k| {
            let d = decompose(graph, Model::Generalized(k))?;
            let peak = match peak_fidelity(&d, u, v, strategy) {
                Err(Error::DegenerateGap { .. }) => peak_fidelity(&d, u, v, fallback)?,
                other => other?,
            };
            Ok(SweepRow {
                k,
                fidelity: peak.fidelity,
                t_star: peak.t_star,
                method: peak.method,
                threshold_marker: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(k_star) = k_star {
        if let Some(row) = rows.iter_mut().find(|r| r.k.abs() > k_star) {
            row.threshold_marker = true;
        }
    }
    Ok(rows)
}

/// CSV `k,fidelity,t_star`, with a trailing `marker` column when a threshold
/// was requested.
pub fn sweep_csv(rows: &[SweepRow], with_marker: bool) -> String {
    let mut out = String::from(if with_marker { "k,fidelity,t_star,marker\n" } else { "k,fidelity,t_star\n" });
    for r in rows {
        let _ = write!(out, "{},{},{}", fmt17(r.k), fmt17(r.fidelity), fmt17(r.t_star));
        if with_marker {
            out.push(',');
            if r.threshold_marker {
                out.push_str("threshold");
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub epsilon: f64,
    pub max_degree: usize,
    pub distance: u64,
    pub cospectrality: Extended,
    pub q_min: f64,
    pub k_min: Option<f64>,
    pub t_bound: f64,
    pub exponents: ThresholdExponents,
}

/// `k_min` is reported only when `u, v` form a two-degree-class pair;
/// otherwise only the loop-weight threshold `q_min` applies.
pub fn bound_report(source: &GraphSource, u: usize, v: usize, epsilon: f64) -> Result<BoundReport> {
    let g = &source.graph;
    check_pair(g, u, v)?;
    if u == v {
        return Err(Error::Validation("bound needs u != v".into()));
    }
    let d = g
        .distance(u, v)?
        .finite()
        .ok_or_else(|| Error::Domain(format!("vertices {u} and {v} are disconnected")))?;
    let c = cospectrality(g, u, v)?.order;
    let r = match degree_classes(g, u, v) {
        Ok(_) => k_threshold_two_class(g, u, v, epsilon)?,
        Err(Error::Structure { .. }) => q_threshold(ThresholdInput {
            epsilon,
            m: g.max_degree() as u64,
            c,
            d,
        })?,
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        schema_version: SCHEMA_VERSION,
        graph: source.descriptor.clone(),
        u,
        v,
        epsilon,
        max_degree: g.max_degree(),
        distance: d,
        cospectrality: c,
        q_min: r.q_min,
        k_min: r.k_min,
        t_bound: r.t_bound,
        exponents: r.exponents,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionStatus {
    Found,
    None,
    Supplied,
    /// graph too large for the backtracking search
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionSection {
    pub status: InvolutionStatus,
    pub permutation: Option<Vec<usize>>,
    /// the permutation is an involutive automorphism with `sigma(u) = v`
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub degree_u: usize,
    pub degree_v: usize,
    pub distance: Extended,
    pub order: Extended,
    pub first_divergence: Option<Divergence>,
    pub projector_cospectral: bool,
    pub involution: InvolutionSection,
    /// adjacency eigenspaces, ascending
    pub sign_pattern: Vec<GroupSign>,
}

pub fn analyze_report(source: &GraphSource, u: usize, v: usize, sigma: Option<Vec<usize>>) -> Result<AnalyzeReport> {
    let g = &source.graph;
    check_pair(g, u, v)?;
    let co = cospectrality(g, u, v)?;
    let involution = match sigma {
        Some(p) => {
            let verified = verify_involution(g, &p)? && p[u] == v;
            InvolutionSection {
                status: InvolutionStatus::Supplied,
                permutation: Some(p),
                verified,
            }
        }
        None => match find_involution_pairing(g, u, v) {
            Ok(Some(p)) => InvolutionSection {
                verified: verify_involution(g, &p)?,
                status: InvolutionStatus::Found,
                permutation: Some(p),
            },
            Ok(None) => InvolutionSection {
                status: InvolutionStatus::None,
                permutation: None,
                verified: false,
            },
            Err(Error::Capacity { .. }) => InvolutionSection {
                status: InvolutionStatus::Skipped,
                permutation: None,
                verified: false,
            },
            Err(e) => return Err(e),
        },
    };
    let projectors = spectral_projectors(&eigendecompose(&g.adjacency_matrix())?);
    let degrees = g.degree_vector();
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        graph: source.descriptor.clone(),
        u,
        v,
        degree_u: degrees[u],
        degree_v: degrees[v],
        distance: g.distance(u, v)?,
        order: co.order,
        first_divergence: co.first_divergence,
        projector_cospectral: co.projector_cospectral,
        involution,
        sign_pattern: sign_pattern(&projectors, u, v)?.groups,
    })
}

/// Pretty JSON with a trailing newline; key order follows field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Single-line machine-readable error.
pub fn error_line(kind: &str, message: &str, exit_code: i32) -> String {
    serde_json::json!({ "error": { "kind": kind, "message": message, "exit_code": exit_code } }).to_string()
}
