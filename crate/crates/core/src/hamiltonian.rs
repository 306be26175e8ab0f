//! Hamiltonian matrices for the walk models `H = -(A + kD)` and relatives.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::SymMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `H = -A`
    Adjacency,
    /// `H = -A + D`
    Laplacian,
    /// `H = -(A + D)`
    SignlessLaplacian,
    /// `H = -(A + kD)`
    Generalized(f64),
    /// `H = -(A + Q (E_u + E_v))`
    LoopPerturbed { u: usize, v: usize, q: f64 },
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Adjacency => f.write_str("adjacency"),
            Model::Laplacian => f.write_str("laplacian"),
            Model::SignlessLaplacian => f.write_str("signless"),
            Model::Generalized(k) => write!(f, "generalized:{k}"),
            Model::LoopPerturbed { u, v, q } => write!(f, "loops:{u},{v},{q}"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("unrecognized model {s:?}"));
        let s = s.trim();
        match s {
            "adjacency" => return Ok(Model::Adjacency),
            "laplacian" => return Ok(Model::Laplacian),
            "signless" => return Ok(Model::SignlessLaplacian),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("generalized:") {
            let k: f64 = k.trim().parse().map_err(|_| bad())?;
            if !k.is_finite() {
                return Err(bad());
            }
            return Ok(Model::Generalized(k));
        }
        if let Some(rest) = s.strip_prefix("loops:") {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if let [u, v, q] = parts.as_slice() {
                let u = u.parse().map_err(|_| bad())?;
                let v = v.parse().map_err(|_| bad())?;
                let q: f64 = q.parse().map_err(|_| bad())?;
                if q.is_finite() {
                    return Ok(Model::LoopPerturbed { u, v, q });
                }
            }
        }
        Err(bad())
    }
}

/// A model bound to the graph it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    model: Model,
    graph: Graph,
}

impl HamiltonianSpec {
    pub fn new(graph: Graph, model: Model) -> Result<Self> {
        if let Model::LoopPerturbed { u, v, .. } = model {
            graph.check_vertex(u)?;
            graph.check_vertex(v)?;
            if u == v {
                return Err(Error::Validation("loop-perturbed model needs u != v".into()));
            }
        }
        Ok(HamiltonianSpec { model, graph })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Builds `H`. The graph's own loop weights are added to the diagonal of
    /// `A` before the model is applied.
    pub fn matrix(&self) -> SymMatrix {
        let g = &self.graph;
        let deg = g.degree_vector();
        let mut diag: Vec<f64> = match self.model {
            Model::Adjacency => vec![0.0; g.n()],
            Model::Laplacian => deg.iter().map(|&d| -(d as f64)).collect(),
            Model::SignlessLaplacian => deg.iter().map(|&d| d as f64).collect(),
            Model::Generalized(k) => deg.iter().map(|&d| k * d as f64).collect(),
            Model::LoopPerturbed { u, v, q } => {
                let mut extra = vec![0.0; g.n()];
                extra[u] += q;
                extra[v] += q;
                extra
            }
        };
        for (&x, &w) in g.loop_weights() {
            diag[x] += w;
        }
        let mut h = g.adjacency_matrix().scaled(-1.0);
        for (i, d) in diag.into_iter().enumerate() {
            h.set(i, i, -d);
        }
        h
    }
}

pub fn hamiltonian_matrix(spec: &HamiltonianSpec) -> SymMatrix {
    spec.matrix()
}

/// Degree classes `(d1, d2)` where `deg(u) = deg(v) = d1` and every other
/// vertex has degree `d2 != d1`.
pub fn degree_classes(g: &Graph, u: usize, v: usize) -> Result<(usize, usize)> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Validation("u and v must differ".into()));
    }
    let deg = g.degree_vector();
    let d1 = deg[u];
    if deg[v] != d1 {
        return Err(Error::Structure {
            vertex: v,
            message: format!("deg({v}) = {} differs from deg({u}) = {d1}", deg[v]),
        });
    }
    let mut d2 = None;
    for (x, &dx) in deg.iter().enumerate() {
        if x == u || x == v {
            continue;
        }
        if dx == d1 {
            return Err(Error::Structure {
                vertex: x,
                message: format!("deg({x}) = {dx} equals the endpoint degree {d1}"),
            });
        }
        match d2 {
            None => d2 = Some(dx),
            Some(c) if c != dx => {
                return Err(Error::Structure {
                    vertex: x,
                    message: format!("deg({x}) = {dx}, expected {c}"),
                })
            }
            _ => {}
        }
    }
    d2.map(|d2| (d1, d2)).ok_or_else(|| Error::Structure {
        vertex: u,
        message: "no vertices outside {u, v} to form a second degree class".into(),
    })
}

/// Rewrites `Generalized(k)` on a two-degree-class graph as the
/// loop-perturbed adjacency model with `Q = k (d1 - d2)`; the two differ by
/// the shift `k d2 I`, which only changes the global phase.
pub fn reduced_spec(g: &Graph, u: usize, v: usize, k: f64) -> Result<(HamiltonianSpec, f64)> {
    let (d1, d2) = degree_classes(g, u, v)?;
    let q = k * (d1 as f64 - d2 as f64);
    let spec = HamiltonianSpec::new(g.clone(), Model::LoopPerturbed { u, v, q })?;
    Ok((spec, q))
}
