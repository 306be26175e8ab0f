//! Cospectrality of vertex pairs: exact closed-walk counts, projector
//! diagonals, eigenspace sign patterns, and involutive automorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Extended, Graph};
use crate::spectral::{eigendecompose, spectral_projectors, SpectralProjector};

/// Tolerance for projector comparisons (sign patterns, diagonal equality).
pub const SIGN_TOL: f64 = 1e-7;
/// Largest graph accepted by [`find_involution_pairing`].
pub const INVOLUTION_SEARCH_LIMIT: usize = 16;

/// `counts[k] = (A^k)_{xx}` for `0 <= k <= k_max`, using the unweighted
/// adjacency structure. Arithmetic is checked; overflow is an error.
pub fn closed_walk_counts(g: &Graph, x: usize, k_max: usize) -> Result<Vec<i128>> {
    g.check_vertex(x)?;
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let n = g.n();
    let mut walks = vec![0i128; n];
    walks[x] = 1;
    let mut counts = Vec::with_capacity(k_max + 1);
    counts.push(1);
    for k in 1..=k_max {
        let mut next = vec![0i128; n];
        for (y, slot) in next.iter_mut().enumerate() {
            for &z in g.neighbors(y) {
                *slot = slot.checked_add(walks[z]).ok_or(Error::Overflow { k })?;
            }
        }
        walks = next;
        counts.push(walks[x]);
    }
    Ok(counts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub k: usize,
    pub count_u: i128,
    pub count_v: i128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CospectralityResult {
    pub order: Extended,
    pub first_divergence: Option<Divergence>,
    pub projector_cospectral: bool,
}

impl CospectralityResult {
    /// Whether the walk-count and projector witnesses agree.
    pub fn consistent(&self) -> bool {
        self.projector_cospectral == self.order.is_infinite()
    }
}

/// Compares closed-walk counts up to length `2n`; agreement that far
/// implies agreement at every length, since both spectral measures live on
/// the at most `n` distinct adjacency eigenvalues. The projector diagonals
/// `(P_r)_{uu} = (P_r)_{vv}` are checked independently.
pub fn cospectrality(g: &Graph, u: usize, v: usize) -> Result<CospectralityResult> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Validation("cospectrality needs u != v".into()));
    }
    let k_max = 2 * g.n();
    let cu = closed_walk_counts(g, u, k_max)?;
    let cv = closed_walk_counts(g, v, k_max)?;
    let first_divergence = (1..=k_max).find(|&k| cu[k] != cv[k]).map(|k| Divergence {
        k,
        count_u: cu[k],
        count_v: cv[k],
    });
    let order = match first_divergence {
        Some(div) => Extended::Finite(div.k as u64 - 1),
        None => Extended::Infinite,
    };

    let d = eigendecompose(&g.adjacency_matrix())?;
    let projector_cospectral = (0..d.groups().len())
        .all(|r| (d.projector_entry(r, u, u) - d.projector_entry(r, v, v)).abs() <= SIGN_TOL);

    Ok(CospectralityResult {
        order,
        first_divergence,
        projector_cospectral,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSign {
    /// `P e_u = P e_v`
    Plus,
    /// `P e_u = -P e_v`
    Minus,
    /// both projections vanish
    Null,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignPattern {
    pub groups: Vec<GroupSign>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignSummary {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
    pub mixed: usize,
}

impl SignPattern {
    pub fn has_mixed(&self) -> bool {
        self.groups.contains(&GroupSign::Mixed)
    }

    pub fn summary(&self) -> SignSummary {
        let mut s = SignSummary::default();
        for g in &self.groups {
            match g {
                GroupSign::Plus => s.plus += 1,
                GroupSign::Minus => s.minus += 1,
                GroupSign::Null => s.null += 1,
                GroupSign::Mixed => s.mixed += 1,
            }
        }
        s
    }
}

fn check_pair(projectors: &[SpectralProjector], u: usize, v: usize) -> Result<()> {
    let n = projectors.first().map_or(0, |p| p.matrix.n());
    for x in [u, v] {
        if x >= n {
            return Err(Error::Bounds { index: x, n });
        }
    }
    Ok(())
}

/// Classifies each eigenspace by comparing the columns `P_r e_u` and `P_r e_v`.
pub fn sign_pattern(projectors: &[SpectralProjector], u: usize, v: usize) -> Result<SignPattern> {
    check_pair(projectors, u, v)?;
    let groups = projectors
        .iter()
        .map(|p| {
            let n = p.matrix.n();
            let (mut diff, mut sum, mut mag_u, mut mag_v) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
            for w in 0..n {
                let a = p.matrix.get(w, u);
                let b = p.matrix.get(w, v);
                diff = diff.max((a - b).abs());
                sum = sum.max((a + b).abs());
                mag_u = mag_u.max(a.abs());
                mag_v = mag_v.max(b.abs());
            }
            if mag_u < SIGN_TOL && mag_v < SIGN_TOL {
                GroupSign::Null
            } else if diff <= SIGN_TOL {
                GroupSign::Plus
            } else if sum <= SIGN_TOL {
                GroupSign::Minus
            } else {
                GroupSign::Mixed
            }
        })
        .collect();
    Ok(SignPattern { groups })
}

/// `(P_r)_{uu} + (P_r)_{vv}` for every group.
pub fn localization_mass(projectors: &[SpectralProjector], u: usize, v: usize) -> Result<Vec<f64>> {
    check_pair(projectors, u, v)?;
    Ok(projectors
        .iter()
        .map(|p| p.matrix.get(u, u) + p.matrix.get(v, v))
        .collect())
}

/// Convenience: projectors of the graph's adjacency matrix.
pub fn adjacency_projectors(g: &Graph) -> Result<Vec<SpectralProjector>> {
    Ok(spectral_projectors(&eigendecompose(&g.adjacency_matrix())?))
}

fn validate_permutation(g: &Graph, sigma: &[usize]) -> Result<()> {
    let n = g.n();
    if sigma.len() != n {
        return Err(Error::Validation(format!(
            "permutation has {} entries, graph has {n} vertices",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Validation(format!("not a permutation of 0..{n}: {sigma:?}")));
        }
    }
    Ok(())
}

/// `true` iff `sigma` is an involution that maps edges to edges.
pub fn verify_involution(g: &Graph, sigma: &[usize]) -> Result<bool> {
    validate_permutation(g, sigma)?;
    if (0..g.n()).any(|i| sigma[sigma[i]] != i) {
        return Ok(false);
    }
    // sigma is a bijection on vertex pairs, so edges mapping into edges suffices.
    Ok(g.edges().all(|(a, b)| g.has_edge(sigma[a], sigma[b])))
}

/// Parses comma-separated images, e.g. `"5,4,3,2,1,0"`.
pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Validation(format!("invalid permutation entry {t:?}")))
        })
        .collect()
}

/// Backtracking search for an involutive automorphism with `sigma(u) = v`.
/// Candidates are restricted to vertices of equal degree.
pub fn find_involution_pairing(g: &Graph, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > INVOLUTION_SEARCH_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: INVOLUTION_SEARCH_LIMIT,
        });
    }
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Validation("involution pairing needs u != v".into()));
    }
    let deg = g.degree_vector();
    if deg[u] != deg[v] {
        return Ok(None);
    }
    let mut search = InvolutionSearch {
        g,
        deg,
        sigma: vec![None; n],
    };
    if !search.assign(u, v) {
        return Ok(None);
    }
    Ok(search
        .solve()
        .then(|| search.sigma.iter().map(|s| s.expect("complete assignment")).collect()))
}

struct InvolutionSearch<'a> {
    g: &'a Graph,
    deg: Vec<usize>,
    sigma: Vec<Option<usize>>,
}

impl InvolutionSearch<'_> {
    /// Sets `sigma(x) = y`, `sigma(y) = x`; rolls back and returns false on
    /// an adjacency conflict with the partial map.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        self.sigma[x] = Some(y);
        self.sigma[y] = Some(x);
        let ok = [x, y].iter().all(|&a| {
            (0..self.g.n()).all(|b| match self.sigma[b] {
                Some(sb) => self.g.has_edge(a, b) == self.g.has_edge(y_of(&self.sigma, a), sb),
                None => true,
            })
        });
        if !ok {
            self.sigma[x] = None;
            self.sigma[y] = None;
        }
        ok
    }

    fn solve(&mut self) -> bool {
        let Some(i) = self.sigma.iter().position(Option::is_none) else {
            return true;
        };
        let candidates: Vec<usize> = std::iter::once(i)
            .chain((i + 1..self.g.n()).filter(|&w| self.sigma[w].is_none() && self.deg[w] == self.deg[i]))
            .collect();
        for w in candidates {
            if self.assign(i, w) {
                if self.solve() {
                    return true;
                }
                self.sigma[i] = None;
                self.sigma[w] = None;
            }
        }
        false
    }
}

fn y_of(sigma: &[Option<usize>], a: usize) -> usize {
    sigma[a].expect("assigned vertex")
}
