//! Dense symmetric eigensolver (cyclic Jacobi) and degeneracy-grouped
//! spectral projectors.

use std::ops::Range;

use crate::error::{Error, Result};

/// Relative residual tolerance: `1e-10 * max(1, max|m_ij|)`.
pub const RESIDUAL_REL_TOL: f64 = 1e-10;
/// Tolerance on `|V^T V - I|` entries.
pub const ORTHO_TOL: f64 = 1e-10;
/// Relative gap below which adjacent eigenvalues share a group:
/// `GROUP_REL_TOL * max(1, spectral range)`.
pub const GROUP_REL_TOL: f64 = 1e-12;
/// Full Jacobi sweeps allowed before giving up.
pub const MAX_SWEEPS: usize = 100;
/// Entries below this magnitude are skipped when fixing eigenvector signs.
const SIGN_FIX_THRESHOLD: f64 = 1e-8;

/// Real symmetric matrix, stored dense row-major. Symmetry is exact: every
/// write goes to both `(i, j)` and `(j, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Evaluates `f` on the upper triangle and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts a square row list only if it is exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("matrix is not square".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().skip(i + 1) {
                if x != rows[j][i] {
                    return Err(Error::Validation(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn add_diagonal(&mut self, i: usize, value: f64) {
        self.data[i * self.n + i] += value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `self + c I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.add_diagonal(i, c);
        }
        m
    }

    pub fn scaled(&self, c: f64) -> Self {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Binding residual tolerance for decompositions of this matrix.
    pub fn residual_tolerance(&self) -> f64 {
        RESIDUAL_REL_TOL * self.max_abs().max(1.0)
    }
}

/// Eigenpairs sorted by ascending eigenvalue, with degeneracy groups as
/// contiguous index ranges.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    groups: Vec<Range<usize>>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector `j`, paired with `eigenvalues()[j]`.
    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    /// Mean eigenvalue of group `r`.
    pub fn group_eigenvalue(&self, r: usize) -> f64 {
        let g = &self.groups[r];
        self.eigenvalues[g.clone()].iter().sum::<f64>() / g.len() as f64
    }

    /// `(P_r)_{ij}` without materializing the projector.
    pub fn projector_entry(&self, r: usize, i: usize, j: usize) -> f64 {
        self.groups[r].clone().map(|k| self.vectors[k][i] * self.vectors[k][j]).sum()
    }

    pub fn spectral_range(&self) -> f64 {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// `sum_j lambda_j psi_j psi_j^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.n();
        SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.eigenvalues[k] * self.vectors[k][i] * self.vectors[k][j])
                .sum()
        })
    }
}

#[derive(Clone, Debug)]
pub struct SpectralProjector {
    pub eigenvalue: f64,
    pub rank: usize,
    pub matrix: SymMatrix,
}

/// Cyclic Jacobi eigendecomposition.
///
/// Rotations below the sweep threshold are skipped in the first three
/// sweeps; from the fifth sweep on, off-diagonal entries that no longer
/// perturb the diagonal in floating point are set to zero, so convergence
/// is detected as an exactly zero off-diagonal.
pub fn eigendecompose(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.n();
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let mut sweep = 0;
    loop {
        sweep += 1;
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .sum();
        if off < f64::MIN_POSITIVE {
            break;
        }
        if sweep > MAX_SWEEPS {
            let off_norm = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| 2.0 * a[p * n + q].powi(2))
                .sum::<f64>()
                .sqrt();
            return Err(Error::Convergence {
                sweeps: MAX_SWEEPS,
                off_norm,
            });
        }
        let threshold = if sweep < 4 { 0.2 * off / (n * n) as f64 } else { 0.0 };

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 4 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a[p * n + q] = 0.0;

                let rotate = |a: &mut [f64], i: usize, j: usize| {
                    let g = a[i];
                    let h = a[j];
                    a[i] = g - s * (h + g * tau);
                    a[j] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rotate(&mut a, j * n + p, j * n + q);
                }
                for j in p + 1..q {
                    rotate(&mut a, p * n + j, j * n + q);
                }
                for j in q + 1..n {
                    rotate(&mut a, p * n + j, q * n + j);
                }
                for j in 0..n {
                    rotate(&mut v, j * n + p, j * n + q);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > SIGN_FIX_THRESHOLD) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            col
        })
        .collect();
    let groups = group_eigenvalues(&eigenvalues);
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
        groups,
    })
}

fn group_eigenvalues(sorted: &[f64]) -> Vec<Range<usize>> {
    if sorted.is_empty() {
        return Vec::new();
    }
    let range = sorted[sorted.len() - 1] - sorted[0];
    let tol = GROUP_REL_TOL * range.max(1.0);
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..sorted.len() {
        if sorted[i] - sorted[i - 1] > tol {
            groups.push(start..i);
            start = i;
        }
    }
    groups.push(start..sorted.len());
    groups
}

/// One projector per degeneracy group, ordered by eigenvalue.
pub fn spectral_projectors(d: &EigenDecomposition) -> Vec<SpectralProjector> {
    let n = d.n();
    (0..d.groups().len())
        .map(|r| SpectralProjector {
            eigenvalue: d.group_eigenvalue(r),
            rank: d.groups()[r].len(),
            matrix: SymMatrix::from_fn(n, |i, j| d.projector_entry(r, i, j)),
        })
        .collect()
}
