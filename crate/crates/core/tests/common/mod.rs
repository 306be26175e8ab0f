//! Independent oracles shared by the integration suites. Nothing here calls
//! into the eigensolver or the spectral evolution code.
#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qst_core::{Graph, SymMatrix};

pub type CMatrix = Vec<Vec<Complex64>>;

fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.len();
    let mut c = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// `exp(-i H t)` by scaling and squaring a truncated Taylor series.
pub fn expm_taylor(h: &SymMatrix, t: f64) -> CMatrix {
    let n = h.n();
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| h.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t.abs();
    let mut s = 0;
    while norm1 / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let scale = t / 2f64.powi(s);
    let m: CMatrix = (0..n)
        .map(|i| (0..n).map(|j| Complex64::new(0.0, -h.get(i, j) * scale)).collect())
        .collect();
    let mut result: CMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut term = result.clone();
    for k in 1..40 {
        term = cmul(&term, &m);
        let inv = 1.0 / k as f64;
        let mut biggest = 0.0f64;
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x *= inv;
                biggest = biggest.max(x.norm());
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
        if biggest < 1e-20 {
            break;
        }
    }
    for _ in 0..s {
        result = cmul(&result, &result);
    }
    result
}

/// All-pairs distances by Floyd-Warshall; `None` = unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
    }
    for (a, b) in g.edges() {
        d[a][b] = Some(1);
        d[b][a] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Diagonal entry `(A^k)_{xx}` by repeated exact integer matrix products.
pub fn matrix_power_diagonal(g: &Graph, x: usize, k: usize) -> i128 {
    let n = g.n();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j) as i128).collect())
        .collect();
    let mut p: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for _ in 0..k {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for l in 0..n {
                if p[i][l] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += p[i][l] * a[l][j];
                }
            }
        }
        p = next;
    }
    p[x][x]
}

/// Every involutive automorphism, by enumerating all permutations (n <= 8).
pub fn brute_force_involutions(g: &Graph) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = g.n();
        if perm.len() == n {
            let inv = (0..n).all(|i| perm[perm[i]] == i);
            let auto = (0..n).all(|i| (0..n).all(|j| g.has_edge(i, j) == g.has_edge(perm[i], perm[j])));
            if inv && auto {
                out.push(perm.clone());
            }
            return;
        }
        for w in 0..n {
            if !used[w] {
                used[w] = true;
                perm.push(w);
                rec(g, perm, used, out);
                perm.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(g, &mut Vec::new(), &mut vec![false; g.n()], &mut out);
    out
}

/// Random simple graph on `n_min..=n_max` vertices.
pub fn arb_graph(n_min: usize, n_max: usize) -> impl Strategy<Value = Graph> {
    (n_min..=n_max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[idx] {
                        edges.push((i, j));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Random symmetric matrix with entries in `[-5, 5]`.
pub fn arb_sym_matrix(n_max: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=n_max).prop_flat_map(|n| {
        proptest::collection::vec(-5.0f64..5.0, n * (n + 1) / 2).prop_map(move |vals| {
            let mut it = vals.into_iter();
            let mut m = SymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, it.next().unwrap());
                }
            }
            m
        })
    })
}
