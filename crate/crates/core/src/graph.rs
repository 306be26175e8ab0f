//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Self-loops are not edges here: they are carried as real weights in a
//! separate map and never contribute to [`Graph::degree_vector`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectral::SymMatrix;

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(u64),
    Infinite,
}

impl Extended {
    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("infinite"),
        }
    }
}

impl FromStr for Extended {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "infinity" => Ok(Extended::Infinite),
            other => other
                .parse()
                .map(Extended::Finite)
                .map_err(|_| Error::Validation(format!("expected integer or 'infinite', got {other:?}"))),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => serializer.serialize_u64(*v),
            Extended::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    loop_weights: BTreeMap<usize, f64>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge iterator, rejecting out-of-range indices,
    /// self-edges and duplicates (in either orientation).
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_loops(n, edges, std::iter::empty())
    }

    pub fn with_loops<I, L>(n: usize, edges: I, loops: L) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
        L: IntoIterator<Item = (usize, f64)>,
    {
        if n == 0 {
            return Err(Error::Domain("graph must have at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            check_vertex(a, n)?;
            check_vertex(b, n)?;
            if a == b {
                return Err(Error::Validation(format!(
                    "self-edge {{{a},{a}}}; use a loop weight instead"
                )));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Validation(format!("duplicate edge {{{a},{b}}}")));
            }
        }
        let mut loop_weights = BTreeMap::new();
        for (v, w) in loops {
            check_vertex(v, n)?;
            if !w.is_finite() {
                return Err(Error::Validation(format!("non-finite loop weight at vertex {v}")));
            }
            if loop_weights.insert(v, w).is_some() {
                return Err(Error::Validation(format!("duplicate loop weight at vertex {v}")));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &set {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        Ok(Graph {
            n,
            edges: set,
            loop_weights,
            neighbors,
        })
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("path needs n >= 1".into()));
        }
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain("cycle needs n >= 3".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Domain("complete bipartite parts must be nonempty".into()));
        }
        Self::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    /// Parses the edge-list text format (see [`Graph::to_edge_list`]).
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        let mut seen_content = false;
        let mut max_index: Option<usize> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if seen_content || declared.is_some() {
                    return Err(parse_err(line_no, "header n=<int> must be the first entry"));
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, "invalid vertex count in header"))?;
                declared = Some(n);
                seen_content = true;
                continue;
            }
            seen_content = true;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["loop", v, w] => {
                    let v = parse_index(v, line_no)?;
                    let w = w
                        .parse::<f64>()
                        .map_err(|_| parse_err(line_no, "invalid loop weight"))?;
                    max_index = max_index.max(Some(v));
                    loops.push((line_no, v, w));
                }
                [a, b] => {
                    let a = parse_index(a, line_no)?;
                    let b = parse_index(b, line_no)?;
                    max_index = max_index.max(Some(a.max(b)));
                    edges.push((line_no, a, b));
                }
                _ => return Err(parse_err(line_no, "expected '<u> <v>' or 'loop <v> <weight>'")),
            }
        }

        let n = match (declared, max_index) {
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => return Err(parse_err(1, "empty edge list without n=<int> header")),
        };
        if n == 0 {
            return Err(Error::Domain("graph must have at least one vertex".into()));
        }
        // Bounds are checked here so the error can name the offending line.
        for &(line_no, a, b) in &edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::Bounds { index: x, n });
                }
            }
            if a == b {
                return Err(Error::Validation(format!(
                    "line {line_no}: self-edge {{{a},{a}}}; use 'loop {a} <weight>'"
                )));
            }
        }
        for &(_, v, _) in &loops {
            if v >= n {
                return Err(Error::Bounds { index: v, n });
            }
        }
        Self::with_loops(
            n,
            edges.into_iter().map(|(_, a, b)| (a, b)),
            loops.into_iter().map(|(_, v, w)| (v, w)),
        )
    }

    /// Serializes to the edge-list format with an explicit `n=` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        for (&v, &w) in &self.loop_weights {
            out.push_str(&format!("loop {v} {w:?}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn loop_weights(&self) -> &BTreeMap<usize, f64> {
        &self.loop_weights
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(v, self.n)
    }

    /// Combinatorial degrees; loop weights are ignored.
    pub fn degree_vector(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Unweighted 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n);
        for &(a, b) in &self.edges {
            m.set(a, b, 1.0);
        }
        m
    }

    /// Breadth-first distance; `Infinite` when `v` is unreachable from `u`.
    pub fn distance(&self, u: usize, v: usize) -> Result<Extended> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Extended::Finite(0));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.neighbors[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Ok(Extended::Finite(dist[y] as u64));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Extended::Infinite)
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::Bounds { index: v, n })
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, &format!("invalid vertex index {tok:?}")))
}
