use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {index} out of range for graph with {n} vertices")]
    Bounds { index: usize, n: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("degree structure violated at vertex {vertex}: {message}")]
    Structure { vertex: usize, message: String },

    #[error("degenerate eigenvalue gap {gap:e}; no two-level beat period")]
    DegenerateGap { gap: f64 },

    #[error("closed walk count overflowed 128-bit range at length {k}")]
    Overflow { k: usize },

    #[error("hypothesis c >= d violated (c = {c}, d = {d})")]
    Hypothesis { c: String, d: u64 },

    #[error("graph has {n} vertices; involution search is limited to {limit}")]
    Capacity { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short stable identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Bounds { .. } => "bounds",
            Error::Validation(_) => "validation",
            Error::Domain(_) => "domain",
            Error::Convergence { .. } => "convergence",
            Error::Structure { .. } => "structure",
            Error::DegenerateGap { .. } => "degenerate_gap",
            Error::Overflow { .. } => "overflow",
            Error::Hypothesis { .. } => "hypothesis",
            Error::Capacity { .. } => "capacity",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status: 2 for input problems, 3 for numeric failures, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } | Error::DegenerateGap { .. } | Error::Overflow { .. } => 3,
            Error::Io(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
