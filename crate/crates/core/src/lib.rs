//! Continuous-time quantum walks on graphs under the generalized Laplacian
//! family `H = -(A + kD)`: exact spectral time evolution, peak transfer
//! fidelity, cospectrality diagnostics and explicit parameter thresholds.

pub mod bounds;
pub mod cli;
pub mod cospectral;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod hamiltonian;
pub mod spectral;

pub use bounds::{k_threshold_two_class, q_threshold, readout_time_bound, ThresholdInput, ThresholdResult};
pub use cospectral::{
    closed_walk_counts, cospectrality, find_involution_pairing, localization_mass, sign_pattern,
    verify_involution, CospectralityResult, Divergence, GroupSign, SignPattern,
};
pub use dynamics::{
    evolution_amplitude, fidelity_curve, peak_fidelity, transfer_probability, two_level_candidate_time,
    Amplitude, FidelityCurve, PeakMethod, PeakResult, PeakStrategy,
};
pub use error::{Error, Result};
pub use graph::{Extended, Graph};
pub use hamiltonian::{hamiltonian_matrix, reduced_spec, HamiltonianSpec, Model};
pub use spectral::{eigendecompose, spectral_projectors, EigenDecomposition, SpectralProjector, SymMatrix};
