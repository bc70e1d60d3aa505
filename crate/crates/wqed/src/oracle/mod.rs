//! Independent checks of the closed-form amplitudes.
//!
//! Two routes that share no algebra with the analytic expressions:
//! a finite-lattice stationary solve ([`stationary`]) and a time-domain
//! wavepacket run ([`wavepacket`]). Both operate on the single-excitation
//! basis built in [`lattice`].

pub mod lattice;
pub mod stationary;
pub mod wavepacket;

pub use lattice::{BasisState, LatticeProblem, SparseHamiltonian};
pub use stationary::{solve_stationary, StationarySolution};
pub use wavepacket::{run_wavepacket, WavepacketRun, WavepacketSample, WavepacketSpec};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("momentum k = {k} sits at a band edge; no traveling wave to scatter")]
    BandEdge { k: f64 },
    #[error("lattice system is singular at this energy")]
    SingularSystem,
    #[error("wavepacket reached the chain ends (edge probability {edge_probability:.3e} at t = {time:.3})")]
    BoundaryContamination { edge_probability: f64, time: f64 },
    #[error("invalid lattice problem: {0}")]
    InvalidProblem(String),
    #[error("invalid wavepacket run: {0}")]
    InvalidRunSpec(String),
}
