//! Single-photon transport in a coupled-cavity array side-coupled to a
//! cascade three-level emitter whose upper transition is driven by an
//! auxiliary cavity mode.
//!
//! The photon hops along a tight-binding chain of cavities; the central
//! cavity exchanges the excitation with an emitter, and a control mode
//! holding `n` photons dresses the emitter's upper transition. Tuning the
//! control strength `g_b^2 n` and the two detunings swings the chain
//! between a perfect mirror and a transparent window, which is the whole
//! point: a single-photon switch operated by a classical knob.
//!
//! # Modules
//!
//! - [`model`] — validated parameter set, band dispersion, and the derived
//!   per-momentum quantities (detunings, group velocity).
//! - [`scattering`] — closed-form reflection/transmission amplitudes, the
//!   effective scattering potential, and the exact mirror/transparency
//!   conditions with their control-strength solutions.
//! - [`dressed`] — the driven upper doublet: level shifts, weights, and the
//!   equivalent two-path scattering route used for cross-checks.
//! - [`sweep`] — axis sweeps (momentum, detuning, drive strength) with CSV
//!   rendering, figure presets, and summary statistics.
//! - [`oracle`] — independent numerics: a stationary finite-lattice solve
//!   and a time-domain Gaussian wavepacket run, both measured against the
//!   closed forms.
//! - [`verify`] — seeded randomized suites bundling the invariants into a
//!   pass/fail report.
//! - [`cli`] — the `wqed` binary: `point`, `sweep`, `oracle-stationary`,
//!   `oracle-wavepacket`, and `verify` subcommands.
//!
//! # Examples
//!
//! Each major capability has a runnable walkthrough under `examples/`:
//!
//! ```text
//! cargo run -p wqed --example dispersion_band        # band structure and momentum folding
//! cargo run -p wqed --example photon_switch          # mirror <-> transparent switching
//! cargo run -p wqed --example momentum_sweeps        # transmission spectra vs momentum
//! cargo run -p wqed --example detuning_sweeps        # detuning loci and the decoupling tail
//! cargo run -p wqed --example dressed_picture        # doublet anatomy and route agreement
//! cargo run -p wqed --example lattice_oracle         # closed form vs finite-lattice solve
//! cargo run -p wqed --example wavepacket_scattering  # time-domain packet splitting
//! cargo run -p wqed --example verification_suite     # randomized invariant suites
//! ```

pub mod cli;
pub mod dressed;
pub mod model;
pub mod oracle;
pub mod scattering;
pub mod sweep;
pub mod verify;
