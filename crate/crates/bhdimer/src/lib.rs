//! Dynamics of the two-site Bose-Hubbard model.
//!
//! N bosons hop between two sites with amplitude `J` and repel pairwise with
//! on-site energy `U`. Starting from all particles on one site, the
//! normalized population difference `Delta(t)` between the sites undergoes
//! Rabi oscillations whose amplitude collapses and later revives. This crate
//! computes those dynamics three ways on a shared time grid:
//!
//! * **exact** — diagonalize the (N+1)-dimensional tridiagonal Hamiltonian
//!   with a from-scratch implicit-shift QL solver and evolve by spectral
//!   decomposition ([`exact`]);
//! * **semi-analytic** — the direct sum over hopping eigenstates with
//!   second-order perturbative energies ([`analytic::delta_semianalytic`]);
//! * **closed form** — a sequence of Gaussian revival peaks with derived
//!   collapse/revival/blurring timescales ([`analytic::delta_closed_form`]).
//!
//! The [`compare`] module runs scenarios, fits collapse times, locates
//! revival peaks, detects peak mixing and scores the predicted phase of the
//! fast oscillation against the exact signal. The `bhdimer` binary exposes
//! all of it as CLI subcommands emitting CSV/JSON.

pub mod analytic;
pub mod compare;
pub mod error;
pub mod exact;
pub mod hamiltonian;
pub mod output;
pub mod params;
pub mod scenario;
pub mod series;
pub mod state;
pub mod tridiag;

pub use analytic::{
    c_coefficient, delta_closed_form, delta_semianalytic, delta_short_time, energy_perturbative,
    perturbative_spectrum, phase_frequency, phase_offset, revival_structure, revival_time_tilted,
    PerturbativeOrder, PerturbativeSpectrum, RevivalPeak, RevivalStructure,
};
pub use compare::{
    fit_collapse_time, locate_revival_peaks, phase_window_stats, run_scenario, ComparisonReport,
    PeakRecord, PhaseWindowStats, ScenarioSeries,
};
pub use error::{Error, Result};
pub use exact::{eigendecompose, energy_expectation, evolve_expectations, evolve_state, Spectrum};
pub use hamiltonian::{build_hamiltonian, TridiagonalHamiltonian};
pub use params::ModelParams;
pub use scenario::{OutputKind, OutputSet, Scenario, ScenarioOverrides};
pub use series::TimeSeries;
pub use state::{
    initial_state_all_left, initial_state_all_right, initial_state_tilted, s_plus_expectation,
    s_z_expectation, StateVector,
};
