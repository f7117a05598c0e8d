//! Numerics for a fully quantized three-level Λ-system EIT model.
//!
//! Both the probe and the coupling field are quantized. On a fixed Fock
//! sector every field operator becomes a scalar, so the susceptibility and
//! group velocity are functions of the photon numbers; coherent-state
//! expectations and fluctuations are Poisson-weighted sums over sectors.
//!
//! Units: every rate, detuning and Rabi frequency is in units of
//! `gamma1`; susceptibilities carry the scale `kappa`; group velocities are
//! reported as `V_g / c`.

pub mod dark_state;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod group_velocity;
pub mod linalg;
pub mod params;
pub mod susceptibility;

pub use dark_state::{
    apply_h1, dark_state, dispersion_turning_point, rabi, semiclassical_chi, DarkState, Order,
    RabiTriple, SemiclassicalChi,
};
pub use dynamics::{
    build_sector, build_sector_default, default_populations, evolve, steady_state, CoherenceVector,
    DriftMatrix, DriveVector, Sector,
};
pub use error::{EitError, Result};
pub use fock::{
    expect_diag, phase_expectations, poisson_weights, CoherentPair, DiagMoments, FockWeights,
    PhaseExpectations, DEFAULT_TAIL_EPS,
};
pub use group_velocity::{
    uncertainty_bound, vg_mean_field, vg_sector, vg_stats, GroupRegime, GroupVelocityStats,
    UncertaintyReport, VgSector,
};
pub use num_complex::Complex64;
pub use params::{Case, SystemParams};
pub use susceptibility::{
    chi_mean_case_a, chi_sector, chi_stats, fluctuation_sweep, Susceptibility, SusceptibilityStats,
};
