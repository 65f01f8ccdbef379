//! Resonant dipole-dipole interaction of two entangled identical atoms
//! near a photonic band edge.
//!
//! One atom excited, one in the ground state, sharing the excitation in
//! the symmetric combination: the pair exchanges a real photon and feels
//! a long-range oscillatory force. Inside a photonic crystal the photon
//! density of states carries a `1/sqrt(|omega - omega_edge|)` van Hove
//! singularity at a band-gap edge, and an atomic transition tuned close
//! to the edge picks up a strongly enhanced force relative to vacuum.
//!
//! The crate computes, for a periodic-slab crystal in both a 1D and an
//! isotropic 3D model:
//!
//! - the model dispersion relation, band edges, effective-mass curvature
//!   and density of states ([`band`]);
//! - the principal-value resolvent integrals above the gap, in certified
//!   closed form and by quadrature, and the implicit pole equation
//!   ([`resolvent`], [`quad`], [`special`]);
//! - far-zone energy shifts, quasi-static forces, vacuum baselines and
//!   band-edge enhancement ratios ([`forces`]);
//! - the analogous electronic Casimir-Polder force between two
//!   impurities in a tight-binding quantum wire ([`electronic`]).
//!
//! Frequencies are angular (rad/s) and energies are carried as
//! `E / hbar` throughout; Planck's constant never enters the kernels.
//! Dipole couplings are reduced (dimensionless) and cancel out of the
//! enhancement ratios, which are the unit-safe observables.

pub mod band;
pub mod electronic;
pub mod error;
pub mod forces;
pub mod quad;
pub mod resolvent;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
