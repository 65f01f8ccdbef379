//! Tight-binding quantum wire with two identical impurities: the
//! electronic counterpart of the photonic pair.
//!
//! The electron band is `-B cos k` on the lattice Brillouin zone. Two
//! impurities a distance `x` apart (lattice units, treated as a
//! continuous parameter for differentiation) hybridize through the band;
//! the symmetric/antisymmetric impurity combination has its pole at
//!
//! ```text
//! z = E0 + (g^2 B^2 / 2 pi) PV int_{-pi}^{pi} [1 +- cos(k x)]/(z + B cos k) dk
//! ```
//!
//! For an in-band impurity level, `E0 = -B cos kappa0`, the pole integral
//! is a principal value with poles at `k = +-arccos(-z/B)`, and the
//! resulting force oscillates as `cos(kappa0 x)` without decay, mirroring
//! the band-edge photonic force.

use crate::error::{Error, Result};
use crate::quad::{adaptive, pv_quadrature, PvProblem, QuadResult, UpperLimit};
use crate::resolvent::{damped_fixed_point, PoleSolution, SolveMode};
use std::f64::consts::PI;

/// Symmetric or antisymmetric combination of the impurity orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }
}

/// Two identical impurities coupled to a 1D tight-binding band.
#[derive(Debug, Clone, Copy)]
pub struct WireModel {
    /// Bare impurity level (reduced energy).
    pub impurity_energy: f64,
    /// Half bandwidth `B > 0` of the electronic band.
    pub half_bandwidth: f64,
    /// Dimensionless impurity-band coupling.
    pub coupling: f64,
    pub parity: Parity,
    /// Impurity separation in lattice units, `x > 0`.
    pub separation: f64,
}

impl WireModel {
    pub fn new(
        impurity_energy: f64,
        half_bandwidth: f64,
        coupling: f64,
        parity: Parity,
        separation: f64,
    ) -> Result<Self> {
        if !(half_bandwidth > 0.0) {
            return Err(Error::Domain(format!(
                "half bandwidth must be positive, got {half_bandwidth:e}"
            )));
        }
        if !(separation > 0.0) {
            return Err(Error::Domain(format!(
                "separation must be positive, got {separation:e}"
            )));
        }
        Ok(WireModel { impurity_energy, half_bandwidth, coupling, parity, separation })
    }
}

/// Band dispersion `-B cos k`; even in `k`, range `[-B, B]`.
pub fn electron_dispersion(k: f64, half_bandwidth: f64) -> f64 {
    -half_bandwidth * k.cos()
}

/// In-band wavenumber `kappa0` with `E0 = -B cos kappa0`, in `[0, pi]`.
pub fn kappa0(impurity_energy: f64, half_bandwidth: f64) -> Result<f64> {
    if impurity_energy.abs() > half_bandwidth {
        return Err(Error::Domain(format!(
            "impurity level {impurity_energy:e} lies outside the band of half width {half_bandwidth:e}"
        )));
    }
    Ok((-impurity_energy / half_bandwidth).acos())
}

const REL_TOL: f64 = 1e-10;
const ABS_TOL: f64 = 1e-13;

/// The pole-equation integral
/// `(g^2 B^2 / 2 pi) PV int_{-pi}^{pi} [1 +- cos(k x)] / (z + B cos k) dk`.
///
/// In-band `z` is a principal value; `|z| > B` is a proper integral.
pub fn electronic_pole_integral(z: f64, model: &WireModel) -> Result<QuadResult> {
    let b = model.half_bandwidth;
    let x = model.separation;
    let pm = model.parity.sign();
    let g2b2 = model.coupling * model.coupling * b * b;
    let h = move |k: f64| (1.0 + pm * (k * x).cos()) / (z + b * k.cos());

    // the integrand is even in k: integrate [0, pi] and double
    let raw = if z.abs() < b {
        let pole = (-z / b).acos();
        let p = PvProblem {
            integrand: h,
            pole: Some(pole),
            lower: 0.0,
            upper: UpperLimit::Finite(PI),
            rel_tol: REL_TOL,
            abs_tol: ABS_TOL,
            oscillation_half_period: None,
            tail_start_hint: None,
        };
        pv_quadrature(&p)?
    } else if z.abs() == b {
        return Err(Error::Singular(
            "impurity trial energy exactly at a band edge puts the pole on the zone boundary"
                .into(),
        ));
    } else {
        adaptive(&h, 0.0, PI, REL_TOL, ABS_TOL)?
    };

    let scale = g2b2 / PI; // 2 * (g^2 B^2 / 2 pi)
    Ok(QuadResult {
        value: scale * raw.value,
        abs_error: scale.abs() * raw.abs_error,
        evaluations: raw.evaluations,
    })
}

/// Solve the impurity pole equation by the same first-iteration /
/// damped-fixed-point scheme as the photonic pair.
pub fn solve_electronic_pole(model: &WireModel, mode: SolveMode, tol: f64) -> Result<PoleSolution> {
    match mode {
        SolveMode::FirstIteration => {
            let z = model.impurity_energy
                + electronic_pole_integral(model.impurity_energy, model)?.value;
            Ok(PoleSolution { z_over_hbar: z, mode, iterations: 1, converged: true, residual: 0.0 })
        }
        SolveMode::FixedPoint => damped_fixed_point(
            model.impurity_energy,
            |zeta| Ok(model.impurity_energy + electronic_pole_integral(zeta, model)?.value),
            tol,
        ),
    }
}

const FORCE_STEP: f64 = 0.02;

/// Electronic Casimir-Polder force `-dz/dx` per lattice unit, by central
/// differences in the (continuous) separation.
///
/// Meaningful in the oscillatory regime `x >= 2`; the curve tracks
/// `cos(kappa0 x)` for an in-band impurity level.
pub fn electronic_force(model: &WireModel, mode: SolveMode) -> Result<f64> {
    if model.separation < 2.0 {
        return Err(Error::Domain(format!(
            "force is defined for separations x >= 2, got {:e}",
            model.separation
        )));
    }
    let tol = 1e-12 * model.half_bandwidth;
    let z_at = |x: f64| -> Result<f64> {
        let m = WireModel { separation: x, ..*model };
        Ok(solve_electronic_pole(&m, mode, tol)?.z_over_hbar)
    };
    let zp = z_at(model.separation + FORCE_STEP)?;
    let zm = z_at(model.separation - FORCE_STEP)?;
    Ok(-(zp - zm) / (2.0 * FORCE_STEP))
}
