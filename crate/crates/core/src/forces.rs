//! Energy shifts, quasi-static forces, vacuum baselines and enhancement
//! ratios for the entangled pair.
//!
//! Everything here is far-zone leading order: the force differentiates
//! only the oscillatory factor of the shift, which bounds the neglected
//! envelope-derivative term by `1/(k0 r)`. Signs follow the quasi-static
//! convention `F = -d(shift)/d(separation)` applied to the shifts below;
//! a negative force at a given separation points the atoms toward each
//! other. Only magnitudes and ratios enter the enhancement observables,
//! which is what makes the reduced dipole units safe.
//!
//! The linewidth enters solely through the substitution
//! `detuning -> |detuning| + gamma` in the inverse square root; there is
//! no lineshape convolution.

use crate::band::BandStructure;
use crate::error::{Error, Result};
use crate::resolvent::{far_zone_shift, shift_with_detuning, AtomPairConfig, Dimensionality};
use crate::SPEED_OF_LIGHT;
use std::f64::consts::PI;

/// Tensor contraction route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorMode {
    /// Full derivatives of the scalar field, including the `1/r^2` and
    /// `1/r^3` near-field terms.
    Exact,
    /// Leading oscillatory term only, valid for `k0 r >> 1`.
    FarZone,
}

fn check_unit(name: &str, v: [f64; 3]) -> Result<()> {
    let n: f64 = v.iter().map(|c| c * c).sum();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("{name} must be a unit vector, |v|^2 = {n}")));
    }
    Ok(())
}

/// Contraction of the dipole orientation with the transverse wave
/// operator applied to `cos(k0 r)/r`, per unit squared dipole moment.
pub fn dipole_tensor(
    mu_hat: [f64; 3],
    r_hat: [f64; 3],
    k0: f64,
    r: f64,
    mode: TensorMode,
) -> Result<f64> {
    check_unit("mu_hat", mu_hat)?;
    check_unit("r_hat", r_hat)?;
    if !(r > 0.0) {
        return Err(Error::Singular(format!("separation must be positive, got {r:e}")));
    }
    if !(k0 > 0.0) {
        return Err(Error::Domain(format!("k0 must be positive, got {k0:e}")));
    }
    let c: f64 = mu_hat.iter().zip(r_hat.iter()).map(|(a, b)| a * b).sum();
    let (sin, cos) = (k0 * r).sin_cos();
    let lead = -k0 * k0 * (c * c - 1.0) * cos / r;
    match mode {
        TensorMode::FarZone => Ok(lead),
        TensorMode::Exact => {
            Ok(lead + (3.0 * c * c - 1.0) * (k0 * sin / (r * r) + cos / (r * r * r)))
        }
    }
}

fn detuning_for(cfg: &AtomPairConfig, bands: &BandStructure, regularized: bool) -> Result<f64> {
    let bare = cfg.omega_i - bands.omega_c;
    if regularized {
        let d = bare.abs() + cfg.gamma;
        if d == 0.0 {
            return Err(Error::Singular(
                "regularized detuning vanishes: a positive gamma is required exactly at the edge"
                    .into(),
            ));
        }
        Ok(d)
    } else if bare == 0.0 {
        Err(Error::Singular(
            "force diverges exactly at the band edge; use the regularized mode".into(),
        ))
    } else if bare < 0.0 {
        Err(Error::Detuning(format!(
            "omega_i = {:e} lies below the upper band edge {:e}",
            cfg.omega_i, bands.omega_c
        )))
    } else {
        Ok(bare)
    }
}

/// Far-zone interaction energy shift in the crystal, 3D isotropic model
/// (reduced units: an angular frequency).
pub fn energy_shift_3d(cfg: &AtomPairConfig, bands: &BandStructure) -> Result<f64> {
    let mut c = *cfg;
    c.dimensionality = Dimensionality::ThreeD;
    far_zone_shift(&c, bands, cfg.omega_i)
}

/// 3D shift with the linewidth-regularized detuning.
pub fn energy_shift_3d_regularized(cfg: &AtomPairConfig, bands: &BandStructure) -> Result<f64> {
    let mut c = *cfg;
    c.dimensionality = Dimensionality::ThreeD;
    let d = detuning_for(cfg, bands, true)?;
    Ok(shift_with_detuning(&c, bands, d))
}

/// Quasi-static force in the crystal, 3D isotropic model.
pub fn force_3d(cfg: &AtomPairConfig, bands: &BandStructure, regularized: bool) -> Result<f64> {
    let d = detuning_for(cfg, bands, regularized)?;
    let c = cfg.cos_dipole_axis();
    let r = cfg.separation;
    Ok(-bands.omega_c * bands.k0 * bands.k0
        / (2.0 * (bands.curvature_a * d).sqrt())
        * cfg.dipole_magnitude_sq
        * (c * c - 1.0)
        * (bands.k0 * r).sin()
        / r)
}

/// Far-zone interaction energy shift, 1D crystal model.
pub fn energy_shift_1d(cfg: &AtomPairConfig, bands: &BandStructure) -> Result<f64> {
    let mut c = *cfg;
    c.dimensionality = Dimensionality::OneD;
    far_zone_shift(&c, bands, cfg.omega_i)
}

/// 1D shift with the linewidth-regularized detuning.
pub fn energy_shift_1d_regularized(cfg: &AtomPairConfig, bands: &BandStructure) -> Result<f64> {
    let mut c = *cfg;
    c.dimensionality = Dimensionality::OneD;
    let d = detuning_for(cfg, bands, true)?;
    Ok(shift_with_detuning(&c, bands, d))
}

/// Quasi-static force, 1D crystal model.
pub fn force_1d(cfg: &AtomPairConfig, bands: &BandStructure, regularized: bool) -> Result<f64> {
    let d = detuning_for(cfg, bands, regularized)?;
    Ok(-PI * bands.omega_c * bands.k0 * cfg.transverse_sq()
        / (bands.curvature_a * d).sqrt()
        * (bands.k0 * cfg.separation).cos())
}

/// Resonant force between the same pair in free space (the baseline the
/// crystal enhancement is measured against).
pub fn vacuum_force(cfg: &AtomPairConfig) -> Result<f64> {
    if !(cfg.separation > 0.0) {
        return Err(Error::Domain(format!(
            "separation must be positive, got {:e}",
            cfg.separation
        )));
    }
    let q = cfg.omega_i / SPEED_OF_LIGHT;
    match cfg.dimensionality {
        Dimensionality::ThreeD => {
            let c = cfg.cos_dipole_axis();
            Ok(q * q * q
                * cfg.dipole_magnitude_sq
                * (c * c - 1.0)
                * (q * cfg.separation).sin()
                / cfg.separation)
        }
        Dimensionality::OneD => {
            Ok(-2.0 * PI * cfg.transverse_sq() * q * q * (q * cfg.separation).cos())
        }
    }
}

/// Peak force enhancement over vacuum at the band edge,
/// `omega_i = omega_c`, per unit linewidth broadening.
///
/// 3D: `[omega_c k0^2 / (2 sqrt(A Gamma))] / (omega_i/c)^3`;
/// 1D: `[omega_c k0 / sqrt(A Gamma)] / (omega_i/c)^2`.
/// The squared dipole moment cancels, which is what makes this the
/// unit-safe observable.
pub fn enhancement_ratio(
    cfg: &AtomPairConfig,
    bands: &BandStructure,
    dimensionality: Dimensionality,
) -> Result<f64> {
    if !(cfg.gamma > 0.0) {
        return Err(Error::Singular(
            "the edge enhancement requires a positive linewidth gamma".into(),
        ));
    }
    let q = cfg.omega_i / SPEED_OF_LIGHT;
    let root = (bands.curvature_a * cfg.gamma).sqrt();
    Ok(match dimensionality {
        Dimensionality::ThreeD => bands.omega_c * bands.k0 * bands.k0 / (2.0 * root) / (q * q * q),
        Dimensionality::OneD => bands.omega_c * bands.k0 / root / (q * q),
    })
}

/// Linewidth that would put the 1D enhancement at `target_ratio` for the
/// given transition frequency. This back-solves the 1D ratio formula;
/// it is an inference helper for documentation and comparison runs, not
/// a first-principles linewidth.
pub fn gamma_1d_for_ratio(bands: &BandStructure, omega_i: f64, target_ratio: f64) -> Result<f64> {
    if !(target_ratio > 0.0 && omega_i > 0.0) {
        return Err(Error::Domain("target ratio and omega_i must be positive".into()));
    }
    let q = omega_i / SPEED_OF_LIGHT;
    let root = bands.omega_c * bands.k0 / (target_ratio * q * q);
    Ok(root * root / bands.curvature_a)
}

/// Regime indicators attached to a force evaluation.
#[derive(Debug, Clone, Copy)]
pub struct RegimeFlags {
    /// Far-zone validity marker, `k0 * separation >= 10`.
    pub far_zone_ok: bool,
    /// Detuning measured in linewidths, `(omega_i - omega_c)/gamma`.
    pub edge_proximity: f64,
}

/// Assembled shift/force/baseline record for one configuration.
#[derive(Debug, Clone, Copy)]
pub struct ForceResult {
    pub energy_shift: f64,
    pub force: f64,
    pub vacuum_force: f64,
    /// Pointwise `|force / vacuum_force|`; absent where the baseline
    /// passes through zero.
    pub enhancement_ratio: Option<f64>,
    pub regime_flags: RegimeFlags,
}

/// Evaluate shift, force and vacuum baseline together.
pub fn force_result(
    cfg: &AtomPairConfig,
    bands: &BandStructure,
    dimensionality: Dimensionality,
    regularized: bool,
) -> Result<ForceResult> {
    let mut c = *cfg;
    c.dimensionality = dimensionality;
    let (energy_shift, force) = match dimensionality {
        Dimensionality::ThreeD => {
            let e = if regularized {
                energy_shift_3d_regularized(&c, bands)?
            } else {
                energy_shift_3d(&c, bands)?
            };
            (e, force_3d(&c, bands, regularized)?)
        }
        Dimensionality::OneD => {
            let e = if regularized {
                energy_shift_1d_regularized(&c, bands)?
            } else {
                energy_shift_1d(&c, bands)?
            };
            (e, force_1d(&c, bands, regularized)?)
        }
    };
    let vacuum = vacuum_force(&c)?;
    Ok(ForceResult {
        energy_shift,
        force,
        vacuum_force: vacuum,
        enhancement_ratio: if vacuum != 0.0 { Some((force / vacuum).abs()) } else { None },
        regime_flags: RegimeFlags {
            far_zone_ok: bands.k0 * cfg.separation >= 10.0,
            edge_proximity: (cfg.omega_i - bands.omega_c) / cfg.gamma,
        },
    })
}
