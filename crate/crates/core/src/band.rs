//! Model photonic crystal: periodic dielectric slabs in vacuum.
//!
//! The crystal is a stack of slabs of width `2a` and refractive index `n`,
//! separated by vacuum gaps `b`, with period `L = 2a + b`. Only the
//! simplifying geometry `b = 2 n a` is supported, for which the lowest two
//! bands have the closed dispersion
//!
//! ```text
//! omega(k) = c/(4 n a) * arccos(X),   X = [4n cos(kL) + (1-n)^2]/(1+n)^2
//! ```
//!
//! on the reduced zone `0 <= k <= pi/L`. The upper band is the next
//! arccos sheet, `c/(4 n a) * (2 pi - arccos X)`. Gaps open at
//! `k0 = q pi / L`; only the first gap (`q = 1`) is exposed.
//!
//! Near the edges the bands are parabolic (effective-mass form)
//! `omega = omega_v - A (k - k0)^2` below and
//! `omega = omega_c + A (k - k0)^2` above, and the photon density of
//! states behaves as `1/sqrt(|omega - omega_edge|)`: the square-root
//! singularity that drives every enhancement computed downstream.

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;
use std::f64::consts::PI;

/// Geometry and refractive index of the periodic-slab crystal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystalSpec {
    /// Refractive index of the slabs (dimensionless, > 1).
    pub refractive_index: f64,
    /// Slab half width `a` in meters.
    pub slab_half_width: f64,
    /// Vacuum spacing `b = 2 n a` in meters.
    pub spacing: f64,
    /// Period `L = 2a + b` in meters.
    pub period: f64,
}

impl CrystalSpec {
    /// Build a spec from index and slab half width; the spacing is fixed
    /// to the supported geometry `b = 2 n a`.
    pub fn new(refractive_index: f64, slab_half_width: f64) -> Result<Self> {
        if !(refractive_index > 1.0) {
            return Err(Error::InvalidCrystal(format!(
                "refractive index must exceed 1, got {refractive_index}"
            )));
        }
        if !(slab_half_width > 0.0) {
            return Err(Error::InvalidCrystal(format!(
                "slab half width must be positive, got {slab_half_width:e}"
            )));
        }
        let spacing = 2.0 * refractive_index * slab_half_width;
        Ok(CrystalSpec {
            refractive_index,
            slab_half_width,
            spacing,
            period: 2.0 * slab_half_width + spacing,
        })
    }

    /// Build a spec with an explicit spacing, rejecting any `b` other
    /// than `2 n a` (the only geometry with the closed dispersion above).
    pub fn from_parts(refractive_index: f64, slab_half_width: f64, spacing: f64) -> Result<Self> {
        let spec = Self::new(refractive_index, slab_half_width)?;
        if spacing != spec.spacing {
            return Err(Error::InvalidCrystal(format!(
                "spacing must equal 2 n a = {:e}, got {spacing:e}",
                spec.spacing
            )));
        }
        Ok(spec)
    }
}

/// Which of the two lowest bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Band below the first gap.
    Lower,
    /// Band above the first gap.
    Upper,
}

/// Side of the gap for the effective-mass dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

/// Band-edge frequencies of the first gap (no curvature yet).
#[derive(Debug, Clone, Copy)]
pub struct BandEdges {
    pub omega_v: f64,
    pub omega_c: f64,
    pub k0: f64,
    pub gap_index: i64,
}

/// First-gap summary: edges, edge wavenumber and effective-mass curvature.
#[derive(Debug, Clone, Copy)]
pub struct BandStructure {
    /// Lower edge of the gap (rad/s).
    pub omega_v: f64,
    /// Upper edge of the gap (rad/s).
    pub omega_c: f64,
    /// Edge wavenumber `q pi / L` (rad/m).
    pub k0: f64,
    /// Effective-mass curvature `A = |d^2 omega / d k^2| / 2` (m^2/s).
    pub curvature_a: f64,
    pub gap_index: i64,
}

impl BandStructure {
    /// Edges plus the upper-edge curvature for gap `q` (only `q = 1`).
    pub fn compute(spec: &CrystalSpec, q: i64) -> Result<Self> {
        let edges = band_edges(spec, q)?;
        let a = effective_mass(spec, Branch::Upper)?;
        Ok(BandStructure {
            omega_v: edges.omega_v,
            omega_c: edges.omega_c,
            k0: edges.k0,
            curvature_a: a,
            gap_index: edges.gap_index,
        })
    }
}

/// Model dispersion relation on the reduced zone `0 <= k <= pi/L`.
pub fn dispersion(k: f64, spec: &CrystalSpec, branch: Branch) -> Result<f64> {
    let k_edge = PI / spec.period;
    if !(0.0..=k_edge).contains(&k) {
        return Err(Error::Domain(format!(
            "k = {k:e} outside the reduced zone [0, {k_edge:e}]"
        )));
    }
    let n = spec.refractive_index;
    let mut x = (4.0 * n * (k * spec.period).cos() + (1.0 - n) * (1.0 - n))
        / ((1.0 + n) * (1.0 + n));
    if x.abs() > 1.0 {
        if x.abs() - 1.0 < 1e-12 {
            x = x.clamp(-1.0, 1.0);
        } else {
            return Err(Error::Internal(format!(
                "dispersion argument |X| = {} exceeds 1 beyond rounding noise",
                x.abs()
            )));
        }
    }
    let scale = SPEED_OF_LIGHT / (4.0 * n * spec.slab_half_width);
    Ok(match branch {
        Branch::Lower => scale * x.acos(),
        Branch::Upper => scale * (2.0 * PI - x.acos()),
    })
}

/// Band edges of gap `q`. Only the first gap is supported.
pub fn band_edges(spec: &CrystalSpec, q: i64) -> Result<BandEdges> {
    if q != 1 {
        return Err(Error::UnsupportedGap(q));
    }
    let k0 = PI / spec.period;
    let omega_v = dispersion(k0, spec, Branch::Lower)?;
    let omega_c = dispersion(k0, spec, Branch::Upper)?;
    debug_assert!(omega_c > omega_v);
    Ok(BandEdges { omega_v, omega_c, k0, gap_index: q })
}

// One-sided 6-point stencil for f'' at the rightmost point, 4th order.
const D2_STENCIL: [f64; 6] = [
    15.0 / 4.0,
    -77.0 / 6.0,
    107.0 / 6.0,
    -13.0,
    61.0 / 12.0,
    -5.0 / 6.0,
];

/// Effective-mass curvature `A = |omega''(k0)| / 2` of the requested edge,
/// from one-sided finite differences of the exact dispersion.
pub fn effective_mass(spec: &CrystalSpec, edge: Branch) -> Result<f64> {
    let k0 = PI / spec.period;
    let h = 1e-3 * k0;
    let mut d2 = 0.0;
    for (i, c) in D2_STENCIL.iter().enumerate() {
        d2 += c * dispersion(k0 - i as f64 * h, spec, edge)?;
    }
    d2 /= h * h;
    let a = 0.5 * d2.abs();
    debug_assert!(a > 0.0);
    Ok(a)
}

/// Parabolic (effective-mass) dispersion near the gap.
pub fn dispersion_em(k: f64, bands: &BandStructure, side: Side) -> f64 {
    let u = k - bands.k0;
    match side {
        Side::Below => bands.omega_v - bands.curvature_a * u * u,
        Side::Above => bands.omega_c + bands.curvature_a * u * u,
    }
}

/// Photon density of states in the effective-mass approximation.
///
/// Vanishes inside the gap; diverges as `1/sqrt(|omega - omega_edge|)`
/// at the edges (evaluation exactly at an edge is an error — the caller
/// must regularize).
pub fn dos(omega: f64, bands: &BandStructure) -> Result<f64> {
    if omega == bands.omega_c || omega == bands.omega_v {
        return Err(Error::Singular(format!(
            "density of states diverges at the band edge omega = {omega:e}"
        )));
    }
    let pref = bands.k0 * bands.k0 / bands.curvature_a.sqrt();
    if omega > bands.omega_c {
        Ok(pref * 2.0 * PI / (omega - bands.omega_c).sqrt())
    } else if omega > bands.omega_v {
        Ok(0.0)
    } else {
        Ok(pref * 2.0 * PI / (bands.omega_v - omega).sqrt())
    }
}
