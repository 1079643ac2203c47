//! Constructors for the model spaces: hyperbolic space, anti-de
//! Sitter–Schwarzschild metrics, deep gravity wells, and mass sweeps.
//!
//! Wells are built directly in Hawking-mass space: any nondecreasing profile
//! strictly under the envelope is automatically a class member, so no
//! constraint back-solving is needed.

use crate::geometry::{
    envelope, envelope_derivative, invert_envelope, Dimension, HawkingLaw, MetricProfile,
    ProfileKind,
};
use crate::{Error, Result};

/// Parameters of a gravity well: the profile follows q_peak·envelope/2 (a
/// region of slope √(q/(1−q)), arbitrarily deep as q → 1) until it caps at
/// the constant `mass`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    pub dim: Dimension,
    pub mass: f64,
    /// Peak fraction of the envelope attained by 2·m_H, in (0, 1).
    pub q_peak: f64,
    /// Half-width in r of the C¹ ramp joining the rising segment to the
    /// plateau.
    pub blend_width: f64,
}

impl WellSpec {
    /// Spec with the default blend width, 0.05 × plateau radius.
    pub fn new(dim: Dimension, mass: f64, q_peak: f64) -> Result<Self> {
        let r_plateau = Self::plateau_radius(dim, mass, q_peak)?;
        Ok(Self {
            dim,
            mass,
            q_peak,
            blend_width: 0.05 * r_plateau,
        })
    }

    /// Radius where q_peak·envelope(r)/2 reaches `mass`.
    pub fn plateau_radius(dim: Dimension, mass: f64, q_peak: f64) -> Result<f64> {
        if !(mass > 0.0) {
            return Err(Error::Construction(format!(
                "well mass {mass} must be positive"
            )));
        }
        if !(q_peak > 0.0 && q_peak < 1.0) {
            return Err(Error::Construction(format!(
                "q_peak {q_peak} must lie in (0, 1)"
            )));
        }
        invert_envelope(2.0 * mass / q_peak, dim)
    }
}

/// Hyperbolic space: m_H ≡ 0 on [0, r_max].
pub fn hyperbolic(dim: Dimension, r_max: f64) -> Result<MetricProfile> {
    if !(r_max > 0.0) {
        return Err(Error::Construction(format!(
            "r_max = {r_max} must be positive"
        )));
    }
    MetricProfile::new(dim, 0.0, r_max, ProfileKind::Hyperbolic)
}

/// Anti-de Sitter–Schwarzschild metric of the given mass: m_H ≡ mass, with
/// the horizon (minimal boundary) at r_min where envelope(r_min) = 2·mass.
pub fn ads_schwarzschild(dim: Dimension, mass: f64, r_max: f64) -> Result<MetricProfile> {
    if !(mass > 0.0) {
        return Err(Error::Construction(format!(
            "mass = {mass} must be positive"
        )));
    }
    let r_min = invert_envelope(2.0 * mass, dim)?;
    if !(r_max > r_min) {
        return Err(Error::Domain(format!(
            "r_max = {r_max} does not exceed the horizon radius {r_min}"
        )));
    }
    MetricProfile::new(dim, r_min, r_max, ProfileKind::AdsSchwarzschild { mass })
}

/// A boundaryless gravity well (r_min = 0): m_H rises along
/// q_peak·envelope/2 and is blended C¹ onto the plateau `mass` over
/// [r_plateau − w, r_plateau + w].
pub fn gravity_well(spec: &WellSpec, r_max: f64) -> Result<MetricProfile> {
    let dim = spec.dim;
    let r_plateau = WellSpec::plateau_radius(dim, spec.mass, spec.q_peak)?;
    let w = spec.blend_width;
    if !(w > 0.0) || w >= r_plateau {
        return Err(Error::Construction(format!(
            "blend width {w} must lie in (0, plateau radius {r_plateau})"
        )));
    }
    let ramp_start = r_plateau - w;
    let ramp_end = r_plateau + w;
    if !(r_max > ramp_end) {
        return Err(Error::Construction(format!(
            "r_max = {r_max} must exceed the plateau radius {r_plateau}"
        )));
    }
    let ramp_value = spec.q_peak * envelope(ramp_start, dim) / 2.0;
    let ramp_slope = spec.q_peak * envelope_derivative(ramp_start, dim) / 2.0;
    // Monotone Hermite ramp requires the entry slope at most 3x the secant.
    let secant = (spec.mass - ramp_value) / (ramp_end - ramp_start);
    if !(secant > 0.0) || ramp_slope > 3.0 * secant {
        return Err(Error::Construction(format!(
            "non-monotone blend: entry slope {ramp_slope} vs secant {secant}"
        )));
    }
    let law = HawkingLaw::EnvelopeWell {
        mass: spec.mass,
        q_peak: spec.q_peak,
        ramp_start,
        ramp_end,
        ramp_value,
        ramp_slope,
    };
    let profile = MetricProfile::new(dim, 0.0, r_max, ProfileKind::HawkingAnalytic(law))?;
    // The ramp construction keeps m_H under the envelope for every q < 1;
    // sample it as a guard against parameter corner cases.
    for i in 0..=64 {
        let r = ramp_start + (ramp_end - ramp_start) * i as f64 / 64.0;
        let mh = profile.hawking_mass(r);
        if 2.0 * mh >= envelope(r, dim) {
            return Err(Error::Construction(format!(
                "blend touches the envelope at r = {r}"
            )));
        }
        if profile.hawking_mass_derivative(r) < -1e-15 {
            return Err(Error::Construction(format!("blend decreasing at r = {r}")));
        }
    }
    Ok(profile)
}

/// Families available to mass sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    AdsSchwarzschild,
    GravityWell { q_peak: f64 },
}

/// One profile per mass, same family parameters otherwise; per-element
/// construction failures are collected, not fatal.
pub fn sweep(
    family: Family,
    dim: Dimension,
    masses: &[f64],
    r_max: f64,
) -> Vec<Result<MetricProfile>> {
    masses
        .iter()
        .map(|&mass| match family {
            Family::AdsSchwarzschild => ads_schwarzschild(dim, mass, r_max),
            Family::GravityWell { q_peak } => {
                gravity_well(&WellSpec::new(dim, mass, q_peak)?, r_max)
            }
        })
        .collect()
}
